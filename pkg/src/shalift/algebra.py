"""Finite-dimensional algebras by structure constants and their representations."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .field import Field
from .linalg import Matrix, MatrixBuilder, block_diag


@dataclass
class Report:
    """Outcome of a validation or verification check."""

    name: str
    passed: bool
    message: str = ""
    location: tuple | None = None
    residual: Matrix | None = None
    details: tuple = ()

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "pass": self.passed,
            "residual_zero": self.residual is None or self.residual.is_zero(),
            "detail": self.message,
        }


class Algebra:
    """Unital associative algebra given by structure constants.

    ``mul[i][j]`` is the sparse coefficient vector (dict) of ``e_i * e_j``
    and ``unit`` the coefficient vector of 1.  Basis indices are 0-based in
    code; reports name them 1-based.
    """

    def __init__(self, field: Field, dim: int, mul, unit, name: str = ""):
        self.field = field
        self.dim = dim
        self.name = name
        red = field.reduce
        self.mul: list[list[dict]] = []
        for i in range(dim):
            row = []
            for j in range(dim):
                v = mul[i][j]
                if not isinstance(v, dict):
                    v = dict(enumerate(v))
                row.append({k: w for k, c in v.items() if (w := red(c))})
            self.mul.append(row)
        if not isinstance(unit, dict):
            unit = dict(enumerate(unit))
        self.unit: dict = {k: w for k, c in unit.items() if (w := red(c))}
        self._lmul = None
        self._mu = None

    def __repr__(self) -> str:
        return f"Algebra({self.name or 'dim'} {self.dim} over {self.field.name})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Algebra) and self.field == other.field and self.dim == other.dim
                and self.mul == other.mul and self.unit == other.unit)

    def unit_vector(self) -> list:
        return [self.unit.get(k, 0) for k in range(self.dim)]

    def multiply(self, x: dict, y: dict) -> dict:
        red = self.field.reduce
        out: dict = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, c in self.mul[i][j].items():
                    out[k] = out.get(k, 0) + a * b * c
        return {k: w for k, v in out.items() if (w := red(v))}

    def left_mult(self, i: int) -> Matrix:
        """Matrix of x -> e_i x."""
        if self._lmul is None:
            mats = []
            for a in range(self.dim):
                mats.append(Matrix.from_entries(
                    self.field, self.dim, self.dim,
                    [((k, j), c) for j in range(self.dim) for k, c in self.mul[a][j].items()]))
            self._lmul = mats
        return self._lmul[i]

    def left_mult_by(self, x: dict) -> Matrix:
        M = Matrix.zeros(self.field, self.dim, self.dim)
        for i, c in x.items():
            M = M + self.left_mult(i).scale(c)
        return M

    def right_mult_by(self, x: dict) -> Matrix:
        """Matrix of y -> y x."""
        cols = [self.multiply({j: 1}, x) for j in range(self.dim)]
        return Matrix.from_columns(self.field, self.dim, cols)

    def mult_matrix(self) -> Matrix:
        """The multiplication A (x) A -> A; column index a*dim + b."""
        if self._mu is None:
            n = self.dim
            self._mu = Matrix.from_entries(
                self.field, n, n * n,
                [((k, a * n + b), c) for a in range(n) for b in range(n)
                 for k, c in self.mul[a][b].items()])
        return self._mu

    def to_json(self) -> dict:
        f = self.field.format
        return {
            "dim": self.dim,
            "mul": [[[f(self.mul[i][j].get(k, 0)) for k in range(self.dim)]
                     for j in range(self.dim)] for i in range(self.dim)],
            "unit": [f(self.unit.get(k, 0)) for k in range(self.dim)],
        }

    @classmethod
    def from_json(cls, field: Field, data: dict) -> Algebra:
        dim = data["dim"]
        if not isinstance(dim, int) or dim < 1:
            raise ValueError("algebra dim must be a positive integer")
        mul = data["mul"]
        if len(mul) != dim or any(len(r) != dim for r in mul):
            raise ValueError("structure constants must be dim x dim")
        parsed = []
        for row in mul:
            prow = []
            for vec in row:
                if len(vec) != dim:
                    raise ValueError("structure-constant vector has wrong length")
                prow.append([field.parse(s) for s in vec])
            parsed.append(prow)
        unit = data["unit"]
        if len(unit) != dim:
            raise ValueError("unit vector has wrong length")
        return cls(field, dim, parsed, [field.parse(s) for s in unit], name=data.get("name", ""))


def algebra_validate(alg: Algebra) -> Report:
    """Associativity on all basis triples, then two-sided unit on all basis elements."""
    n = alg.dim
    for i, j, k in itertools.product(range(n), repeat=3):
        left = alg.multiply(alg.mul[i][j], {k: 1})
        right = alg.multiply({i: 1}, alg.mul[j][k])
        if left != right:
            return Report("algebra", False,
                          f"associativity fails on basis triple ({i + 1},{j + 1},{k + 1})",
                          location=(i + 1, j + 1, k + 1))
    for i in range(n):
        if alg.multiply(alg.unit, {i: 1}) != {i: 1} or alg.multiply({i: 1}, alg.unit) != {i: 1}:
            return Report("algebra", False, f"unit is not an identity on e_{i + 1}",
                          location=(i + 1,))
    return Report("algebra", True, "associative and unital")


@dataclass(frozen=True)
class ModuleRep:
    """Right module over an algebra: one dim x dim matrix per basis element."""

    dim: int
    action: tuple[Matrix, ...]

    def act(self, x: dict) -> Matrix:
        """Matrix of the action of the algebra element with coefficients x."""
        field = self.action[0].field if self.action else None
        M = Matrix.zeros(field, self.dim, self.dim)
        for i, c in x.items():
            M = M + self.action[i].scale(c)
        return M


def module_validate(mod: ModuleRep, alg: Algebra) -> Report:
    """Right-module law act(e_i) act(e_j) = act(e_j e_i) and unitality."""
    if len(mod.action) != alg.dim:
        return Report("module", False, f"expected {alg.dim} action matrices, got {len(mod.action)}")
    for i, M in enumerate(mod.action):
        if M.shape != (mod.dim, mod.dim):
            return Report("module", False, f"action of e_{i + 1} has shape {M.shape}",
                          location=(i + 1,))
    for i, j in itertools.product(range(alg.dim), repeat=2):
        lhs = mod.action[i] @ mod.action[j]
        rhs = mod.act(alg.mul[j][i])
        if lhs != rhs:
            return Report("module", False, f"right-module law fails on pair ({i + 1},{j + 1})",
                          location=(i + 1, j + 1), residual=lhs - rhs)
    ident = Matrix.identity(alg.field, mod.dim)
    u = mod.act(alg.unit)
    if u != ident:
        return Report("module", False, "unit does not act as the identity", location=("unit",),
                      residual=u - ident)
    return Report("module", True, "right module")


def regular_right_module(alg: Algebra) -> ModuleRep:
    return ModuleRep(alg.dim, tuple(alg.right_mult_by({i: 1}) for i in range(alg.dim)))


def trivial_module(alg: Algebra, dim: int) -> ModuleRep:
    """The action of the unit as identity, valid when alg is the ground field."""
    return ModuleRep(dim, tuple(Matrix.identity(alg.field, dim, alg.unit.get(i, 0))
                                for i in range(alg.dim)))


# tensor bases -----------------------------------------------------------


@dataclass(frozen=True)
class TensorBasis:
    """Lexicographic basis of a tensor product of finite-dimensional factors.

    The first factor is the most significant position, so the index of
    ``(i_1, ..., i_r)`` is the mixed-radix number with digits ``i_k``.
    """

    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        d = 1
        for x in self.dims:
            d *= x
        return d

    def index(self, multi: Sequence[int]) -> int:
        if len(multi) != len(self.dims):
            raise ValueError("multi-index length mismatch")
        idx = 0
        for i, n in zip(multi, self.dims):
            if not 0 <= i < n:
                raise IndexError(f"multi-index component {i} out of range {n}")
            idx = idx * n + i
        return idx

    def multi(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.dim:
            raise IndexError(idx)
        out = []
        for n in reversed(self.dims):
            idx, r = divmod(idx, n)
            out.append(r)
        return tuple(reversed(out))

    def __iter__(self):
        return itertools.product(*(range(n) for n in self.dims))


def tensor_module(factors: Sequence) -> TensorBasis:
    """Basis indexing for a tensor product of algebras/modules/dimensions."""
    dims = []
    for f in factors:
        if isinstance(f, int):
            dims.append(f)
        else:
            dims.append(f.dim)
    return TensorBasis(tuple(dims))


def tuples(dim: int, length: int):
    """All basis multi-indices of A^{(x) length}, lexicographically."""
    return itertools.product(range(dim), repeat=length)


# catalogue --------------------------------------------------------------


def _from_table(field: Field, dim: int, table: dict, unit: dict, name: str) -> Algebra:
    mul = [[table.get((i, j), {}) for j in range(dim)] for i in range(dim)]
    return Algebra(field, dim, mul, unit, name=name)


def ground_field(field: Field) -> Algebra:
    return _from_table(field, 1, {(0, 0): {0: 1}}, {0: 1}, "k")


def dual_numbers(field: Field) -> Algebra:
    """k[e]/(e^2) with basis (1, e)."""
    t = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
    return _from_table(field, 2, t, {0: 1}, "dual")


def product_algebra(field: Field) -> Algebra:
    """k x k with basis of idempotents; the unit is e_1 + e_2."""
    t = {(0, 0): {0: 1}, (1, 1): {1: 1}}
    return _from_table(field, 2, t, {0: 1, 1: 1}, "kxk")


def truncated_poly(field: Field, n: int = 3) -> Algebra:
    """k[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    t = {(i, j): {i + j: 1} for i in range(n) for j in range(n) if i + j < n}
    return _from_table(field, n, t, {0: 1}, f"k[x]/x^{n}")


def upper_triangular(field: Field) -> Algebra:
    """Upper triangular 2x2 matrices, basis (e11, e12, e22)."""
    t = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}}
    return _from_table(field, 3, t, {0: 1, 2: 1}, "upper2")


def square_zero(field: Field) -> Algebra:
    """k[x,y]/(x,y)^2 with basis (1, x, y)."""
    t = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}}
    return _from_table(field, 3, t, {0: 1}, "k[x,y]/(x,y)^2")


def matrix_algebra(field: Field) -> Algebra:
    """M_2(k) with basis (e11, e12, e21, e22)."""
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    t = {}
    for (a, b), i in idx.items():
        for (c, d), j in idx.items():
            if b == c:
                t[(i, j)] = {idx[(a, d)]: 1}
    return _from_table(field, 4, t, {0: 1, 3: 1}, "M2")


def exterior_like(field: Field) -> Algebra:
    """k[x,y]/(x^2, y^2) with basis (1, x, y, xy)."""
    mono = [(0, 0), (1, 0), (0, 1), (1, 1)]
    t = {}
    for i, (a, b) in enumerate(mono):
        for j, (c, d) in enumerate(mono):
            if a + c <= 1 and b + d <= 1:
                t[(i, j)] = {mono.index((a + c, b + d)): 1}
    return _from_table(field, 4, t, {0: 1}, "k[x,y]/(x^2,y^2)")


CATALOGUE = {
    1: [ground_field],
    2: [dual_numbers, product_algebra],
    3: [truncated_poly, upper_triangular, square_zero],
    4: [matrix_algebra, exterior_like],
}


def change_basis(alg: Algebra, P: Matrix, Pinv: Matrix) -> Algebra:
    """Same algebra in the basis f_j = sum_i P[i, j] e_i (P invertible)."""
    n = alg.dim
    cols = P.columns()
    mul = []
    for i in range(n):
        row = []
        for j in range(n):
            prod = alg.multiply(cols[i], cols[j])
            row.append(Pinv.apply(prod))
        mul.append(row)
    return Algebra(alg.field, n, mul, Pinv.apply(alg.unit), name=alg.name)


def left_modules(alg: Algebra) -> list[tuple[str, list[Matrix]]]:
    """A few left modules of a catalogue algebra, as lists of action matrices."""
    F = alg.field
    mods = [("regular", [alg.left_mult(i) for i in range(alg.dim)])]
    name = alg.name
    if name in ("dual", "k[x]/x^3", "k[x,y]/(x,y)^2", "k[x,y]/(x^2,y^2)"):
        mods.append(("trivial", [Matrix.identity(F, 1, 1 if i == 0 else 0) for i in range(alg.dim)]))
    elif name == "kxk":
        mods.append(("S1", [Matrix.identity(F, 1, 1 if i == 0 else 0) for i in range(2)]))
        mods.append(("S2", [Matrix.identity(F, 1, 1 if i == 1 else 0) for i in range(2)]))
    elif name == "upper2":
        mods.append(("S1", [Matrix.identity(F, 1, 1 if i == 0 else 0) for i in range(3)]))
        mods.append(("S2", [Matrix.identity(F, 1, 1 if i == 2 else 0) for i in range(3)]))
    elif name == "M2":
        simple = []
        for i, (a, b) in enumerate([(0, 0), (0, 1), (1, 0), (1, 1)]):
            simple.append(Matrix.from_entries(F, 2, 2, [((a, b), 1)]))
        mods.append(("simple", simple))
    elif name == "k":
        pass
    return mods


def left_module_validate(action: Sequence[Matrix], alg: Algebra, dim: int) -> Report:
    """Left-module law act(e_i) act(e_j) = act(e_i e_j) and unitality."""
    F = alg.field

    def act(x):
        M = Matrix.zeros(F, dim, dim)
        for i, c in x.items():
            M = M + action[i].scale(c)
        return M

    if len(action) != alg.dim:
        return Report("left-module", False, "wrong number of action matrices")
    for i, j in itertools.product(range(alg.dim), repeat=2):
        lhs = action[i] @ action[j]
        rhs = act(alg.mul[i][j])
        if lhs != rhs:
            return Report("left-module", False, f"left-module law fails on ({i + 1},{j + 1})",
                          location=(i + 1, j + 1), residual=lhs - rhs)
    if act(alg.unit) != Matrix.identity(F, dim):
        return Report("left-module", False, "unit does not act as the identity")
    return Report("left-module", True, "left module")


def free_module_map(B: Algebra, entries: Sequence[Sequence[dict]]) -> Matrix:
    """k-matrix of the right-B-linear map B^r -> B^s given by an s x r matrix over B.

    Basis of B^r is (generator i, B-basis k) ordered generator-major; the map
    sends e_i b to sum_j e_j (entries[j][i] b).
    """
    s = len(entries)
    r = len(entries[0]) if s else 0
    n = B.dim
    mb = MatrixBuilder(B.field, s * n, r * n)
    for j in range(s):
        for i in range(r):
            x = entries[j][i]
            if not x:
                continue
            L = B.left_mult_by(x)
            mb.add_block(j * n, i * n, L)
    return mb.build()


def free_module(B: Algebra, rank: int) -> ModuleRep:
    reg = regular_right_module(B)
    return ModuleRep(rank * B.dim, tuple(block_diag(B.field, [reg.action[b]] * rank)
                                          for b in range(B.dim)))
