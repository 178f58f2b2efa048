"""Bounded complexes of right B-modules and the maps between them.

Grading is by subscripts: ``d_n : C_n -> C_{n-1}``.  A graded map of degree
``e`` sends ``C_n`` to ``C'_{n+e}``; homotopies have degree +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, ModuleRep, Report, module_validate
from .field import Field
from .linalg import (Matrix, MatrixBuilder, column_space_rref, kernel_basis, rref,
                     solve, solve_system)


@dataclass(frozen=True)
class Complex:
    """Complex of right B-modules in degrees ``lo..hi`` (components may be zero)."""

    ring: Algebra
    lo: int
    hi: int
    modules: dict  # degree -> ModuleRep
    diffs: dict  # degree n -> Matrix d_n : C_n -> C_{n-1}

    @property
    def field(self) -> Field:
        return self.ring.field

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def dim(self, n: int) -> int:
        m = self.modules.get(n)
        return m.dim if m is not None else 0

    def dims(self) -> list[int]:
        return [self.dim(n) for n in self.degrees()]

    def module(self, n: int) -> ModuleRep:
        m = self.modules.get(n)
        if m is None:
            return ModuleRep(0, tuple(Matrix.zeros(self.field, 0, 0) for _ in range(self.ring.dim)))
        return m

    def d(self, n: int) -> Matrix:
        D = self.diffs.get(n)
        if D is None:
            return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))
        return D

    def action(self, n: int, b: int) -> Matrix:
        return self.module(n).action[b]

    def identity(self) -> GradedMap:
        return GradedMap(self, self, 0, {n: Matrix.identity(self.field, self.dim(n))
                                         for n in self.degrees()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Complex):
            return NotImplemented
        degs = set(self.degrees()) | set(other.degrees())
        if any(self.dim(n) != other.dim(n) for n in degs):
            return False
        for n in degs:
            if self.dim(n) and self.module(n).action != other.module(n).action:
                return False
            if self.d(n) != other.d(n):
                return False
        return self.ring == other.ring


def make_complex(ring: Algebra, modules: dict, diffs: dict) -> Complex:
    degs = sorted(modules)
    lo, hi = (degs[0], degs[-1]) if degs else (0, 0)
    return Complex(ring, lo, hi, dict(modules), dict(diffs))


def vector_space_complex(field: Field, dims: dict, diffs: dict, ring: Algebra | None = None) -> Complex:
    """Complex over B = k from dimensions and differential matrices."""
    from .algebra import ground_field, trivial_module
    ring = ring or ground_field(field)
    mods = {n: trivial_module(ring, d) for n, d in dims.items()}
    return make_complex(ring, mods, diffs)


def complex_validate(C: Complex) -> Report:
    """Shapes, module laws, d^2 = 0 and B-linearity of every d_n."""
    for n in C.degrees():
        rep = module_validate(C.module(n), C.ring)
        if not rep:
            return Report("complex", False, f"component {n}: {rep.message}", location=(n,))
        D = C.d(n)
        if D.shape != (C.dim(n - 1), C.dim(n)):
            return Report("complex", False, f"d_{n} has shape {D.shape}", location=(n,))
    for n in list(C.degrees()) + [C.hi + 1]:
        sq = C.d(n - 1) @ C.d(n)
        if not sq.is_zero():
            return Report("complex", False, f"d^2 != 0 at degree {n}", location=(n,), residual=sq)
    for n in C.degrees():
        for b in range(C.ring.dim):
            lhs = C.d(n) @ C.action(n, b)
            rhs = C.action(n - 1, b) @ C.d(n)
            if lhs != rhs:
                return Report("complex", False, f"d_{n} is not B-linear (basis element {b + 1})",
                              location=(n, b + 1), residual=lhs - rhs)
    return Report("complex", True, "valid complex")


@dataclass
class GradedMap:
    """B-linear graded map of degree e: blocks[n] : source_n -> target_{n+e}."""

    source: Complex
    target: Complex
    degree: int
    blocks: dict = dc_field(default_factory=dict)

    def block(self, n: int) -> Matrix:
        M = self.blocks.get(n)
        if M is None:
            return Matrix.zeros(self.source.field, self.target.dim(n + self.degree), self.source.dim(n))
        return M

    def source_degrees(self) -> range:
        return self.source.degrees()

    def __add__(self, other: GradedMap) -> GradedMap:
        assert self.degree == other.degree
        return GradedMap(self.source, self.target, self.degree,
                         {n: self.block(n) + other.block(n) for n in self.source_degrees()})

    def __sub__(self, other: GradedMap) -> GradedMap:
        return self + other.scale(-1)

    def scale(self, c) -> GradedMap:
        return GradedMap(self.source, self.target, self.degree,
                         {n: self.block(n).scale(c) for n in self.source_degrees()})

    def compose(self, other: GradedMap) -> GradedMap:
        """self after other."""
        e = self.degree + other.degree
        return GradedMap(other.source, self.target, e,
                         {n: self.block(n + other.degree) @ other.block(n)
                          for n in other.source_degrees()})

    def is_zero(self) -> bool:
        return all(self.block(n).is_zero() for n in self.source_degrees())

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return self.degree == other.degree and all(
            self.block(n) == other.block(n) for n in set(self.source_degrees()) | set(other.source_degrees()))


ChainMap = GradedMap


def graded_map_validate(f: GradedMap) -> Report:
    """Block shapes and B-linearity."""
    S, T = f.source, f.target
    for n in S.degrees():
        M = f.block(n)
        if M.shape != (T.dim(n + f.degree), S.dim(n)):
            return Report("graded-map", False, f"block {n} has shape {M.shape}", location=(n,))
        for b in range(S.ring.dim):
            lhs = M @ S.action(n, b)
            rhs = T.action(n + f.degree, b) @ M
            if lhs != rhs:
                return Report("graded-map", False, f"block {n} is not B-linear", location=(n, b + 1),
                              residual=lhs - rhs)
    return Report("graded-map", True, "B-linear")


def commutator_with_d(f: GradedMap, sign: int = 1) -> GradedMap:
    """d o f - sign * f o d, a graded map of degree deg(f) - 1."""
    S, T, e = f.source, f.target, f.degree
    blocks = {}
    for n in S.degrees():
        blocks[n] = T.d(n + e) @ f.block(n) - (f.block(n - 1) @ S.d(n)).scale(sign)
    return GradedMap(S, T, e - 1, blocks)


def chain_map_validate(f: GradedMap) -> Report:
    rep = graded_map_validate(f)
    if not rep:
        return rep
    sign = -1 if f.degree % 2 else 1
    c = commutator_with_d(f, sign)
    for n in f.source.degrees():
        if not c.block(n).is_zero():
            return Report("chain-map", False, f"does not commute with d at degree {n}",
                          location=(n,), residual=c.block(n))
    return Report("chain-map", True, "chain map")


# homology ---------------------------------------------------------------


@dataclass(frozen=True)
class Homology:
    degree: int
    dim: int
    basis: tuple  # cycles as sparse vectors
    boundaries: tuple  # echelon basis of im d_{n+1}

    def coordinates(self, z: dict, field: Field) -> list:
        """Coordinates of the class of the cycle z in the chosen basis."""
        nb = len(self.boundaries)
        cols = [dict(v) for _, v in self.boundaries] + [dict(v) for v in self.basis]
        n = max([max(v) for v in cols if v] + [max(z) if z else -1, -1]) + 1
        M = Matrix.from_columns(field, n, cols)
        x = solve(M, z)
        if x is None:
            raise ValueError("vector is not a cycle of this homology")
        return [x.get(nb + k, 0) for k in range(self.dim)]


def homology(C: Complex, n: int) -> Homology:
    """H_n = ker d_n / im d_{n+1}, with a deterministic basis of cycles."""
    if C.dim(n) == 0:
        return Homology(n, 0, (), ())
    ker = kernel_basis(C.d(n))
    bnd = column_space_rref(C.d(n + 1))
    red = rref([v for _, v in bnd], C.field)
    rank = len(red)
    chosen = []
    rows = [v for _, v in red]
    for z in ker:
        trial = rref(rows + [z], C.field)
        if len(trial) > rank:
            rows.append(z)
            rank = len(trial)
            chosen.append(z)
    return Homology(n, len(chosen), tuple(chosen), tuple(bnd))


def homology_dims(C: Complex) -> dict:
    return {n: homology(C, n).dim for n in C.degrees()}


def induced_map(f: GradedMap, n: int) -> Matrix:
    """Matrix of H_n(f) : H_n(source) -> H_n(target) in the chosen bases."""
    Hs = homology(f.source, n)
    Ht = homology(f.target, n)
    M = f.block(n)
    cols = []
    for z in Hs.basis:
        img = M.apply(z)
        cols.append(dict(enumerate(_coords(Ht, img, f.target.dim(n), f.source.field))))
    return Matrix.from_columns(f.source.field, Ht.dim,
                               [{i: v for i, v in c.items() if v} for c in cols])


def _coords(H: Homology, z: dict, ambient: int, field: Field) -> list:
    nb = len(H.boundaries)
    cols = [dict(v) for _, v in H.boundaries] + [dict(v) for v in H.basis]
    M = Matrix.from_columns(field, ambient, cols)
    x = solve(M, z)
    if x is None:
        raise ValueError("image is not a cycle")
    return [x.get(nb + k, 0) for k in range(H.dim)]


@dataclass
class QuasiIsoReport:
    quasi_iso: bool
    source_dims: dict
    target_dims: dict
    ranks: dict

    def __bool__(self) -> bool:
        return self.quasi_iso


def is_quasi_iso(f: GradedMap) -> QuasiIsoReport:
    degs = sorted(set(f.source.degrees()) | set(f.target.degrees()))
    sd, td, ranks = {}, {}, {}
    ok = True
    for n in degs:
        hs = homology(f.source, n).dim
        ht = homology(f.target, n).dim
        sd[n], td[n] = hs, ht
        if hs == 0 and ht == 0:
            ranks[n] = 0
            continue
        r = induced_map(f, n).rank()
        ranks[n] = r
        if not (hs == ht == r):
            ok = False
    return QuasiIsoReport(ok, sd, td, ranks)


# nullhomotopies ---------------------------------------------------------

SIGN_PROFILES = {
    # f = a * d H + b * H d
    "homotopy": (1, 1),
    "associator": (-1, -1),  # f = -(dH + Hd): the m3 equation
    "m4": (-1, 1),  # f = H d - d H
}


def _variable_layout(S: Complex, T: Complex, e: int) -> tuple[dict, int]:
    """Unknown entries of a degree-e graded map, blocks by source degree, row-major."""
    layout = {}
    off = 0
    for n in S.degrees():
        r, c = T.dim(n + e), S.dim(n)
        if r and c:
            layout[n] = (off, r, c)
            off += r * c
    return layout, off


def solve_graded_map(S: Complex, T: Complex, e: int, equations_fn) -> GradedMap | None:
    """Solve a linear system whose unknown is a B-linear graded map S -> T of degree e.

    ``equations_fn(var)`` yields ``(coeffs, rhs)`` pairs, where ``var(n, i, j)``
    is the variable index of entry (i, j) of block n (or None if absent).
    B-linearity equations are added automatically.
    """
    F = S.field
    layout, nvars = _variable_layout(S, T, e)

    def var(n, i, j):
        blk = layout.get(n)
        if blk is None:
            return None
        off, r, c = blk
        return off + i * c + j

    eqs = list(equations_fn(var))
    # B-linearity: H rho_S(b) - rho_T(b) H = 0
    for n, (off, r, c) in layout.items():
        for b in range(S.ring.dim):
            rs = S.action(n, b)
            rt = T.action(n + e, b)
            if rs == Matrix.identity(F, c) and rt == Matrix.identity(F, r):
                continue
            rs_cols = rs.columns()
            for i in range(r):
                rt_row = rt.row(i)
                for j in range(c):
                    coeffs: dict = {}
                    for k, v in rs_cols[j].items():  # (H rs)[i,j] = sum_k H[i,k] rs[k,j]
                        idx = off + i * c + k
                        coeffs[idx] = coeffs.get(idx, 0) + v
                    for k, v in rt_row.items():  # (rt H)[i,j] = sum_k rt[i,k] H[k,j]
                        idx = off + k * c + j
                        coeffs[idx] = coeffs.get(idx, 0) - v
                    coeffs = {a: w for a, x in coeffs.items() if (w := F.reduce(x))}
                    if coeffs:
                        eqs.append((coeffs, 0))
    x = solve_system(F, nvars, eqs)
    if x is None:
        return None
    blocks = {}
    for n in S.degrees():
        blk = layout.get(n)
        if blk is None:
            blocks[n] = Matrix.zeros(F, T.dim(n + e), S.dim(n))
            continue
        off, r, c = blk
        ent = [((i, j), x[off + i * c + j]) for i in range(r) for j in range(c)
               if (off + i * c + j) in x]
        blocks[n] = Matrix.from_entries(F, r, c, ent)
    return GradedMap(S, T, e, blocks)


def nullhomotopy_solve(f: GradedMap, sign_profile="homotopy") -> GradedMap | None:
    """Canonical B-linear H of degree deg(f)+1 with f = a dH + b Hd, or None.

    ``sign_profile`` is a name in SIGN_PROFILES or an explicit pair (a, b).
    """
    a, b = SIGN_PROFILES[sign_profile] if isinstance(sign_profile, str) else sign_profile
    S, T, e = f.source, f.target, f.degree
    h = e + 1
    F = S.field

    def equations(var):
        for n in S.degrees():
            rows, cols = T.dim(n + e), S.dim(n)
            if not rows or not cols:
                continue
            dT = T.d(n + h)  # T_{n+h} -> T_{n+e}
            dS = S.d(n)  # S_n -> S_{n-1}
            dS_cols = dS.columns()
            fn = f.block(n)
            for i in range(rows):
                dT_row = dT.row(i)
                for j in range(cols):
                    coeffs: dict = {}
                    # a * (dT H_n)[i,j] = a * sum_k dT[i,k] H_n[k,j]
                    for k, v in dT_row.items():
                        idx = var(n, k, j)
                        if idx is not None:
                            coeffs[idx] = coeffs.get(idx, 0) + a * v
                    # b * (H_{n-1} dS)[i,j] = b * sum_k H_{n-1}[i,k] dS[k,j]
                    for k, v in dS_cols[j].items():
                        idx = var(n - 1, i, k)
                        if idx is not None:
                            coeffs[idx] = coeffs.get(idx, 0) + b * v
                    coeffs = {c: w for c, x in coeffs.items() if (w := F.reduce(x))}
                    yield coeffs, fn[i, j]

    return solve_graded_map(S, T, h, equations)


def homotopy_residual(f: GradedMap, H: GradedMap, sign_profile="homotopy") -> GradedMap:
    """f - (a dH + b Hd); zero iff H solves the requested equation."""
    a, b = SIGN_PROFILES[sign_profile] if isinstance(sign_profile, str) else sign_profile
    S, T = f.source, f.target
    blocks = {}
    for n in S.degrees():
        dh = T.d(n + H.degree) @ H.block(n)
        hd = H.block(n - 1) @ S.d(n)
        blocks[n] = f.block(n) - dh.scale(a) - hd.scale(b)
    return GradedMap(S, T, f.degree, blocks)


# quotients, truncation, shift ---------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """V / W with the complement spanned by the non-pivot standard vectors.

    ``proj`` : V -> V/W and ``section`` : V/W -> V satisfy proj @ section = 1.
    """

    proj: Matrix
    section: Matrix
    pivots: tuple

    @property
    def dim(self) -> int:
        return self.proj.nrows


def quotient_by_image(field: Field, dim: int, image: Matrix) -> Quotient:
    red = column_space_rref(image)
    pivots = [p for p, _ in red]
    pset = set(pivots)
    keep = [k for k in range(dim) if k not in pset]
    pos = {k: i for i, k in enumerate(keep)}
    entries = []
    for k in keep:
        entries.append(((pos[k], k), 1))
    for p, w in red:
        # e_p = w - (w - e_p); the class of e_p is -(w restricted to the complement)
        for k, v in w.items():
            if k in pos:
                entries.append(((pos[k], p), -v))
    proj = Matrix.from_entries(field, len(keep), dim, entries)
    section = Matrix.from_entries(field, dim, len(keep), [((k, pos[k]), 1) for k in keep])
    return Quotient(proj, section, tuple(pivots))


def induced_endomorphism(q: Quotient, M: Matrix) -> Matrix:
    return q.proj @ M @ q.section


@dataclass(frozen=True)
class Subspace:
    """W inside V with basis matrix ``incl`` (full column rank) and a retraction."""

    incl: Matrix
    retract: Matrix  # retract @ incl = 1


def kernel_subspace(field: Field, M: Matrix) -> Subspace:
    ker, free = kernel_basis(M, with_free=True)
    incl = Matrix.from_columns(field, M.ncols, ker)
    retract = Matrix.from_entries(field, len(ker), M.ncols, [((i, f), 1) for i, f in enumerate(free)])
    return Subspace(incl, retract)


def truncate_smart(C: Complex, n: int, direction: str = "le") -> tuple[Complex, GradedMap]:
    """Smart truncation.

    ``le``: tau_{<=n}, degree n becomes C_n / im d_{n+1}, higher degrees vanish;
    returns the projection C -> tau C.  ``ge``: tau_{>=n}, degree n becomes
    ker d_n, lower degrees vanish; returns the inclusion tau C -> C.
    """
    F = C.field
    if direction == "le":
        if n >= C.hi:
            return C, C.identity()
        if n < C.lo:
            T = make_complex(C.ring, {}, {})
            return T, GradedMap(C, T, 0, {})
        q = quotient_by_image(F, C.dim(n), C.d(n + 1))
        mods = {k: C.module(k) for k in range(C.lo, n)}
        mods[n] = ModuleRep(q.dim, tuple(induced_endomorphism(q, a) for a in C.module(n).action))
        diffs = {k: C.d(k) for k in range(C.lo + 1, n)}
        if n > C.lo:
            diffs[n] = C.d(n) @ q.section
        T = Complex(C.ring, C.lo, n, mods, diffs)
        blocks = {k: Matrix.identity(F, C.dim(k)) for k in range(C.lo, n)}
        blocks[n] = q.proj
        for k in range(n + 1, C.hi + 1):
            blocks[k] = Matrix.zeros(F, 0, C.dim(k))
        return T, GradedMap(C, T, 0, blocks)
    if direction == "ge":
        if n <= C.lo:
            return C, C.identity()
        if n > C.hi:
            T = make_complex(C.ring, {}, {})
            return T, GradedMap(T, C, 0, {})
        sub = kernel_subspace(F, C.d(n))
        mods = {k: C.module(k) for k in range(n + 1, C.hi + 1)}
        mods[n] = ModuleRep(sub.incl.ncols, tuple(sub.retract @ a @ sub.incl for a in C.module(n).action))
        diffs = {k: C.d(k) for k in range(n + 2, C.hi + 1)}
        if n < C.hi:
            diffs[n + 1] = sub.retract @ C.d(n + 1)
        T = Complex(C.ring, n, C.hi, mods, diffs)
        blocks = {k: Matrix.identity(F, C.dim(k)) for k in range(n + 1, C.hi + 1)}
        blocks[n] = sub.incl
        return T, GradedMap(T, C, 0, blocks)
    raise ValueError(f"direction must be 'le' or 'ge', not {direction!r}")


def shift(C: Complex, s: int) -> Complex:
    """(C[s])_n = C_{n-s}; the differential is reindexed without a sign."""
    mods = {n + s: m for n, m in C.modules.items()}
    diffs = {n + s: D for n, D in C.diffs.items()}
    return Complex(C.ring, C.lo + s, C.hi + s, mods, diffs)


def direct_sum(C: Complex, D: Complex) -> Complex:
    from .linalg import block_diag
    F = C.field
    lo, hi = min(C.lo, D.lo), max(C.hi, D.hi)
    mods, diffs = {}, {}
    for n in range(lo, hi + 1):
        mods[n] = ModuleRep(C.dim(n) + D.dim(n),
                            tuple(block_diag(F, [C.action(n, b), D.action(n, b)])
                                  for b in range(C.ring.dim)))
        diffs[n] = block_diag(F, [C.d(n), D.d(n)])
    return Complex(C.ring, lo, hi, mods, {n: v for n, v in diffs.items() if n > lo})


# graded tensor products ---------------------------------------------------


@dataclass(frozen=True)
class GradedSpace:
    """Graded vector space: dims by degree."""

    dims: dict

    def dim(self, n):
        return self.dims.get(n, 0)

    def tensor(self, other: GradedSpace) -> tuple[GradedSpace, dict]:
        """V (x) W with its summand offsets {(p, q): offset in degree p+q}."""
        out: dict = {}
        offsets = {}
        for p in sorted(self.dims):
            for q in sorted(other.dims):
                n = p + q
                offsets[(p, q)] = out.get(n, 0)
                out[n] = out.get(n, 0) + self.dim(p) * other.dim(q)
        return GradedSpace(out), offsets


def graded_tensor_map(field: Field, V: GradedSpace, W: GradedSpace, f: dict, fdeg: int,
                      V2: GradedSpace, g: dict, gdeg: int, W2: GradedSpace) -> dict:
    """Blocks of f (x) g : V (x) W -> V2 (x) W2 with the Koszul sign.

    (f (x) g)(x (x) y) = (-1)^{|g||x|} f(x) (x) g(y).
    ``f[p]`` : V_p -> V2_{p+fdeg}; ``g[q]`` : W_q -> W2_{q+gdeg}.
    """
    VW, off_s = V.tensor(W)
    VW2, off_t = V2.tensor(W2)
    blocks: dict = {}
    for (p, q), so in off_s.items():
        n = p + q
        tgt = (p + fdeg, q + gdeg)
        if tgt not in off_t:
            continue
        fp, gq = f.get(p), g.get(q)
        if fp is None or gq is None:
            continue
        mb = blocks.setdefault(n, MatrixBuilder(field, VW2.dim(n + fdeg + gdeg), VW.dim(n)))
        sign = -1 if (gdeg * p) % 2 else 1
        mb.add_block(off_t[tgt], so, fp.kron(gq), sign)
    return {n: mb.build() for n, mb in blocks.items()}


# joint systems ------------------------------------------------------------


class GradedSystem:
    """Linear system whose unknowns are several B-linear graded maps.

    Unknowns are laid out in the order they are added, each one by source
    degree and row-major inside a block, so a single unknown gives the same
    canonical solution as ``solve_graded_map``.
    """

    def __init__(self, field: Field):
        self.field = field
        self.unknowns: list[tuple[Complex, Complex, int, dict, int]] = []
        self.nvars = 0
        self.equations: list[tuple[dict, object]] = []

    def add_unknown(self, S: Complex, T: Complex, e: int) -> int:
        layout, n = _variable_layout(S, T, e)
        layout = {d: (off + self.nvars, r, c) for d, (off, r, c) in layout.items()}
        self.unknowns.append((S, T, e, layout, self.nvars))
        self.nvars += n
        return len(self.unknowns) - 1

    def var(self, u: int, n: int, i: int, j: int):
        blk = self.unknowns[u][3].get(n)
        if blk is None:
            return None
        off, r, c = blk
        return off + i * c + j

    def add_block_equation(self, terms, rhs: Matrix) -> None:
        """sum over terms (u, n, L, R, scale) of scale * L @ U_n @ R = rhs.

        ``L`` or ``R`` may be None for an identity factor.
        """
        F = self.field
        red = F.reduce
        rows, cols = rhs.shape
        prepared = []
        for u, n, L, R, s in terms:
            blk = self.unknowns[u][3].get(n)
            if blk is None:
                continue
            prepared.append((blk, L, None if R is None else R.columns(), s))
        for i in range(rows):
            for j in range(cols):
                coeffs: dict = {}
                for (off, r, c), L, Rcols, s in prepared:
                    lrow = {i: 1} if L is None else L.row(i)
                    rcol = {j: 1} if Rcols is None else Rcols[j]
                    for p, lv in lrow.items():
                        for q, rv in rcol.items():
                            idx = off + p * c + q
                            coeffs[idx] = coeffs.get(idx, 0) + s * lv * rv
                coeffs = {k: w for k, v in coeffs.items() if (w := red(v))}
                v = rhs[i, j]
                if coeffs or v:
                    self.equations.append((coeffs, v))

    def _linearity(self):
        F = self.field
        for S, T, e, layout, _ in self.unknowns:
            for n, (off, r, c) in layout.items():
                for b in range(S.ring.dim):
                    rs, rt = S.action(n, b), T.action(n + e, b)
                    if rs == Matrix.identity(F, c) and rt == Matrix.identity(F, r):
                        continue
                    rs_cols = rs.columns()
                    for i in range(r):
                        rt_row = rt.row(i)
                        for j in range(c):
                            coeffs: dict = {}
                            for k, v in rs_cols[j].items():
                                coeffs[off + i * c + k] = coeffs.get(off + i * c + k, 0) + v
                            for k, v in rt_row.items():
                                coeffs[off + k * c + j] = coeffs.get(off + k * c + j, 0) - v
                            coeffs = {a: w for a, x in coeffs.items() if (w := F.reduce(x))}
                            if coeffs:
                                yield coeffs, 0

    def solve(self) -> list[GradedMap] | None:
        F = self.field
        x = solve_system(F, self.nvars, list(self.equations) + list(self._linearity()))
        if x is None:
            return None
        out = []
        for S, T, e, layout, _ in self.unknowns:
            blocks = {}
            for n in S.degrees():
                blk = layout.get(n)
                if blk is None:
                    blocks[n] = Matrix.zeros(F, T.dim(n + e), S.dim(n))
                    continue
                off, r, c = blk
                blocks[n] = Matrix.from_entries(F, r, c, [((i, j), x[off + i * c + j]) for i in range(r)
                                                          for j in range(c) if (off + i * c + j) in x])
            out.append(GradedMap(S, T, e, blocks))
        return out


def _linear_maps(S: Complex, T: Complex, e: int) -> list[GradedMap]:
    """A basis of the B-linear graded maps S -> T of degree e."""
    F = S.field
    sysm = GradedSystem(F)
    sysm.add_unknown(S, T, e)
    _, _, _, layout, _ = sysm.unknowns[0]
    eqs = [c for c, _ in sysm._linearity()]
    M = Matrix(F, len(eqs), sysm.nvars, {r: c for r, c in enumerate(eqs)})
    out = []
    for v in kernel_basis(M):
        blocks = {}
        for n in S.degrees():
            blk = layout.get(n)
            if blk is None:
                blocks[n] = Matrix.zeros(F, T.dim(n + e), S.dim(n))
                continue
            off, r, c = blk
            blocks[n] = Matrix.from_entries(F, r, c, [((i, j), v[off + i * c + j]) for i in range(r)
                                                      for j in range(c) if (off + i * c + j) in v])
        out.append(GradedMap(S, T, e, blocks))
    return out


def _flatten(f: GradedMap) -> dict:
    out, off = {}, 0
    for n in f.source.degrees():
        M = f.block(n)
        for i, j, v in M.entries():
            out[off + i * M.ncols + j] = v
        off += M.nrows * M.ncols
    return out


def _rank_of_images(maps: list[GradedMap]) -> int:
    if not maps:
        return 0
    vecs = [_flatten(commutator_with_d(f, -1 if f.degree % 2 else 1)) for f in maps]
    width = 1 + max((max(v) for v in vecs if v), default=0)
    F = maps[0].source.field
    return Matrix.from_columns(F, width, vecs).rank()


def hom_homology_dim(S: Complex, T: Complex, e: int) -> int:
    """Dimension of the space of degree-e chain maps S -> T modulo nullhomotopic ones.

    Maps are B-linear and raise degree by e; chain maps satisfy
    d f = (-1)^e f d.
    """
    cycles = _linear_maps(S, T, e)
    z = len(cycles) - _rank_of_images(cycles)
    return z - _rank_of_images(_linear_maps(S, T, e + 1))
