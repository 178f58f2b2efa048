"""Strong homotopy actions, their coderivation view, and the Hom-infinity complex.

The operation ``m_n(a_1, ..., a_{n-1}, -)`` restricted to ``T_j`` is stored
*stacked*: one matrix ``A^{(x)(n-1)} (x) T_j -> T_{j+n-2}`` whose column
``t * dim T_j + x`` is the image of ``(e_t, x)`` for the lexicographic index
``t`` of the basis tuple.  Per-tuple blocks are column slices of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Iterator

from .algebra import Algebra, Report, tuples
from .complexes import Complex
from .field import Field
from .linalg import Matrix, hstack


@lru_cache(maxsize=None)
def _identity(field: Field, n: int) -> Matrix:
    return Matrix.identity(field, n)


def mult_operator(A: Algebra, left: int, right: int, tail: int) -> Matrix:
    """1_{A^left} (x) mu (x) 1_{A^right (x) tail}: contract factors left+1, left+2."""
    F = A.field
    M = _identity(F, A.dim ** left).kron(A.mult_matrix())
    return M.kron(_identity(F, A.dim ** right * tail))


def id_kron(A: Algebra, count: int, M: Matrix) -> Matrix:
    """1_{A^count} (x) M."""
    if count == 0:
        return M
    return _identity(A.field, A.dim ** count).kron(M)


def tuple_index(dim: int, tup) -> int:
    idx = 0
    for t in tup:
        idx = idx * dim + t
    return idx


def slice_tuple(M: Matrix, A: Algebra, tup, width: int) -> Matrix:
    """Columns of a stacked matrix belonging to one basis tuple."""
    c0 = tuple_index(A.dim, tup) * width
    return M.submatrix(0, M.nrows, c0, c0 + width)


class StrongHomotopyAction:
    """Maps m_n, n >= 1, of an algebra A on a bounded complex T.

    ``m[n][j]`` is the stacked matrix of m_n on A^{(x)(n-1)} (x) T_j.  m_1 is
    always read from the differential of T.
    """

    def __init__(self, algebra: Algebra, base: Complex, m: dict | None = None):
        self.algebra = algebra
        self.base = base
        self.m: dict[int, dict[int, Matrix]] = {}
        for n, blocks in (m or {}).items():
            if n >= 2:
                self.m[n] = dict(blocks)

    @property
    def field(self) -> Field:
        return self.base.field

    @property
    def top(self) -> int:
        """Largest n for which m_n can be nonzero (l + 2 for T in degrees 0..l)."""
        return self.base.hi - self.base.lo + 2

    def shape(self, n: int, j: int) -> tuple[int, int]:
        return (self.base.dim(j + n - 2), self.algebra.dim ** (n - 1) * self.base.dim(j))

    def M(self, n: int, j: int) -> Matrix:
        if n == 1:
            return self.base.d(j)
        blk = self.m.get(n, {}).get(j)
        if blk is None:
            return Matrix.zeros(self.field, *self.shape(n, j))
        return blk

    def block(self, n: int, tup, j: int) -> Matrix:
        return slice_tuple(self.M(n, j), self.algebra, tup, self.base.dim(j))

    def set_stacked(self, n: int, j: int, M: Matrix) -> None:
        if M.shape != self.shape(n, j):
            raise ValueError(f"m_{n} block at degree {j} has shape {M.shape}, expected {self.shape(n, j)}")
        self.m.setdefault(n, {})[j] = M

    def copy(self) -> StrongHomotopyAction:
        return StrongHomotopyAction(self.algebra, self.base, {n: dict(b) for n, b in self.m.items()})

    @classmethod
    def from_blocks(cls, algebra: Algebra, base: Complex, blocks: dict) -> StrongHomotopyAction:
        """Build from per-tuple blocks ``blocks[n][tuple][j]`` (missing blocks are zero)."""
        sha = cls(algebra, base)
        F = base.field
        for n, per_tuple in blocks.items():
            if n < 2:
                continue
            for j in base.degrees():
                rows = base.dim(j + n - 2)
                parts = []
                for tup in tuples(algebra.dim, n - 1):
                    b = per_tuple.get(tuple(tup), {}).get(j)
                    parts.append(b if b is not None else Matrix.zeros(F, rows, base.dim(j)))
                sha.set_stacked(n, j, hstack(F, rows, parts))
        return sha

    def nonempty(self) -> Iterator[tuple[int, int]]:
        """(n, j) pairs with n >= 2 whose block has a nonzero shape."""
        for n in range(2, self.top + 1):
            for j in self.base.degrees():
                r, c = self.shape(n, j)
                if r and c:
                    yield n, j

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrongHomotopyAction):
            return NotImplemented
        if self.algebra != other.algebra or self.base != other.base:
            return False
        top = max(self.top, other.top, max(self.m, default=0), max(other.m, default=0))
        return all(self.M(n, j) == other.M(n, j)
                   for n in range(2, top + 1) for j in self.base.degrees())


def strict_action(algebra: Algebra, base: Complex, left: dict) -> StrongHomotopyAction:
    """m_2(e_a, -) = left[j][a], higher m's zero."""
    F = base.field
    sha = StrongHomotopyAction(algebra, base)
    for j in base.degrees():
        sha.set_stacked(2, j, hstack(F, base.dim(j), list(left[j])))
    return sha


# the relations ----------------------------------------------------------


def relation_residual(sha: StrongHomotopyAction, n: int, j: int, skip_top: bool = False) -> Matrix:
    """Stacked right-hand side of the relation of arity n on A^{(x)(n-1)} (x) T_j.

    0 = sum_i (-1)^(i-1) m_{n-1}(.., a_i a_{i+1}, ..)
        + sum_k (-1)^(n-k) m_{n-k+1}(a_1, .., a_{n-k}, m_k(a_{n-k+1}, .., x)).
    ``skip_top`` drops the two terms containing m_n (k = 1 and k = n).
    """
    A, T, F = sha.algebra, sha.base, sha.field
    rows = T.dim(j + n - 3)
    cols = A.dim ** (n - 1) * T.dim(j)
    acc = Matrix.zeros(F, rows, cols)
    if not rows or not cols:
        return acc
    dT = T.dim(j)
    for i in range(1, n - 1):
        term = sha.M(n - 1, j) @ mult_operator(A, i - 1, n - 2 - i, dT)
        acc = acc + (term if (i - 1) % 2 == 0 else term.scale(-1))
    for k in range(1, n + 1):
        if skip_top and k in (1, n):
            continue
        inner = id_kron(A, n - k, sha.M(k, j))
        term = sha.M(n - k + 1, j + k - 2) @ inner
        acc = acc + (term if (n - k) % 2 == 0 else term.scale(-1))
    return acc


def _first_failure(A: Algebra, T: Complex, n: int, residuals: dict):
    for tup in tuples(A.dim, n - 1):
        for j in T.degrees():
            R = residuals[j]
            if R.is_zero():
                continue
            blk = slice_tuple(R, A, tup, T.dim(j))
            if not blk.is_zero():
                return tup, j, blk
    return None


def check_sha_relations(sha: StrongHomotopyAction, up_to: int | None = None) -> Report:
    """The relations for every arity n <= up_to (default l + 3), tuple and degree.

    On failure the report's location is ``(n, tuple, j)`` with a 1-based tuple
    and the residual is the offending block.
    """
    A, T = sha.algebra, sha.base
    if up_to is None:
        up_to = sha.top + 1
    for n, blocks in sha.m.items():
        for j, M in blocks.items():
            if M.shape != sha.shape(n, j):
                raise ValueError(f"m_{n} block at degree {j} has shape {M.shape}")
    for n in range(1, up_to + 1):
        residuals = {j: relation_residual(sha, n, j) for j in T.degrees()}
        hit = _first_failure(A, T, n, residuals)
        if hit is not None:
            tup, j, blk = hit
            loc = tuple(t + 1 for t in tup)
            return Report("sha-relations", False, f"relation n={n} fails on tuple {loc} at degree {j}",
                          location=(n, loc, j), residual=blk)
    return Report("sha-relations", True, f"relations hold for n <= {up_to}")


# coderivations ------------------------------------------------------------


@dataclass
class CoderivationView:
    """Components b_k (stacked like m_k) seen on the comodule C (x) L, truncated at N.

    The summand (i, j) is A[1]^{(x)i} (x) L_j for i < N.  Component k maps
    (k-1, j) into (0, j + k + shift); for the m's of an action shift = -2.
    """

    algebra: Algebra
    base: Complex
    components: dict  # k -> {j: Matrix}
    degree: int = 1
    window: int = 3
    shift: int = -2

    @classmethod
    def of_action(cls, sha: StrongHomotopyAction, window: int | None = None) -> CoderivationView:
        comps = {1: {j: sha.base.d(j) for j in sha.base.degrees()}}
        for n, blocks in sha.m.items():
            comps[n] = dict(blocks)
        return cls(sha.algebra, sha.base, comps, 1, window or sha.top + 1, -2)

    def component(self, k: int, j: int) -> Matrix:
        blk = self.components.get(k, {}).get(j)
        if blk is None:
            return Matrix.zeros(self.base.field, self.base.dim(j + k + self.shift),
                                self.algebra.dim ** (k - 1) * self.base.dim(j))
        return blk

    def summand_dim(self, i: int, j: int) -> int:
        return self.algebra.dim ** i * self.base.dim(j)

    def summands(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.window) for j in self.base.degrees()]


def coderivation_terms(view: CoderivationView, i: int, j: int,
                       with_mult: bool = True) -> list[tuple[tuple[int, int], Matrix]]:
    """The extension b restricted to the summand (i, j), as (target summand, block) pairs.

    b(a_1..a_{n-1}, x) = sum_r (-1)^{e(r-1)} (.., a_r a_{r+1}, .., x)
                        + sum_k (-1)^{e(n-k)} (a_1..a_{n-k}, b_k(a_{n-k+1}.., x)), n = i + 1.
    """
    A, L, e = view.algebra, view.base, view.degree
    dL = L.dim(j)
    out = []
    if not dL:
        return out
    n = i + 1
    if with_mult:
        for r in range(1, i):
            blk = mult_operator(A, r - 1, i - r - 1, dL)
            if e * (r - 1) % 2:
                blk = blk.scale(-1)
            out.append(((i - 1, j), blk))
    for k in range(1, n + 1):
        tj = j + k + view.shift
        if not L.dim(tj):
            continue
        blk = id_kron(A, n - k, view.component(k, j))
        if e * (n - k) % 2:
            blk = blk.scale(-1)
        out.append(((n - k, tj), blk))
    return out


def coderivation_extend(view: CoderivationView) -> dict:
    """All blocks of the extended coderivation: {(source, target): Matrix}."""
    ext: dict = {}
    for s in view.summands():
        for t, blk in coderivation_terms(view, *s):
            if t in ext.get(s, {}):
                ext[s][t] = ext[s][t] + blk
            else:
                ext.setdefault(s, {})[t] = blk
    return {(s, t): M for s, row in ext.items() for t, M in row.items()}


def corestriction(view: CoderivationView, ext: dict) -> dict:
    """epsilon o b: the blocks landing in L = summand i = 0, keyed by source."""
    return {s: M for (s, t), M in ext.items() if t[0] == 0}


def compose_blocks(second: dict, first: dict) -> dict:
    """Block composite second o first of maps given as {(source, target): Matrix}."""
    by_source: dict = {}
    for (s, t), M in second.items():
        by_source.setdefault(s, []).append((t, M))
    out: dict = {}
    for (s, t), M in first.items():
        for u, N in by_source.get(t, ()):
            P = N @ M
            key = (s, u)
            out[key] = out[key] + P if key in out else P
    return out


def check_b_squared(view: CoderivationView) -> Report:
    """epsilon o b^2 = 0 on the window, reported in the same order as the relations."""
    A, L = view.algebra, view.base
    ext = coderivation_extend(view)
    sq = compose_blocks(ext, ext)
    F = L.field
    for n in range(1, view.window + 1):
        residuals = {}
        for j in L.degrees():
            tgt = (0, j + n - 3)
            R = sq.get(((n - 1, j), tgt))
            if R is None:
                R = Matrix.zeros(F, L.dim(j + n - 3), view.summand_dim(n - 1, j))
            residuals[j] = R
        hit = _first_failure(A, L, n, residuals)
        if hit is not None:
            tup, j, blk = hit
            loc = tuple(t + 1 for t in tup)
            return Report("b-squared", False, f"epsilon b^2 != 0 on tuple {loc} (length {n - 1}) at degree {j}",
                          location=(n, loc, j), residual=blk)
    return Report("b-squared", True, f"epsilon b^2 = 0 on tensor length < {view.window}")


def coalgebra_differential(A: Algebra, window: int) -> dict:
    """b_C on T(A[1]) up to tensor length window - 1, as blocks {(i, i-1): Matrix}."""
    from .complexes import vector_space_complex
    k = vector_space_complex(A.field, {0: 1}, {})
    view = CoderivationView(A, k, {}, 1, window, -2)
    ext = coderivation_extend(view)
    return {(s[0], t[0]): M for (s, t), M in ext.items()}


# Hom-infinity ---------------------------------------------------------------


@dataclass
class HomFamily:
    """Element of Hom_inf^p(L, M): f_n : A^{(x)(n-1)} (x) L_j -> M_{j+n-1-p}, stacked."""

    source: StrongHomotopyAction
    target: StrongHomotopyAction
    degree: int
    f: dict = dc_field(default_factory=dict)  # n -> {j: Matrix}

    @property
    def bound(self) -> int:
        """Largest n with a possibly nonempty component."""
        return max(1, self.target.base.hi - self.source.base.lo + 1 + self.degree)

    def shape(self, n: int, j: int) -> tuple[int, int]:
        A = self.source.algebra
        return (self.target.base.dim(j + n - 1 - self.degree), A.dim ** (n - 1) * self.source.base.dim(j))

    def component(self, n: int, j: int) -> Matrix:
        blk = self.f.get(n, {}).get(j)
        if blk is None:
            return Matrix.zeros(self.source.field, *self.shape(n, j))
        return blk

    def block(self, n: int, tup, j: int) -> Matrix:
        return slice_tuple(self.component(n, j), self.source.algebra, tup, self.source.base.dim(j))


def hom_inf_differential(fam: HomFamily) -> HomFamily:
    """g = d(f) of degree p + 1:

    g_n = sum_k (-1)^{p(k-1)} m_k(a_1..a_{k-1}, f_{n-k+1}(a_k.., x))
          - (-1)^p sum_i (-1)^{i-1} f_{n-1}(.., a_i a_{i+1}, .., x)
          - (-1)^p sum_k (-1)^{n-k} f_{n-k+1}(a_1..a_{n-k}, m_k(a_{n-k+1}.., x)).
    """
    L, M, p = fam.source, fam.target, fam.degree
    A = L.algebra
    out = HomFamily(L, M, p + 1)
    sp = -1 if p % 2 else 1
    for n in range(1, out.bound + 1):
        for j in L.base.degrees():
            rows, cols = out.shape(n, j)
            if not rows or not cols:
                continue
            acc = Matrix.zeros(L.field, rows, cols)
            dL = L.base.dim(j)
            for k in range(1, n + 1):
                inner = id_kron(A, k - 1, fam.component(n - k + 1, j))
                jj = j + n - k - p
                term = M.M(k, jj) @ inner
                acc = acc + (term.scale(-1) if p * (k - 1) % 2 else term)
            for i in range(1, n - 1):
                term = fam.component(n - 1, j) @ mult_operator(A, i - 1, n - 2 - i, dL)
                s = -sp * (1 if (i - 1) % 2 == 0 else -1)
                acc = acc + term.scale(s)
            for k in range(1, n + 1):
                term = fam.component(n - k + 1, j + k - 2) @ id_kron(A, n - k, L.M(k, j))
                s = -sp * (1 if (n - k) % 2 == 0 else -1)
                acc = acc + term.scale(s)
            out.f.setdefault(n, {})[j] = acc
    return out


def _family_report(name: str, fam: HomFamily, max_target: int | None, expect: HomFamily | None = None) -> Report:
    """Compare fam (minus expect) with zero block by block, n = 1 reported separately."""
    L = fam.source
    A = L.algebra
    details = []
    first = None
    for n in range(1, fam.bound + 1):
        bad = None
        for tup in tuples(A.dim, n - 1):
            for j in L.base.degrees():
                tgt = j + n - 1 - fam.degree
                if max_target is not None and tgt + 1 > max_target:
                    continue
                R = fam.block(n, tup, j)
                if expect is not None:
                    R = R - expect.block(n, tup, j)
                if not R.is_zero():
                    bad = (tuple(t + 1 for t in tup), j, R)
                    break
            if bad:
                break
        ok = bad is None
        rep = Report(f"{name} n={n}", ok, "holds" if ok else f"fails on tuple {bad[0]} at degree {bad[1]}",
                     location=None if ok else (n, bad[0], bad[1]), residual=None if ok else bad[2])
        details.append(rep)
        if not ok and first is None:
            first = rep
    if first is None:
        return Report(name, True, "all arities hold", details=tuple(details))
    return Report(name, False, first.message + f" (n={first.location[0]})", location=first.location,
                  residual=first.residual, details=tuple(details))


def check_sha_morphism(fam: HomFamily, max_target: int | None = None) -> Report:
    """fam (degree 0) is a morphism iff it is a cycle of Hom_inf.

    ``max_target`` restricts the test to blocks whose inputs all lie in target
    degrees <= max_target (for targets known only on a window).
    """
    if fam.degree != 0:
        raise ValueError("a morphism has degree 0")
    g = hom_inf_differential(fam)
    return _family_report("morphism", g, max_target)


def check_sha_nullhomotopy(fam: HomFamily, h: HomFamily, max_target: int | None = None) -> Report:
    """h (degree p - 1) is a homotopy from fam to 0 iff d(h) = fam."""
    if h.degree != fam.degree - 1:
        raise ValueError("the homotopy must have degree one less than the morphism")
    g = hom_inf_differential(h)
    return _family_report("nullhomotopy", g, max_target, expect=fam)


def identity_morphism(sha: StrongHomotopyAction) -> HomFamily:
    T = sha.base
    return HomFamily(sha, sha, 0, {1: {j: Matrix.identity(sha.field, T.dim(j)) for j in T.degrees()}})


def random_family(rng, L: StrongHomotopyAction, M: StrongHomotopyAction, p: int,
                  bound: int = 2) -> HomFamily:
    """Random family of degree p; blocks are B-linear only when B = k."""
    fam = HomFamily(L, M, p)
    F = L.field
    for n in range(1, fam.bound + 1):
        for j in L.base.degrees():
            r, c = fam.shape(n, j)
            if r and c:
                fam.f.setdefault(n, {})[j] = Matrix.from_entries(
                    F, r, c, [((a, b), F.random(rng, bound)) for a in range(r) for b in range(c)])
    return fam
