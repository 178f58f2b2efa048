"""Strictification through the bar construction.

The bar complex of a strong homotopy action of A on T has underlying
bimodule A (x) T(A[1]) (x) T.  Its degree D part is the direct sum over
i >= 0 of A^{(x)(i+1)} (x) T_{D-i}, with summands ordered by increasing i and
each summand in lexicographic tensor order.  The differential is

    d(a_0, .., a_{n-1}, x) = -(a_0 a_1, .., x)
        + sum_i (-1)^(i-1) (a_0, .., a_i a_{i+1}, .., x)
        + sum_k (-1)^(n-k) (a_0, .., a_{n-k}, m_k(a_{n-k+1}, .., x)).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .algebra import Algebra, ModuleRep, Report, TensorBasis, left_module_validate
from .complexes import (Complex, GradedMap, GradedSystem, chain_map_validate, complex_validate,
                        homology_dims, induced_map, is_quasi_iso, nullhomotopy_solve, quotient_by_image,
                        truncate_smart)
from .errors import ComparisonFailed, InternalSignError
from .linalg import Matrix, MatrixBuilder, block_diag, hstack
from .sha import (CoderivationView, HomFamily, StrongHomotopyAction,
                  coderivation_terms, id_kron)


@dataclass(frozen=True)
class BimoduleComplex:
    """A complex of right B-modules with a commuting left A-action in each degree."""

    algebra: Algebra
    complex: Complex
    left: dict  # degree -> tuple of Matrix, one per A-basis element

    @property
    def field(self):
        return self.complex.field

    def degrees(self) -> range:
        return self.complex.degrees()

    def dim(self, n: int) -> int:
        return self.complex.dim(n)

    def left_action(self, n: int, a: int) -> Matrix:
        acts = self.left.get(n)
        if acts is None:
            return Matrix.zeros(self.field, self.dim(n), self.dim(n))
        return acts[a]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BimoduleComplex):
            return NotImplemented
        if self.algebra != other.algebra or self.complex != other.complex:
            return False
        degs = set(self.degrees()) | set(other.degrees())
        return all(self.left_action(n, a) == other.left_action(n, a)
                   for n in degs for a in range(self.algebra.dim))


def bimodule_validate(X: BimoduleComplex) -> Report:
    """d^2 = 0, B-linearity, left-module laws, commuting actions, A-linearity of d."""
    rep = complex_validate(X.complex)
    if not rep:
        return Report("bimodule", False, rep.message, location=rep.location, residual=rep.residual)
    A, C = X.algebra, X.complex
    for n in X.degrees():
        rep = left_module_validate([X.left_action(n, a) for a in range(A.dim)], A, X.dim(n))
        if not rep:
            return Report("bimodule", False, f"degree {n}: {rep.message}", location=(n,))
        for a in range(A.dim):
            La = X.left_action(n, a)
            for b in range(C.ring.dim):
                if La @ C.action(n, b) != C.action(n, b) @ La:
                    return Report("bimodule", False, f"left and right actions do not commute in degree {n}",
                                  location=(n, a + 1, b + 1))
            lhs = C.d(n) @ La
            rhs = X.left_action(n - 1, a) @ C.d(n)
            if lhs != rhs:
                return Report("bimodule", False, f"d_{n} is not A-linear", location=(n, a + 1),
                              residual=lhs - rhs)
    return Report("bimodule", True, "complex of bimodules")


def truncate_bimodule(X: BimoduleComplex, n: int) -> tuple[BimoduleComplex, GradedMap]:
    """tau_{<=n} with the induced left action on the quotient in degree n."""
    C, proj = truncate_smart(X.complex, n, "le")
    left = {}
    for k in C.degrees():
        if k < n or C is X.complex:
            left[k] = tuple(X.left_action(k, a) for a in range(X.algebra.dim))
        else:
            sec = _top_section(X.complex, k)
            left[k] = tuple(proj.block(k) @ X.left_action(k, a) @ sec for a in range(X.algebra.dim))
    return BimoduleComplex(X.algebra, C, left), proj


def _top_section(C: Complex, n: int) -> Matrix:
    """Section C_n / im d_{n+1} -> C_n matching the projection of truncate_smart."""
    return quotient_by_image(C.field, C.dim(n), C.d(n + 1)).section


def restrict_R(X: BimoduleComplex) -> StrongHomotopyAction:
    """m_1 = d, m_2 = left action, higher m's zero."""
    sha = StrongHomotopyAction(X.algebra, X.complex)
    for j in X.degrees():
        sha.set_stacked(2, j, hstack(X.field, X.dim(j), [X.left_action(j, a) for a in range(X.algebra.dim)]))
    return sha


def regular_bimodule(A: Algebra) -> BimoduleComplex:
    """A in degree 0 as an A-A-bimodule (B = A)."""
    from .algebra import regular_right_module
    from .complexes import make_complex
    C = make_complex(A, {0: regular_right_module(A)}, {})
    return BimoduleComplex(A, C, {0: tuple(A.left_mult(a) for a in range(A.dim))})


# layout ------------------------------------------------------------------


@dataclass(frozen=True)
class BarLayout:
    """Summands (i, j) = A^{(x)(i+1)} (x) T_j of each degree D = i + j."""

    algebra: Algebra
    base: Complex
    top: int  # highest materialized degree
    max_i: int | None = None

    def summands(self, D: int) -> list[tuple[int, int, int, int]]:
        """(i, j, offset, size) for the summands of degree D, by increasing i."""
        out = []
        off = 0
        T, a = self.base, self.algebra.dim
        for i in range(0, D - T.lo + 1):
            if self.max_i is not None and i > self.max_i:
                break
            j = D - i
            if T.dim(j) == 0:
                continue
            size = a ** (i + 1) * T.dim(j)
            out.append((i, j, off, size))
            off += size
        return out

    def dim(self, D: int) -> int:
        return sum(s for *_, s in self.summands(D))

    def offset(self, D: int, i: int) -> int | None:
        for ii, _, off, _ in self.summands(D):
            if ii == i:
                return off
        return None

    def degrees(self) -> range:
        return range(self.base.lo, self.top + 1)

    def dims(self) -> list[int]:
        return [self.dim(D) for D in self.degrees()]


def _bar_actions(layout: BarLayout) -> tuple[dict, dict]:
    """Right B-modules and left A-actions of every materialized degree."""
    A, T = layout.algebra, layout.base
    F = A.field
    B = T.ring
    mods, left = {}, {}
    for D in layout.degrees():
        parts = layout.summands(D)
        right = []
        for b in range(B.dim):
            right.append(block_diag(F, [Matrix.identity(F, A.dim ** (i + 1)).kron(T.action(j, b))
                                        for i, j, _, _ in parts]))
        mods[D] = ModuleRep(layout.dim(D), tuple(right))
        left[D] = tuple(block_diag(F, [A.left_mult(a).kron(Matrix.identity(F, A.dim ** i * T.dim(j)))
                                       for i, j, _, _ in parts]) for a in range(A.dim))
    return mods, left


@dataclass
class BarWindow:
    sha: StrongHomotopyAction
    layout: BarLayout
    bimodule: BimoduleComplex

    @property
    def complex(self) -> Complex:
        return self.bimodule.complex

    def dims(self) -> list[int]:
        return self.layout.dims()


def build_bar_bimodule(sha: StrongHomotopyAction, top: int | None = None) -> BarWindow:
    """Degrees lo..top (default l + 1) of the bar complex, d^2 = 0 asserted."""
    A, T = sha.algebra, sha.base
    F = sha.field
    if top is None:
        top = T.hi + 1
    layout = BarLayout(A, T, top)
    view = CoderivationView.of_action(sha, window=top - T.lo + 2)
    mu = A.mult_matrix()
    diffs = {}
    for D in layout.degrees():
        if D == T.lo:
            continue
        mb = MatrixBuilder(F, layout.dim(D - 1), layout.dim(D))
        for i, j, off, _ in layout.summands(D):
            dT = T.dim(j)
            if i >= 1:
                toff = layout.offset(D - 1, i - 1)
                mb.add_block(toff, off, mu.kron(Matrix.identity(F, A.dim ** (i - 1) * dT)), -1)
            for (ti, tj), blk in coderivation_terms(view, i, j):
                toff = layout.offset(D - 1, ti)
                mb.add_block(toff, off, id_kron(A, 1, blk))
        diffs[D] = mb.build()
    mods, left = _bar_actions(layout)
    C = Complex(T.ring, T.lo, top, mods, diffs)
    for D in range(T.lo + 2, top + 1):
        if not (C.d(D - 1) @ C.d(D)).is_zero():
            raise InternalSignError(f"bar differential squares to a nonzero map at degree {D}")
    return BarWindow(sha, layout, BimoduleComplex(A, C, left))


# explicit low-degree builders ---------------------------------------------


class _Emitter:
    """Builds a differential column by column from elementwise formulas."""

    def __init__(self, layout: BarLayout):
        self.layout = layout
        self.A = layout.algebra
        self.T = layout.base

    def index(self, i: int, j: int, factors: tuple, x: int) -> int:
        basis = TensorBasis((self.A.dim,) * (i + 1) + (self.T.dim(j),))
        return self.layout.offset(i + j, i) + basis.index(tuple(factors) + (x,))

    def add(self, out: dict, i: int, j: int, parts: list, tvec: dict, scale) -> None:
        """out += scale * (p_0 (x) .. (x) p_i (x) tvec), each p a sparse A-vector."""
        if self.layout.offset(i + j, i) is None or not tvec:
            return
        combos = [((), 1)]
        for p in parts:
            combos = [(idx + (k,), c * v) for idx, c in combos for k, v in p.items()]
        for idx, c in combos:
            for x, v in tvec.items():
                key = self.index(i, j, idx, x)
                out[key] = out.get(key, 0) + scale * c * v


def _m_apply(sha: StrongHomotopyAction, n: int, args: tuple, j: int, x: int) -> dict:
    """m_n(e_args, e_x) for x in T_j, as a sparse vector of T_{j+n-2}."""
    return sha.block(n, args, j).column(x)


def _explicit_differential(sha: StrongHomotopyAction, layout: BarLayout, D: int) -> Matrix:
    """Degree-D differential of the explicit builders (elementwise, up to four A factors)."""
    A, T, F = sha.algebra, sha.base, sha.field
    em = _Emitter(layout)
    cols = []
    e = lambda k: {k: 1}  # noqa: E731
    mul = lambda a, b: A.mul[a][b]  # noqa: E731
    for i, j, _, size in layout.summands(D):
        basis = TensorBasis((A.dim,) * (i + 1) + (T.dim(j),))
        for multi in basis:
            *a, x = multi
            out: dict = {}
            dx = T.d(j).column(x)
            if i == 0:
                # d(a, x) = a (x) d(x)
                em.add(out, 0, j - 1, [e(a[0])], dx, 1)
            elif i == 1:
                # d(a,b,x) = -ab (x) x + a (x) m2(b,x) - a (x) b (x) d(x)
                em.add(out, 0, j, [mul(a[0], a[1])], {x: 1}, -1)
                em.add(out, 0, j, [e(a[0])], _m_apply(sha, 2, (a[1],), j, x), 1)
                em.add(out, 1, j - 1, [e(a[0]), e(a[1])], dx, -1)
            elif i == 2:
                # d(a,b,c,x) = -ab,c,x + a,bc,x + a,m3(b,c,x) - a,b,m2(c,x) + a,b,c,d(x)
                em.add(out, 1, j, [mul(a[0], a[1]), e(a[2])], {x: 1}, -1)
                em.add(out, 1, j, [e(a[0]), mul(a[1], a[2])], {x: 1}, 1)
                em.add(out, 0, j + 1, [e(a[0])], _m_apply(sha, 3, (a[1], a[2]), j, x), 1)
                em.add(out, 1, j, [e(a[0]), e(a[1])], _m_apply(sha, 2, (a[2],), j, x), -1)
                em.add(out, 2, j - 1, [e(a[0]), e(a[1]), e(a[2])], dx, 1)
            elif i == 3:
                # d(a0..a3,x) = -(a0a1,a2,a3,x) + (a0,a1a2,a3,x) - (a0,a1,a2a3,x)
                #   + (a0,m4(a1,a2,a3,x)) - (a0,a1,m3(a2,a3,x)) + (a0,a1,a2,m2(a3,x))
                #   - (a0,a1,a2,a3,d(x))
                em.add(out, 2, j, [mul(a[0], a[1]), e(a[2]), e(a[3])], {x: 1}, -1)
                em.add(out, 2, j, [e(a[0]), mul(a[1], a[2]), e(a[3])], {x: 1}, 1)
                em.add(out, 2, j, [e(a[0]), e(a[1]), mul(a[2], a[3])], {x: 1}, -1)
                em.add(out, 0, j + 2, [e(a[0])], _m_apply(sha, 4, (a[1], a[2], a[3]), j, x), 1)
                em.add(out, 1, j + 1, [e(a[0]), e(a[1])], _m_apply(sha, 3, (a[2], a[3]), j, x), -1)
                em.add(out, 2, j, [e(a[0]), e(a[1]), e(a[2])], _m_apply(sha, 2, (a[3],), j, x), 1)
                em.add(out, 3, j - 1, [e(a[0]), e(a[1]), e(a[2]), e(a[3])], dx, -1)
            else:
                raise ValueError("explicit builders handle at most four algebra factors")
            cols.append({k: w for k, v in out.items() if (w := F.reduce(v))})
    return Matrix.from_columns(F, layout.dim(D - 1), cols)


def _explicit_complex(sha: StrongHomotopyAction, l: int) -> BarWindow:
    T = sha.base
    if T.lo < 0 or T.hi > l:
        raise ValueError(f"T must be concentrated in degrees 0..{l}")
    layout = BarLayout(sha.algebra, T, l + 1 + T.hi, max_i=l + 1)
    top = layout.top
    diffs = {D: _explicit_differential(sha, layout, D) for D in range(T.lo + 1, top + 1)}
    mods, left = _bar_actions(layout)
    C = Complex(T.ring, T.lo, top, mods, diffs)
    return BarWindow(sha, layout, BimoduleComplex(sha.algebra, C, left))


def special_complex_deg01(sha: StrongHomotopyAction) -> BarWindow:
    """X~ = A(x)A(x)A(x)T[2] + A(x)A(x)T[1] + A(x)T from the explicit two-term formulas."""
    return _explicit_complex(sha, 1)


def special_complex_deg012(sha: StrongHomotopyAction) -> BarWindow:
    """X~ = sum_{i=1..4} A^{(x)i} (x) T[i-1] with the explicit three-term formulas."""
    return _explicit_complex(sha, 2)


def shared_window_agreement(special: BarWindow, general: BarWindow) -> Report:
    """Differential blocks of two constructions must coincide on common degrees."""
    top = min(special.layout.top, general.layout.top)
    for D in range(general.layout.base.lo, top + 1):
        if special.layout.summands(D) != general.layout.summands(D):
            return Report("builders-agree", False, f"degree {D} layouts differ", location=(D,))
        if D > general.layout.base.lo:
            a, b = special.complex.d(D), general.complex.d(D)
            if a != b:
                return Report("builders-agree", False, f"differentials differ in degree {D}",
                              location=(D,), residual=a - b)
    return Report("builders-agree", True, f"identical on degrees <= {top}")


# units and the adjunction ---------------------------------------------------


def unit_column(A: Algebra) -> Matrix:
    return Matrix.from_entries(A.field, A.dim, 1, [((k, 0), v) for k, v in A.unit.items()])


def unit_component(layout: BarLayout, r: int, j: int) -> Matrix:
    """(a_1..a_r, x) -> (1, a_1..a_r, x), from A^{(x)r} (x) T_j into degree j + r."""
    A, T = layout.algebra, layout.base
    F = A.field
    D = j + r
    cols = A.dim ** r * T.dim(j)
    off = layout.offset(D, r)
    if off is None:
        return Matrix.zeros(F, layout.dim(D), cols)
    blk = unit_column(A).kron(Matrix.identity(F, cols))
    mb = MatrixBuilder(F, layout.dim(D), cols)
    mb.add_block(off, 0, blk)
    return mb.build()


def adjunction_unit(sha: StrongHomotopyAction, window: BarWindow | None = None) -> tuple[HomFamily, int]:
    """The morphism T -> R L T, f_i(a_1..a_{i-1}, x) = (1, a_1..a_{i-1}, x).

    Returns the family and the top degree of the window it lands in.
    """
    window = window or build_bar_bimodule(sha)
    target = restrict_R(window.bimodule)
    fam = HomFamily(sha, target, 0)
    W = window.layout.top
    T = sha.base
    for i in range(1, fam.bound + 1):
        for j in T.degrees():
            if j + i - 1 <= W and T.dim(j):
                fam.f.setdefault(i, {})[j] = unit_component(window.layout, i - 1, j)
    return fam, W


def h_unitality_check(sha: StrongHomotopyAction) -> bool:
    """m_2(1, -) induces the identity on every homology group."""
    return h_unitality_report(sha).passed


def h_unitality_report(sha: StrongHomotopyAction) -> Report:
    T, A = sha.base, sha.algebra
    blocks = {}
    for j in T.degrees():
        acc = Matrix.zeros(sha.field, T.dim(j), T.dim(j))
        for k, v in A.unit.items():
            acc = acc + sha.block(2, (k,), j).scale(v)
        blocks[j] = acc
    g = GradedMap(T, T, 0, blocks)
    rep = chain_map_validate(g)
    if not rep:
        return Report("h-unital", False, f"m2(1,-) is not a chain map: {rep.message}")
    for n in T.degrees():
        H = induced_map(g, n)
        if H != Matrix.identity(sha.field, H.nrows):
            return Report("h-unital", False, f"m2(1,-) is not the identity on H_{n}", location=(n,),
                          residual=H - Matrix.identity(sha.field, H.nrows))
    return Report("h-unital", True, "m2(1,-) induces the identity in homology")


def augmentation(window: BarWindow, Y: BimoduleComplex) -> GradedMap:
    """(a_0, y) -> a_0 y on the summand i = 0, zero on longer tensors."""
    F = Y.field
    blocks = {}
    for D in window.layout.degrees():
        mb = MatrixBuilder(F, Y.dim(D), window.layout.dim(D))
        off = window.layout.offset(D, 0)
        if off is not None:
            mb.add_block(0, off, hstack(F, Y.dim(D), [Y.left_action(D, a) for a in range(Y.algebra.dim)]))
        blocks[D] = mb.build()
    return GradedMap(window.complex, Y.complex, 0, blocks)


def hochschild_check(Y: BimoduleComplex) -> Report:
    """L R Y -> Y is a chain map and, after truncation at the top of Y, a quasi-isomorphism."""
    if all(Y.dim(n) == 0 for n in Y.degrees()):
        return Report("hochschild", True, "Y = 0")
    sha = restrict_R(Y)
    hi = Y.complex.hi
    window = build_bar_bimodule(sha, top=hi + 1)
    eps = augmentation(window, Y)
    rep = chain_map_validate(eps)
    if not rep:
        return Report("hochschild", False, f"augmentation: {rep.message}", location=rep.location)
    X, proj = truncate_bimodule(window.bimodule, hi)
    blocks = {}
    for D in X.degrees():
        blocks[D] = eps.block(D) @ _top_section(window.complex, D) if D == hi else eps.block(D)
    induced = GradedMap(X.complex, Y.complex, 0, blocks)
    rep = chain_map_validate(induced)
    if not rep:
        return Report("hochschild", False, f"truncated augmentation: {rep.message}")
    q = is_quasi_iso(induced)
    if not q:
        return Report("hochschild", False, f"augmentation is not a quasi-isomorphism (ranks {q.ranks})")
    return Report("hochschild", True, "augmentation is a quasi-isomorphism")


# lifts and their comparison --------------------------------------------------


@dataclass
class Lift:
    """A bimodule complex X with a B-linear chain map phi : T -> X."""

    algebra: Algebra
    base: Complex
    X: BimoduleComplex
    phi: GradedMap


def lift_from_bimodule(Y: BimoduleComplex) -> Lift:
    """Y itself, with phi the identity of its underlying complex."""
    return Lift(Y.algebra, Y.complex, Y, Y.complex.identity())


@dataclass
class Comparison:
    g: GradedMap
    homotopy: GradedMap  # g phi - phi' = d K + K d
    compat: list = dc_field(default_factory=list)  # per basis element: g a - a g = d H + H d
    identity_shortcut: bool = False


def _left_map(X: BimoduleComplex, a: int) -> GradedMap:
    return GradedMap(X.complex, X.complex, 0, {n: X.left_action(n, a) for n in X.degrees()})


def compare_lifts(first: Lift, second: Lift) -> Comparison:
    """A B-linear chain map g : X -> X' with g phi homotopic to phi', compatible with A up to homotopy."""
    if first.algebra != second.algebra or first.base != second.base:
        raise ComparisonFailed("the lifts are over different instances")
    X, Xp = first.X, second.X
    F = X.field
    T = first.base
    if X == Xp and first.phi == second.phi:
        g = X.complex.identity()
        zero = GradedMap(T, Xp.complex, 1, {})
        compat = [GradedMap(X.complex, Xp.complex, 1, {}) for _ in range(first.algebra.dim)]
        return Comparison(g, zero, compat, identity_shortcut=True)
    S, Sp = X.complex, Xp.complex
    sysm = GradedSystem(F)
    ug = sysm.add_unknown(S, Sp, 0)
    uk = sysm.add_unknown(T, Sp, 1)
    for n in sorted(set(S.degrees()) | {S.hi + 1}):
        # d' g_n - g_{n-1} d_n = 0
        rhs = Matrix.zeros(F, Sp.dim(n - 1), S.dim(n))
        if rhs.nrows and rhs.ncols:
            sysm.add_block_equation([(ug, n, Sp.d(n), None, 1), (ug, n - 1, None, S.d(n), -1)], rhs)
    for n in T.degrees():
        # g_n phi_n - d' K_n - K_{n-1} d_n = phi'_n
        rhs = second.phi.block(n)
        if rhs.nrows and rhs.ncols:
            sysm.add_block_equation([(ug, n, None, first.phi.block(n), 1),
                                     (uk, n, Sp.d(n + 1), None, -1),
                                     (uk, n - 1, None, T.d(n), -1)], rhs)
    sol = sysm.solve()
    if sol is None:
        raise ComparisonFailed("no chain map g with g phi homotopic to phi'")
    g, K = sol
    compat = []
    for a in range(first.algebra.dim):
        diff = _left_map(Xp, a).compose(g) - g.compose(_left_map(X, a))
        H = nullhomotopy_solve(GradedMap(S, Sp, 0, diff.blocks))
        if H is None:
            raise ComparisonFailed(f"g does not commute with e_{a + 1} up to homotopy")
        compat.append(H)
    return Comparison(g, K, compat)


# the pipeline ------------------------------------------------------------------


def phi_and_f2(layout: BarLayout, proj: GradedMap, X: BimoduleComplex) -> tuple[GradedMap, dict]:
    """phi = proj o f_1 and f2 = proj o f_2 with f_2(a, x) = (1, a, x)."""
    T = layout.base
    F = T.field
    phi, f2 = {}, {}
    for j in T.degrees():
        phi[j] = proj.block(j) @ unit_component(layout, 0, j)
        if j + 1 <= X.complex.hi:
            f2[j] = proj.block(j + 1) @ unit_component(layout, 1, j)
        else:
            f2[j] = Matrix.zeros(F, 0, layout.algebra.dim * T.dim(j))
    return GradedMap(T, X.complex, 0, phi), f2


def f1f2_report(sha: StrongHomotopyAction, X: BimoduleComplex, phi: GradedMap, f2: dict) -> Report:
    """d f2(a,x) + f2(a, d x) = phi(m2(a,x)) - a phi(x) in every degree."""
    A, T, F = sha.algebra, sha.base, sha.field
    C = X.complex
    for j in T.degrees():
        rows = X.dim(j)
        cols = A.dim * T.dim(j)
        if not rows or not cols:
            continue
        f2j = f2.get(j, Matrix.zeros(F, X.dim(j + 1), cols))
        f2m = f2.get(j - 1, Matrix.zeros(F, X.dim(j), A.dim * T.dim(j - 1)))
        lhs = C.d(j + 1) @ f2j + f2m @ id_kron(A, 1, T.d(j))
        act = hstack(F, rows, [X.left_action(j, a) @ phi.block(j) for a in range(A.dim)])
        rhs = phi.block(j) @ sha.M(2, j) - act
        if lhs != rhs:
            return Report("f1f2", False, f"compatibility fails in degree {j}", location=(j,), residual=lhs - rhs)
    return Report("f1f2", True, "d f2 + f2 d = phi m2 - m2 phi")


@dataclass
class Certificate:
    instance_hash: str
    builder: str
    algebra: Algebra
    base: Complex
    sha: StrongHomotopyAction
    X: BimoduleComplex
    phi: GradedMap
    f2: dict
    window_dims: list
    checks: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def l(self) -> int:
        return self.base.hi

    def lift(self) -> Lift:
        return Lift(self.algebra, self.base, self.X, self.phi)

    def summary(self) -> dict:
        return {
            "X_dims": {n: self.X.dim(n) for n in self.X.degrees()},
            "H_X": homology_dims(self.X.complex),
            "H_T": homology_dims(self.base),
            "window_dims": list(self.window_dims),
            "checks": {c["name"]: c["pass"] for c in self.checks},
        }


def strictification_window(sha: StrongHomotopyAction, builder: str) -> BarWindow:
    l = sha.base.hi
    if builder == "general":
        return build_bar_bimodule(sha)
    if builder == "special":
        if l <= 1:
            return special_complex_deg01(sha)
        if l == 2:
            return special_complex_deg012(sha)
        raise ValueError("the special builder needs T in degrees 0..1 or 0..2")
    raise ValueError(f"unknown builder {builder!r}")


def assemble(sha: StrongHomotopyAction, builder: str = "general") -> tuple[BarWindow, BimoduleComplex, GradedMap, dict]:
    """Window, truncated X, phi and f2 for a completed action."""
    window = strictification_window(sha, builder)
    X, proj = truncate_bimodule(window.bimodule, sha.base.hi)
    phi, f2 = phi_and_f2(window.layout, proj, X)
    return window, X, phi, f2
