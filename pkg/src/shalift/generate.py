"""Seeded instance generator with known ground truth.

Presets:

* ``strict``: a genuine bimodule complex Y, forgotten to its action on T = Y.
* ``conjugated``: Y enlarged by a contractible cone on a free module,
  transported along a random B-linear change of basis and perturbed by
  random nullhomotopic maps, so alpha is only multiplicative up to homotopy.
* ``toda-break``: T with zero differential and a supplied m3 whose arity 4
  obstruction is a nonzero map, hence not nullhomotopic.
* ``paper-dual``: k[e]/(e^2) acting on the contractible complex k -> k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import (CATALOGUE, Algebra, ModuleRep, change_basis, dual_numbers, ground_field, left_modules,
                      regular_right_module, trivial_module)
from .bar import BimoduleComplex
from .complexes import Complex, GradedMap
from .field import Field
from .formats import Instance
from .lift import toda_condition
from .linalg import Matrix, block_diag, inverse, kernel_basis

PRESETS = ("strict", "conjugated", "toda-break", "paper-dual")
MAX_DIM = 4
TODA_TRIES = 60


@dataclass
class Generated:
    instance: Instance
    source: BimoduleComplex | None = None  # the strict bimodule complex, when known
    planted_N: int | None = None


def _rng(preset: str, seed, l: int, field: Field, dim_a: int) -> random.Random:
    return random.Random(f"{preset}:{seed}:{l}:{field.name}:{dim_a}")


def _random_combination(rng, F: Field, basis: list, n: int) -> dict:
    out: dict = {}
    for v in basis:
        c = F.random(rng)
        if not c:
            continue
        for k, x in v.items():
            out[k] = F.reduce(out.get(k, 0) + c * x)
    return {k: x for k, x in out.items() if x}


def intertwiners(F: Field, rows: int, cols: int, pairs, kills=()) -> list[dict]:
    """Basis of {G : G S = R G for (S, R) in pairs, K G = 0 for K in kills}.

    G is flattened row-major: entry (i, j) is variable i * cols + j.
    """
    eqs = []
    for S, R in pairs:
        for i in range(rows):
            for j in range(cols):
                e: dict = {}
                for k, v in S.column(j).items():
                    e[i * cols + k] = e.get(i * cols + k, 0) + v
                for k in range(rows):
                    v = R[i, k]
                    if v:
                        e[k * cols + j] = e.get(k * cols + j, 0) - v
                e = {x: F.reduce(y) for x, y in e.items() if F.reduce(y)}
                if e:
                    eqs.append(e)
    for K in kills:
        for i in range(K.nrows):
            for j in range(cols):
                e = {}
                for k, v in K.row(i).items():
                    e[k * cols + j] = v
                if e:
                    eqs.append(e)
    nvars = rows * cols
    M = Matrix(F, len(eqs), nvars, {r: e for r, e in enumerate(eqs)})
    return kernel_basis(M)


def _as_matrix(F: Field, v: dict, rows: int, cols: int) -> Matrix:
    return Matrix.from_entries(F, rows, cols, [((k // cols, k % cols), x) for k, x in v.items()])


def random_intertwiner(rng, F: Field, rows: int, cols: int, pairs, kills=()) -> Matrix:
    if not rows or not cols:
        return Matrix.zeros(F, rows, cols)
    basis = intertwiners(F, rows, cols, pairs, kills)
    return _as_matrix(F, _random_combination(rng, F, basis, rows * cols), rows, cols)


def _pick_algebra(rng, F: Field, dim_a: int, twist: bool) -> tuple[Algebra, list]:
    """A catalogue algebra, possibly in a random basis, with its catalogue left modules."""
    choices = [make for d in sorted(CATALOGUE) if d <= dim_a for make in CATALOGUE[d]]
    A = rng.choice(choices)(F)
    mods = [acts for _, acts in left_modules(A)]
    if twist and A.dim > 1:
        for _ in range(10):
            P = Matrix.from_dense(F, [[F.random(rng) for _ in range(A.dim)] for _ in range(A.dim)])
            Pinv = inverse(P)
            if Pinv is not None:
                # the new basis vector f_j = sum_i P[i, j] e_i acts by sum_i P[i, j] L(e_i)
                mods = [[_combine(acts, P.column(j)) for j in range(A.dim)] for acts in mods]
                return change_basis(A, P, Pinv), mods
    return A, mods


def _combine(acts: list, coeffs: dict) -> Matrix:
    out = Matrix.zeros(acts[0].field, acts[0].nrows, acts[0].ncols)
    for i, c in coeffs.items():
        out = out + acts[i].scale(c)
    return out


def _left_piece(rng, A: Algebra, modules: list, budget: int):
    """A direct sum of one or two of the given left modules of total dimension <= budget."""
    mods = [acts for acts in modules if acts[0].nrows <= budget]
    if not mods:
        return None
    first = rng.choice(mods)
    pieces = [first]
    rest = budget - first[0].nrows
    small = [m for m in mods if m[0].nrows <= rest]
    if small and rng.random() < 0.4:
        pieces.append(rng.choice(small))
    F = A.field
    return [block_diag(F, [p[a] for p in pieces]) for a in range(A.dim)]


def _right_piece(B: Algebra, rank: int) -> ModuleRep:
    if B.dim == 1:
        return trivial_module(B, rank)
    reg = regular_right_module(B)
    return ModuleRep(rank * B.dim, tuple(block_diag(B.field, [reg.action[b]] * rank) for b in range(B.dim)))


def random_bimodule_complex(rng, A: Algebra, modules: list, B: Algebra, lo: int, hi: int,
                            budgets: dict) -> BimoduleComplex:
    """Degreewise M_n (x) N_n with a random A-B-bilinear differential, d^2 = 0 by construction."""
    F = A.field
    mods, left, diffs = {}, {}, {}
    for n in range(lo, hi + 1):
        budget = budgets.get(n, MAX_DIM)
        M = None
        if budget >= B.dim and rng.random() < 0.9:
            M = _left_piece(rng, A, modules, budget // B.dim)
        if M is None:
            mods[n] = ModuleRep(0, tuple(Matrix.zeros(F, 0, 0) for _ in range(B.dim)))
            left[n] = tuple(Matrix.zeros(F, 0, 0) for _ in range(A.dim))
            continue
        N = _right_piece(B, 1)
        m = M[0].nrows
        In, Im = Matrix.identity(F, N.dim), Matrix.identity(F, m)
        left[n] = tuple(La.kron(In) for La in M)
        mods[n] = ModuleRep(m * N.dim, tuple(Im.kron(Rb) for Rb in N.action))
    for n in range(lo + 1, hi + 1):
        rows, cols = mods[n - 1].dim, mods[n].dim
        pairs = [(left[n][a], left[n - 1][a]) for a in range(A.dim)]
        pairs += [(mods[n].action[b], mods[n - 1].action[b]) for b in range(B.dim)]
        kills = [diffs[n - 1]] if n - 1 in diffs else []
        diffs[n] = random_intertwiner(rng, F, rows, cols, pairs, kills)
    return BimoduleComplex(A, Complex(B, lo, hi, mods, diffs), left)


def strict_instance(Y: BimoduleComplex, name: str) -> Instance:
    T = Y.complex
    alpha = tuple(GradedMap(T, T, 0, {n: Y.left_action(n, a) for n in T.degrees()})
                  for a in range(Y.algebra.dim))
    return Instance(T.field, Y.algebra, T.ring, T, alpha, None, name)


def _sizes(rng, F: Field, l: int, dim_a: int | None):
    cap = {1: 3, 2: 2}.get(l, 2) if dim_a is None else dim_a
    B = ground_field(F)
    if l == 1 and rng.random() < 0.25:
        B = dual_numbers(F)
    return cap, B


def gen_strict(rng, F: Field, l: int, dim_a: int | None = None) -> Generated:
    cap, B = _sizes(rng, F, l, dim_a)
    A, modules = _pick_algebra(rng, F, cap, twist=rng.random() < 0.3)
    Y = random_bimodule_complex(rng, A, modules, B, 0, l, {})
    return Generated(strict_instance(Y, "strict"), Y)


def _stalk(A: Algebra, B: Algebra, n: int, l: int) -> BimoduleComplex:
    """The regular left module tensor B, placed in degree n of 0..l."""
    F = A.field
    N = _right_piece(B, 1)
    zero = ModuleRep(0, tuple(Matrix.zeros(F, 0, 0) for _ in range(B.dim)))
    mods = {k: zero for k in range(l + 1)}
    left = {k: tuple(Matrix.zeros(F, 0, 0) for _ in range(A.dim)) for k in range(l + 1)}
    In, Ia = Matrix.identity(F, N.dim), Matrix.identity(F, A.dim)
    mods[n] = ModuleRep(A.dim * N.dim, tuple(Ia.kron(Rb) for Rb in N.action))
    left[n] = tuple(A.left_mult(a).kron(In) for a in range(A.dim))
    return BimoduleComplex(A, Complex(B, 0, l, mods, {}), left)


def _direct_sum_cone(Y: BimoduleComplex, P: ModuleRep, top: int):
    """T' = Y (+) (P -> P) in degrees top, top - 1; returns T', inclusion and projection blocks."""
    T = Y.complex
    F = T.field
    B = T.ring
    mods, diffs, inc, proj = {}, {}, {}, {}
    for n in T.degrees():
        extra = P.dim if n in (top, top - 1) else 0
        base = T.dim(n)
        acts = tuple(block_diag(F, [T.action(n, b)] + ([P.action[b]] if extra else [])) for b in range(B.dim))
        mods[n] = ModuleRep(base + extra, acts)
        inc[n] = Matrix.from_entries(F, base + extra, base, [((i, i), 1) for i in range(base)])
        proj[n] = inc[n].T
    for n in range(T.lo + 1, T.hi + 1):
        rows, cols = mods[n - 1].dim, mods[n].dim
        entries = [((i, j), v) for i, j, v in T.d(n).entries()]
        if n == top:
            bn, bm = T.dim(n - 1), T.dim(n)
            entries += [((bn + i, bm + i), 1) for i in range(P.dim)]
        diffs[n] = Matrix.from_entries(F, rows, cols, entries)
    return Complex(B, T.lo, T.hi, mods, diffs), inc, proj


def gen_conjugated(rng, F: Field, l: int, dim_a: int | None = None) -> Generated:
    cap, B = _sizes(rng, F, l, dim_a)
    A, modules = _pick_algebra(rng, F, cap, twist=rng.random() < 0.5)
    top = rng.randint(1, l)
    P = _right_piece(B, 1)
    budgets = {n: MAX_DIM - P.dim for n in (top, top - 1)}
    # the Toda condition is what makes the completion unconditional
    for _ in range(TODA_TRIES):
        Y = random_bimodule_complex(rng, A, modules, B, 0, l, budgets)
        if toda_condition(Y.complex):
            break
    else:
        Y = _stalk(A, B, rng.randint(0, l), l)
    T, inc, proj = _direct_sum_cone(Y, P, top)
    right = lambda n: [(T.action(n, b), T.action(n, b)) for b in range(B.dim)]  # noqa: E731
    # alpha'(a) = inc L_a proj + d H_a + H_a d with H_a random and B-linear
    alphas = []
    for a in range(A.dim):
        H = {n: random_intertwiner(rng, F, T.dim(n + 1), T.dim(n),
                                   [(T.action(n, b), T.action(n + 1, b)) for b in range(B.dim)])
             for n in T.degrees()}
        blocks = {}
        for n in T.degrees():
            M = inc[n] @ Y.left_action(n, a) @ proj[n]
            if n + 1 <= T.hi:
                M = M + T.d(n + 1) @ H[n]
            if n - 1 >= T.lo:
                M = M + H[n - 1] @ T.d(n)
            blocks[n] = M
        alphas.append(blocks)
    # a random B-linear automorphism in each degree
    U, Uinv = {}, {}
    for n in T.degrees():
        U[n] = Uinv[n] = Matrix.identity(F, T.dim(n))
        for _ in range(10):
            cand = random_intertwiner(rng, F, T.dim(n), T.dim(n), right(n))
            inv = inverse(cand)
            if inv is not None:
                U[n], Uinv[n] = cand, inv
                break
    diffs = {n: U[n - 1] @ T.d(n) @ Uinv[n] for n in range(T.lo + 1, T.hi + 1)}
    T2 = Complex(B, T.lo, T.hi, dict(T.modules), diffs)
    alpha = tuple(GradedMap(T2, T2, 0, {n: U[n] @ blk[n] @ Uinv[n] for n in T.degrees()}) for blk in alphas)
    return Generated(Instance(F, A, B, T2, alpha, None, "conjugated"), Y)


def gen_toda_break(rng, F: Field, l: int) -> Generated:
    """d = 0, e acts by 0 and m3(1, e) = s != 0 from T_0 to T_1: the arity 4 obstruction is -s."""
    l = max(l, 2)
    A = dual_numbers(F)
    B = ground_field(F)
    dims = {n: rng.randint(1, 2) for n in range(l + 1)}
    mods = {n: trivial_module(B, d) for n, d in dims.items()}
    T = Complex(B, 0, l, mods, {})
    one = GradedMap(T, T, 0, {n: Matrix.identity(F, dims[n]) for n in T.degrees()})
    eps = GradedMap(T, T, 0, {n: Matrix.zeros(F, dims[n], dims[n]) for n in T.degrees()})
    s = Matrix.zeros(F, dims[1], dims[0])
    while s.is_zero():
        s = Matrix.from_dense(F, [[F.random(rng) for _ in range(dims[0])] for _ in range(dims[1])])
    m3 = {(0, 1): {0: s}}
    return Generated(Instance(F, A, B, T, (one, eps), m3, "toda-break"), None, planted_N=4)


def paper_dual(F: Field | None = None) -> Generated:
    """A = k[e]/(e^2), T = (k --id--> k) in degrees 1, 0, alpha(1) = alpha(e) = id."""
    F = F or Field.rationals()
    A = dual_numbers(F)
    B = ground_field(F)
    T = Complex(B, 0, 1, {0: trivial_module(B, 1), 1: trivial_module(B, 1)}, {1: Matrix.identity(F, 1)})
    ident = T.identity()
    return Generated(Instance(F, A, B, T, (ident, ident), None, "paper-dual"))


def generate(preset: str, seed=0, l: int = 1, field: Field | None = None, dim_a: int | None = None) -> Generated:
    """Deterministic in (preset, seed, l, field, dim_a)."""
    F = field or Field.rationals()
    if preset not in PRESETS:
        raise ValueError(f"unknown preset {preset!r}; choose from {', '.join(PRESETS)}")
    if l < 1:
        raise ValueError("max degree must be at least 1")
    rng = _rng(preset, seed, l, F, dim_a or 0)
    if preset == "strict":
        return gen_strict(rng, F, l, dim_a)
    if preset == "conjugated":
        return gen_conjugated(rng, F, l, dim_a)
    if preset == "toda-break":
        return gen_toda_break(rng, F, l)
    return paper_dual(F)
