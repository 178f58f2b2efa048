"""From a homotopy action to a strong homotopy action.

The completion step for arity N solves, one basis tuple at a time,

    d H + (-1)^(N-1) H d = -c_N,

where c_N is the arity-N relation with the two m_N terms removed.  For N = 3
this is the associator equation for m_3; for N >= 4 it is the inductive step
producing m_N.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ._parallel import pmap
from .algebra import Algebra, Report, tuples
from .complexes import (Complex, GradedMap, chain_map_validate, commutator_with_d, hom_homology_dim,
                        nullhomotopy_solve)
from .errors import (InternalSignError, NoHomotopy, NotAHomotopyAction, TodaViolation,
                     UnitNotHomotopicToIdentity)
from .linalg import Matrix, hstack
from .sha import StrongHomotopyAction, check_sha_relations, relation_residual, slice_tuple


@dataclass(frozen=True)
class HomotopyActionInput:
    """A chain map alpha(e_a) : T -> T for each basis element of A.

    ``m3`` optionally fixes m_3 (per-tuple blocks ``{tuple: {j: Matrix}}``)
    instead of solving for it.
    """

    algebra: Algebra
    base: Complex
    alpha: tuple  # GradedMap per basis element
    m3: dict | None = None

    @property
    def field(self):
        return self.base.field

    def alpha_of(self, x: dict) -> GradedMap:
        """alpha of the algebra element with coefficients x."""
        T = self.base
        blocks = {j: Matrix.zeros(self.field, T.dim(j), T.dim(j)) for j in T.degrees()}
        for a, c in x.items():
            for j in T.degrees():
                blocks[j] = blocks[j] + self.alpha[a].block(j).scale(c)
        return GradedMap(T, T, 0, blocks)


def validate_input(inp: HomotopyActionInput) -> Report:
    if len(inp.alpha) != inp.algebra.dim:
        return Report("action", False, f"expected {inp.algebra.dim} action maps, got {len(inp.alpha)}")
    for a, f in enumerate(inp.alpha):
        rep = chain_map_validate(f)
        if not rep:
            return Report("action", False, f"alpha(e_{a + 1}): {rep.message}", location=(a + 1,) + (rep.location or ()),
                          residual=rep.residual)
    return Report("action", True, "every alpha(e_a) is a B-linear chain map")


def toda_degrees(T: Complex) -> list[int]:
    """Degrees e >= 1 with a non-nullhomotopic B-linear chain map T -> T raising degree by e.

    Empty exactly when the Toda condition holds; every obstruction c_N is a
    chain map of degree N - 3, so completion can only fail in these degrees.
    """
    return [e for e in range(1, T.hi - T.lo + 1) if hom_homology_dim(T, T, e)]


def toda_condition(T: Complex) -> bool:
    return not toda_degrees(T)


def unit_defect(inp: HomotopyActionInput) -> GradedMap:
    """alpha(1) - id."""
    return inp.alpha_of(inp.algebra.unit) - inp.base.identity()


def normalize_unit(inp: HomotopyActionInput) -> HomotopyActionInput:
    """Make alpha(1) = id exactly.

    The algebra basis is kept.  With r the first index where the unit has a
    nonzero coordinate u_r, alpha(e_r) is replaced by
    alpha(e_r) - (alpha(1) - id) / u_r, which changes it by a nullhomotopic map.
    """
    D = unit_defect(inp)
    if D.is_zero():
        return inp
    if nullhomotopy_solve(D) is None:
        raise UnitNotHomotopicToIdentity(D)
    F = inp.field
    u = inp.algebra.unit
    r = min(u)
    alpha = list(inp.alpha)
    alpha[r] = alpha[r] - D.scale(F.inv(u[r]))
    return replace(inp, alpha=tuple(alpha))


def action_from_input(inp: HomotopyActionInput) -> StrongHomotopyAction:
    """m_1 = d and m_2(e_a, -) = alpha(e_a)."""
    T, F = inp.base, inp.field
    sha = StrongHomotopyAction(inp.algebra, T)
    for j in T.degrees():
        sha.set_stacked(2, j, hstack(F, T.dim(j), [f.block(j) for f in inp.alpha]))
    return sha


def obstruction(sha: StrongHomotopyAction, N: int, tup) -> GradedMap:
    """c_N restricted to one basis tuple, as a graded map T -> T of degree N - 3."""
    T = sha.base
    blocks = {j: slice_tuple(relation_residual(sha, N, j, skip_top=True), sha.algebra, tup, T.dim(j))
              for j in T.degrees()}
    return GradedMap(T, T, N - 3, blocks)


def _obstructions(sha: StrongHomotopyAction, N: int) -> list:
    """c_N for all tuples (lexicographic), computing each stacked residual once."""
    T, A = sha.base, sha.algebra
    stacked = {j: relation_residual(sha, N, j, skip_top=True) for j in T.degrees()}
    out = []
    for tup in tuples(A.dim, N - 1):
        out.append((tup, GradedMap(T, T, N - 3, {j: slice_tuple(stacked[j], A, tup, T.dim(j))
                                                 for j in T.degrees()})))
    return out


def completion_step(sha: StrongHomotopyAction, N: int, name_pair: bool = False) -> StrongHomotopyAction:
    """Install the canonical m_N (only the check when N > l + 2); needs the relations of arity < N."""
    T, F = sha.base, sha.field
    sign = -1 if (N - 1) % 2 else 1
    obs = _obstructions(sha, N)
    for tup, c in obs:
        comm = commutator_with_d(c, sign)
        if not comm.is_zero():
            raise InternalSignError(f"c_{N} on tuple {tuple(t + 1 for t in tup)} is not a chain map")

    def solve_one(item):
        tup, c = item
        if c.is_zero():
            return tup, GradedMap(T, T, N - 2, {})
        return tup, nullhomotopy_solve(c.scale(-1), (1, sign))

    solved = pmap(solve_one, obs)
    out = sha.copy()
    parts: dict = {j: [] for j in T.degrees()}
    for (tup, H), (_, c) in zip(solved, obs):
        if H is None:
            loc = tuple(t + 1 for t in tup)
            if name_pair:
                raise NoHomotopy(*loc, defect=c)
            raise TodaViolation(N, loc, c)
        for j in T.degrees():
            parts[j].append(H.block(j))
    if N <= sha.top:
        for j in T.degrees():
            out.set_stacked(N, j, hstack(F, T.dim(j + N - 2), parts[j]))
    return out


def build_m2_m3(inp: HomotopyActionInput) -> StrongHomotopyAction:
    """m_2 from alpha and m_3 as the canonical solution of the associator equation.

    m_2(ab, x) - m_2(a, m_2(b, x)) = -m_3(a, b, d x) - d m_3(a, b, x).
    """
    rep = validate_input(inp)
    if not rep:
        raise NotAHomotopyAction(rep.message)
    sha = action_from_input(inp)
    if inp.m3 is not None:
        given = StrongHomotopyAction.from_blocks(inp.algebra, inp.base, {3: inp.m3})
        for j, M in given.m.get(3, {}).items():
            sha.set_stacked(3, j, M)
        rep = check_sha_relations(sha, up_to=3)
        if not rep:
            raise NotAHomotopyAction(f"supplied m3: {rep.message}")
        return sha
    return completion_step(sha, 3, name_pair=True)


def complete_action(sha: StrongHomotopyAction) -> StrongHomotopyAction:
    """Complete m_1, m_2, m_3 to a strong homotopy action (m_N for N = 4..l+2).

    The step N = l+3 installs nothing, since m_{l+3} vanishes for degree
    reasons, but its obstruction must then vanish exactly; otherwise the
    failure is reported as a TodaViolation like any other unsolvable step.
    """
    rep = check_sha_relations(sha, up_to=3)
    if not rep:
        raise NotAHomotopyAction(rep.message)
    out = sha
    for N in range(4, sha.top + 2):
        out = completion_step(out, N)
    rep = check_sha_relations(out)
    if not rep:
        raise InternalSignError(f"completed action fails: {rep.message}")
    return out


def lift_action(inp: HomotopyActionInput) -> StrongHomotopyAction:
    """normalize_unit, build_m2_m3 and complete_action in sequence."""
    return complete_action(build_m2_m3(normalize_unit(inp)))


def build_m4_special(sha: StrongHomotopyAction) -> StrongHomotopyAction:
    """m_4 for T in degrees 0..2, from the explicit four-term obstruction

    c(a,b,c,x) = m3(ab,c,x) - m3(a,bc,x) + m3(a,b,m2(c,x)) - m2(a,m3(b,c,x)),

    solving c = m4(a,b,c,d x) - d m4(a,b,c,x) for each basis triple.
    """
    T, A, F = sha.base, sha.algebra, sha.field
    if T.lo < 0 or T.hi > 2:
        raise ValueError("build_m4_special needs T in degrees 0..2")
    out = sha.copy()
    n = A.dim
    parts: dict = {j: [] for j in T.degrees()}

    def m3_of(x: dict, c: int, j: int) -> Matrix:
        acc = Matrix.zeros(F, T.dim(j + 1), T.dim(j))
        for k, v in x.items():
            acc = acc + sha.block(3, (k, c), j).scale(v)
        return acc

    def m3_right(a: int, x: dict, j: int) -> Matrix:
        acc = Matrix.zeros(F, T.dim(j + 1), T.dim(j))
        for k, v in x.items():
            acc = acc + sha.block(3, (a, k), j).scale(v)
        return acc

    for a in range(n):
        for b in range(n):
            for c in range(n):
                blocks = {}
                for j in T.degrees():
                    t1 = m3_of(A.mul[a][b], c, j)
                    t2 = m3_right(a, A.mul[b][c], j)
                    t3 = sha.block(3, (a, b), j) @ sha.block(2, (c,), j)
                    t4 = sha.block(2, (a,), j + 1) @ sha.block(3, (b, c), j)
                    blocks[j] = t1 - t2 + t3 - t4
                cmap = GradedMap(T, T, 1, blocks)
                if not commutator_with_d(cmap, -1).is_zero():
                    raise InternalSignError(f"c on ({a + 1},{b + 1},{c + 1}) is not a chain map")
                H = nullhomotopy_solve(cmap, "m4")
                if H is None:
                    raise TodaViolation(4, (a + 1, b + 1, c + 1), cmap)
                for j in T.degrees():
                    parts[j].append(H.block(j))
    for j in T.degrees():
        out.set_stacked(4, j, hstack(F, T.dim(j + 2), parts[j]))
    return out
