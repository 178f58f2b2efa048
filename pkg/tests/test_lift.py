import pytest
from hypothesis import given, settings, strategies as st

from conftest import GF7, Q, two_term
from shalift.algebra import dual_numbers
from shalift.complexes import GradedMap, commutator_with_d, nullhomotopy_solve
from shalift.errors import NoHomotopy, NotAHomotopyAction, TodaViolation, UnitNotHomotopicToIdentity
from shalift.generate import generate, paper_dual
from shalift.lift import (HomotopyActionInput, build_m2_m3, build_m4_special, complete_action, lift_action,
                          normalize_unit, obstruction, toda_condition, toda_degrees, unit_defect, validate_input)
from shalift.linalg import Matrix
from shalift.sha import check_sha_relations


def _scaled_identity(T, c):
    return GradedMap(T, T, 0, {n: Matrix.identity(T.field, T.dim(n), c) for n in T.degrees()})


def test_normalize_unit_fixes_alpha_one():
    T = two_term(Q, 1)
    A = dual_numbers(Q)
    inp = HomotopyActionInput(A, T, (_scaled_identity(T, 2), T.identity()))
    assert not unit_defect(inp).is_zero()
    out = normalize_unit(inp)
    assert unit_defect(out).is_zero()
    assert out.alpha[1] == inp.alpha[1]
    # the change is nullhomotopic
    assert nullhomotopy_solve(out.alpha[0] - inp.alpha[0]) is not None


def test_normalize_unit_is_identity_on_normalized_input():
    inp = paper_dual(Q).instance.action_input()
    assert normalize_unit(inp) is inp


def test_unit_not_homotopic_to_identity():
    T = two_term(Q, 0)
    A = dual_numbers(Q)
    inp = HomotopyActionInput(A, T, (_scaled_identity(T, 2), _scaled_identity(T, 0)))
    with pytest.raises(UnitNotHomotopicToIdentity):
        normalize_unit(inp)


def test_associator_not_nullhomotopic_raises_no_homotopy():
    # e acts by the identity on k (+) k[1] with zero differential: e e = 0 but alpha(e)^2 = id
    T = two_term(Q, 0)
    inp = HomotopyActionInput(dual_numbers(Q), T, (T.identity(), T.identity()))
    with pytest.raises(NoHomotopy) as err:
        build_m2_m3(inp)
    assert err.value.pair == (2, 2)


def test_non_chain_map_alpha_is_rejected():
    T = two_term(Q, 1)
    bad = GradedMap(T, T, 0, {0: Matrix.identity(Q, 1), 1: Matrix.zeros(Q, 1, 1)})
    inp = HomotopyActionInput(dual_numbers(Q), T, (T.identity(), bad))
    assert not validate_input(inp)
    with pytest.raises(NotAHomotopyAction):
        build_m2_m3(inp)


def test_paper_dual_canonical_m3():
    sha = build_m2_m3(paper_dual(Q).instance.action_input())
    assert sha.block(3, (1, 1), 0).to_dense() == [[1]]
    for tup in [(0, 0), (0, 1), (1, 0)]:
        assert sha.block(3, tup, 0).is_zero()
    full = complete_action(sha)
    assert check_sha_relations(full)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["strict", "conjugated"]), st.integers(0, 10 ** 4), st.integers(1, 3),
       st.sampled_from([Q, GF7]))
def test_completion_satisfies_relations_and_is_deterministic(preset, seed, l, F):
    inp = generate(preset, seed, l, F).instance.action_input()
    sha = lift_action(inp)
    assert check_sha_relations(sha, up_to=l + 3)
    assert lift_action(inp) == sha
    assert all(sha.M(n, j).is_zero() for n in range(l + 3, l + 5) for j in sha.base.degrees())


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["strict", "conjugated", "paper-dual"]), st.integers(0, 10 ** 4), st.sampled_from([Q, GF7]))
def test_special_m4_agrees_with_general(preset, seed, F):
    inp = normalize_unit(generate(preset, seed, 2, F).instance.action_input())
    base = build_m2_m3(inp)
    special = build_m4_special(base)
    general = complete_action(base)
    assert check_sha_relations(special, up_to=4)
    assert check_sha_relations(general, up_to=4)
    T = base.base
    for j in T.degrees():
        assert special.M(4, j) == general.M(4, j)
    # both solve the same equation, so their difference is a chain map per tuple
    A = base.algebra
    for a in range(A.dim):
        for b in range(A.dim):
            for c in range(A.dim):
                diff = GradedMap(T, T, 2, {j: special.block(4, (a, b, c), j) - general.block(4, (a, b, c), j)
                                           for j in T.degrees()})
                assert commutator_with_d(diff, 1).is_zero()


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("F", [Q, GF7])
def test_toda_break_raises_at_planted_arity(seed, F):
    g = generate("toda-break", seed, 2, F)
    with pytest.raises(TodaViolation) as err:
        lift_action(g.instance.action_input())
    assert err.value.N == g.planted_N == 4
    assert err.value.tuple == (1, 1, 2)
    obs = err.value.obstruction
    assert obs.degree == 1 and commutator_with_d(obs, -1).is_zero()
    assert nullhomotopy_solve(obs.scale(-1), (1, -1)) is None
    assert not toda_condition(g.instance.base)


def test_toda_condition_on_small_complexes():
    assert toda_condition(two_term(Q, 1))
    assert toda_degrees(two_term(Q, 0)) == [1]


def test_obstruction_degree():
    sha = build_m2_m3(paper_dual(Q).instance.action_input())
    c = obstruction(sha, 4, (0, 1, 1))
    assert c.degree == 1
