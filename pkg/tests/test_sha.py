import random

from hypothesis import given, settings, strategies as st

from conftest import GF7, Q
from shalift.algebra import dual_numbers
from shalift.generate import generate, paper_dual
from shalift.lift import lift_action
from shalift.pipeline import coherence_report
from shalift.sha import (CoderivationView, HomFamily, StrongHomotopyAction, check_b_squared, check_sha_morphism,
                         check_sha_nullhomotopy, check_sha_relations, coalgebra_differential, compose_blocks,
                         hom_inf_differential, identity_morphism, random_family)


def _dual_action(F=Q):
    return lift_action(paper_dual(F).instance.action_input())


def _corrupt(sha: StrongHomotopyAction, rng: random.Random) -> tuple[StrongHomotopyAction, tuple]:
    """Add a nonzero scalar to one entry of some m_n block."""
    sites = [(n, j) for n, j in sha.nonempty()]
    n, j = rng.choice(sites)
    M = sha.M(n, j)
    r, c = rng.randrange(M.nrows), rng.randrange(M.ncols)
    bad = sha.copy()
    F = sha.field
    delta = rng.randint(1, (F.p or 3) - 1)
    bad.set_stacked(n, j, M.with_entry(r, c, F.reduce(M[r, c] + delta)))
    return bad, (n, j)


def test_paper_dual_m3():
    sha = _dual_action()
    assert sha.block(3, (1, 1), 0).to_dense() == [[1]]
    assert sha.block(3, (0, 0), 0).to_dense() == [[0]]
    assert check_sha_relations(sha)


def test_perturbed_m3_fails_at_arity_three():
    sha = _dual_action()
    M = sha.M(3, 0)
    bad = sha.copy()
    bad.set_stacked(3, 0, M.with_entry(0, 3, M[0, 3] + 1))
    rel = check_sha_relations(bad)
    bsq = check_b_squared(CoderivationView.of_action(bad))
    assert not rel and rel.location[0] == 3
    assert not bsq and bsq.location == rel.location
    assert bsq.residual == rel.residual


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["strict", "conjugated", "paper-dual"]), st.integers(0, 10 ** 4), st.integers(1, 2),
       st.sampled_from([Q, GF7]))
def test_relations_and_coderivation_agree(preset, seed, l, F):
    sha = lift_action(generate(preset, seed, l, F).instance.action_input())
    assert check_sha_relations(sha)
    assert coherence_report(sha)
    bad, _ = _corrupt(sha, random.Random(seed))
    assert coherence_report(bad)


def test_coalgebra_differential_squares_to_zero():
    for F in (Q, GF7):
        A = dual_numbers(F)
        b = coalgebra_differential(A, 4)
        sq = compose_blocks(b, b)
        assert all(M.is_zero() for M in sq.values())


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 4), st.integers(-1, 1), st.sampled_from([Q, GF7]))
def test_hom_inf_differential_squares_to_zero(seed, p, F):
    rng = random.Random(seed)
    g = generate(rng.choice(["strict", "conjugated", "paper-dual"]), seed, rng.choice([1, 2]), F)
    L = lift_action(g.instance.action_input())
    fam = random_family(rng, L, L, p)
    dd = hom_inf_differential(hom_inf_differential(fam))
    assert all(M.is_zero() for blocks in dd.f.values() for M in blocks.values())


def test_identity_morphism_passes():
    sha = _dual_action()
    assert check_sha_morphism(identity_morphism(sha))


def test_non_chain_map_fails_at_arity_one():
    sha = _dual_action()
    fam = identity_morphism(sha)
    fam.f[1][0] = fam.f[1][0].scale(2)  # f_1 no longer commutes with d
    rep = check_sha_morphism(fam)
    assert not rep and rep.location[0] == 1
    assert not rep.details[0].passed


def test_boundary_family_is_nullhomotopic():
    rng = random.Random(3)
    sha = _dual_action()
    h = random_family(rng, sha, sha, -1)
    f = hom_inf_differential(h)
    assert check_sha_nullhomotopy(f, h)
    assert check_sha_morphism(f)


def test_family_shapes():
    sha = _dual_action()
    fam = HomFamily(sha, sha, 0)
    assert fam.bound == 2
    assert fam.shape(2, 0) == (1, 2)
    assert fam.component(2, 0).is_zero()
