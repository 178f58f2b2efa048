"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

The lines are printed as the tests run (visible with ``-s``) and repeated in
the terminal summary.  Instances come from the generator with fixed seeds, so
every run checks the same corpus.
"""

import copy
import json
import random

import pytest

from conftest import GF7, Q, oracle_homology_dims, record_acceptance, two_term
from shalift.algebra import dual_numbers
from shalift.bar import (build_bar_bimodule, compare_lifts, h_unitality_check, hochschild_check, lift_from_bimodule,
                         shared_window_agreement, special_complex_deg01, special_complex_deg012)
from shalift.cli import main
from shalift.complexes import complex_validate, homology_dims, is_quasi_iso
from shalift.errors import InternalSignError, TodaViolation
from shalift.formats import certificate_to_json, dump_json, instance_hash, instance_to_json
from shalift.generate import generate
from shalift.lift import lift_action
from shalift.linalg import Matrix
from shalift.pipeline import certificate_ok, coherence_report, strictify
from shalift.sha import (CoderivationView, StrongHomotopyAction, check_b_squared, check_sha_relations,
                         hom_inf_differential, random_family)

PER_PRESET = 100
FIELDS = (Q, GF7)


def _corpus_spec(preset):
    """(seed, l, field) for the fixed corpus of a preset: l cycles 1, 2, 3, fields alternate."""
    return [(s, 1 + s % 3, FIELDS[(s // 3) % 2]) for s in range(PER_PRESET)]


@pytest.fixture(scope="module")
def corpus():
    """Generated instances with their certificates, or the exception raised."""
    out = []
    for preset in ("strict", "conjugated"):
        for seed, l, F in _corpus_spec(preset):
            g = generate(preset, seed, l, F)
            try:
                cert = strictify(g.instance.action_input(), instance_hash=instance_hash(g.instance))
                err = None
            except Exception as exc:  # reported per criterion
                cert, err = None, exc
            out.append((preset, seed, l, F, g, cert, err))
    return out


def _report(n, ok, detail):
    record_acceptance(n, ok, detail)
    assert ok, detail


def test_criterion_01_relations(corpus):
    counts, bad = {}, []
    for preset, seed, l, F, g, cert, err in corpus:
        counts[preset] = counts.get(preset, 0) + 1
        if err is not None or not check_sha_relations(cert.sha, up_to=l + 3):
            bad.append((preset, seed, l, F.name, type(err).__name__ if err else "residual"))
    ok = not bad and all(c >= 100 for c in counts.values())
    _report(1, ok, f"relations exact for n <= l+3 on {counts}; failures {bad[:5]}")


def test_criterion_02_square_zero(corpus):
    bad, fams = [], 0
    rng = random.Random(2)
    for preset, seed, l, F, g, cert, err in corpus:
        if err is not None:
            bad.append((preset, seed, "no certificate"))
            continue
        window = build_bar_bimodule(cert.sha)
        if not complex_validate(window.complex) or not complex_validate(cert.X.complex):
            bad.append((preset, seed, "window or X"))
        if seed % 4 == 0:
            fam = random_family(rng, cert.sha, cert.sha, rng.choice([-1, 0, 1]))
            dd = hom_inf_differential(hom_inf_differential(fam))
            fams += 1
            if not all(M.is_zero() for blocks in dd.f.values() for M in blocks.values()):
                bad.append((preset, seed, "Hom_inf"))
    for F in FIELDS:
        # the coalgebra part alone, on a longer window
        sha = lift_action(generate("paper-dual", 0, 1, F).instance.action_input())
        if not complex_validate(build_bar_bimodule(sha, top=4).complex):
            bad.append(("paper-dual", F.name, "window 4"))
    _report(2, not bad, f"{len(corpus)} windows and X, {fams} Hom_inf families; failures {bad[:5]}")


def _corrupt(sha, rng):
    sites = list(sha.nonempty())
    n, j = rng.choice(sites)
    M = sha.M(n, j)
    r, c = rng.randrange(M.nrows), rng.randrange(M.ncols)
    bad = sha.copy()
    F = sha.field
    bad.set_stacked(n, j, M.with_entry(r, c, F.reduce(M[r, c] + rng.randint(1, (F.p or 3) - 1))))
    return bad


def test_criterion_03_coherence(corpus):
    rng = random.Random(3)
    bad, failing = [], 0
    shas = [cert.sha for *_, cert, err in corpus if err is None]
    for sha in shas:
        if not coherence_report(sha):
            bad.append("clean")
    for k in range(50):
        broken = _corrupt(rng.choice(shas), rng)
        rel = check_sha_relations(broken)
        bsq = check_b_squared(CoderivationView.of_action(broken))
        failing += not rel.passed
        if (rel.passed, rel.location, rel.residual) != (bsq.passed, bsq.location, bsq.residual):
            bad.append(("corrupted", k))
    _report(3, not bad, f"{len(shas)} clean and 50 corrupted actions ({failing} break a relation); "
                        f"disagreements {bad[:5]}")


def test_criterion_04_quasi_iso(corpus):
    bad = []
    for preset, seed, l, F, g, cert, err in corpus:
        if err is not None:
            bad.append((preset, seed))
            continue
        checks = {c["name"]: c["pass"] for c in cert.checks}
        if not (is_quasi_iso(cert.phi) and checks["phi-quasi-iso"] and checks["f1f2"]):
            bad.append((preset, seed))
    _report(4, not bad, f"phi quasi-iso and f1f2 on {len(corpus)} runs; failures {bad[:5]}")


def test_criterion_05_special_builders():
    bad, counts = [], {1: 0, 2: 0}
    for l in (1, 2):
        for k in range(100):
            preset = ("strict", "conjugated")[k % 2]
            F = FIELDS[(k // 2) % 2]
            sha = lift_action(generate(preset, 1000 + k, l, F).instance.action_input())
            special = special_complex_deg01(sha) if l == 1 else special_complex_deg012(sha)
            counts[l] += 1
            if not shared_window_agreement(special, build_bar_bimodule(sha)):
                bad.append((l, preset, k))
        cert = strictify(generate("conjugated", 7, l, Q).instance.action_input(), builder="special")
        if not certificate_ok(cert):
            bad.append((l, "special certificate"))
    _report(5, not bad, f"special vs general windows on {counts}; failures {bad[:5]}")


def test_criterion_06_strict_round_trip(corpus):
    bad, n = [], 0
    for preset, seed, l, F, g, cert, err in corpus:
        if preset != "strict":
            continue
        n += 1
        Y = g.source
        try:
            compare_lifts(cert.lift(), lift_from_bimodule(Y))
        except Exception as exc:
            bad.append((seed, type(exc).__name__))
            continue
        HY = homology_dims(Y.complex)
        if homology_dims(cert.X.complex) != HY or HY != oracle_homology_dims(Y.complex):
            bad.append((seed, "homology"))
    _report(6, not bad and n >= 100, f"{n} strict round trips; failures {bad[:5]}")


def test_criterion_07_paper_dual():
    bad = []
    for F in FIELDS:
        g = generate("paper-dual", 0, 1, F)
        cert = strictify(g.instance.action_input())
        if cert.sha.block(3, (1, 1), 0).to_dense() != [[1]]:
            bad.append((F.name, "m3"))
        if cert.window_dims != [2, 6, 12]:
            bad.append((F.name, cert.window_dims))
        if not certificate_ok(cert):
            bad.append((F.name, "checks"))
    _report(7, not bad, f"m3(e,e) = [1], window dims (2, 6, 12), all checks pass; failures {bad}")


def test_criterion_08_obstructions(corpus):
    bad = []
    for k in range(30):
        g = generate("toda-break", k, 2 + k % 2, FIELDS[k % 2])
        try:
            lift_action(g.instance.action_input())
            bad.append((k, "completed"))
        except TodaViolation as exc:
            if exc.N != g.planted_N:
                bad.append((k, exc.N))
        except InternalSignError:
            bad.append((k, "InternalSignError"))
    toda = [(p, s) for p, s, *_, err in corpus if isinstance(err, TodaViolation)]
    _report(8, not bad and not toda, f"30 toda-break instances fail at the planted N; "
                                     f"{len(corpus)} strict/conjugated never do; failures {bad[:5]} {toda[:5]}")


def test_criterion_09_h_unitality(corpus):
    bad = []
    for preset, seed, l, F, g, cert, err in corpus:
        if err is not None or not h_unitality_check(cert.sha):
            bad.append((preset, seed))
    T = two_term(Q, 0)
    zero = StrongHomotopyAction(dual_numbers(Q), T)
    for j in T.degrees():
        zero.set_stacked(2, j, Matrix.zeros(Q, 1, 2))
    counter = check_sha_relations(zero).passed and not h_unitality_check(zero)
    hoch = 0
    for preset, seed, l, F, g, cert, err in corpus:
        if preset == "strict" and hoch < 50:
            hoch += 1
            if not hochschild_check(g.source):
                bad.append(("hochschild", seed))
    _report(9, not bad and counter and hoch >= 50,
            f"h-unital on {len(corpus)} outputs, counterexample rejected: {counter}, "
            f"{hoch} Hochschild checks; failures {bad[:5]}")


def _matrix_sites(d):
    """Paths to every scalar of the certificate's matrices (sha, X, phi, f2)."""
    sites = []

    def walk(x, path):
        if isinstance(x, dict):
            for k, v in x.items():
                walk(v, path + [k])
        elif isinstance(x, list):
            if x and all(isinstance(r, list) and all(isinstance(v, str) for v in r) for r in x):
                sites.extend(path + [i, j] for i, r in enumerate(x) for j in range(len(r)))
            else:
                for i, v in enumerate(x):
                    walk(v, path + [i])
    for key in ("sha", "X", "phi", "f2"):
        walk(d[key], [key])
    return sites


def test_criterion_10_tamper(tmp_path, capsys):
    rng = random.Random(10)
    total = caught = 0
    misses = []
    per_instance = 5
    for k in range(200 // per_instance):
        preset = rng.choice(["strict", "conjugated", "paper-dual"])
        F = FIELDS[k % 2]
        g = generate(preset, 500 + k, rng.choice([1, 2]), F)
        inst_path = tmp_path / f"inst{k}.json"
        dump_json(instance_to_json(g.instance), str(inst_path))
        cert = strictify(g.instance.action_input(), instance_hash=instance_hash(g.instance))
        data = certificate_to_json(cert)
        sites = _matrix_sites(data)
        for t in range(per_instance):
            site = rng.choice(sites)
            mutated = copy.deepcopy(data)
            node = mutated
            for p in site[:-1]:
                node = node[p]
            old = F.parse(node[site[-1]])
            node[site[-1]] = F.format(F.reduce(old + (rng.randint(1, F.p - 1) if F.p else rng.choice([-1, 1, 2]))))
            cert_path = tmp_path / "tampered.json"
            cert_path.write_text(json.dumps(mutated))
            total += 1
            if main(["verify", str(cert_path), str(inst_path)]) != 0:
                caught += 1
            else:
                misses.append((preset, site))
    capsys.readouterr()
    _report(10, total == 200 and caught == total, f"{caught}/{total} single-entry tampers detected; misses {misses[:3]}")
