"""Shared fixtures and independent oracles.

The oracles go through sympy's DomainMatrix (over QQ or GF(p)) so that ranks
and solvability are never computed with the package's own elimination.
"""

from __future__ import annotations

import pytest
from sympy import GF, QQ
from sympy.polys.matrices import DomainMatrix

from shalift.algebra import dual_numbers, ground_field, trivial_module
from shalift.complexes import Complex
from shalift.field import Field
from shalift.linalg import Matrix

Q = Field.rationals()
GF7 = Field.prime(7)
GF2 = Field.prime(2)


def _domain(F: Field):
    return GF(F.p) if F.p else QQ


def to_domain(M: Matrix) -> DomainMatrix:
    K = _domain(M.field)
    conv = (lambda v: K(int(v))) if M.field.p else (lambda v: K(v.numerator, v.denominator))
    rows = [[conv(v) for v in r] for r in M.to_dense()]
    return DomainMatrix(rows, M.shape, K)


def oracle_rank(M: Matrix) -> int:
    if 0 in M.shape:
        return 0
    return to_domain(M).rank()


def oracle_homology_dims(C: Complex) -> dict:
    out = {}
    for n in C.degrees():
        dn = C.dim(n)
        out[n] = dn - oracle_rank(C.d(n)) - oracle_rank(C.d(n + 1))
    return out


def oracle_solvable(M: Matrix, b: list) -> bool:
    """M x = b has a solution iff rank M = rank [M | b]."""
    aug = Matrix.from_dense(M.field, [list(r) + [b[i]] for i, r in enumerate(M.to_dense())], M.nrows,
                            M.ncols + 1)
    return oracle_rank(M) == oracle_rank(aug)


def two_term(F: Field, d) -> Complex:
    """k --d--> k in degrees 1, 0 over B = k."""
    B = ground_field(F)
    return Complex(B, 0, 1, {0: trivial_module(B, 1), 1: trivial_module(B, 1)},
                   {1: Matrix.from_dense(F, [[d]])})


@pytest.fixture
def dual():
    return dual_numbers(Q)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(n: int, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {n:2d}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
