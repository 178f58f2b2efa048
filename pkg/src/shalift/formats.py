"""Versioned JSON formats for instances and certificates.

Matrices are row-major lists of scalar strings; their shapes are implied by
the surrounding dimensions and checked on reading.  Basis tuples are keyed
by 1-based strings ``"i1,i2,..."``.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .algebra import Algebra, ModuleRep, tuples
from .bar import BimoduleComplex, Certificate
from .complexes import Complex, GradedMap
from .errors import InputError
from .field import Field, FieldError
from .lift import HomotopyActionInput
from .linalg import Matrix
from .sha import StrongHomotopyAction

INSTANCE_FORMAT = "shalift-instance"
CERTIFICATE_FORMAT = "shalift-certificate"
VERSION = 1


@dataclass(frozen=True)
class Instance:
    """Input data: algebras A and B, the complex T of B-modules and the lift alpha."""

    field: Field
    algebra: Algebra
    ring: Algebra
    base: Complex
    alpha: tuple  # GradedMap T -> T per A-basis element
    m3: dict | None = None
    name: str = ""

    def action_input(self) -> HomotopyActionInput:
        return HomotopyActionInput(self.algebra, self.base, self.alpha, self.m3)


# matrices ------------------------------------------------------------------


def matrix_to_json(M: Matrix) -> list:
    f = M.field.format
    return [[f(v) for v in row] for row in M.to_dense()]


def matrix_from_json(field: Field, data, rows: int, cols: int, what: str = "matrix") -> Matrix:
    if not isinstance(data, list) or len(data) != rows:
        raise InputError(f"{what}: expected {rows} rows")
    parsed = []
    for r in data:
        if not isinstance(r, list) or len(r) != cols:
            raise InputError(f"{what}: expected rows of length {cols}")
        try:
            parsed.append([field.parse(s) for s in r])
        except FieldError as exc:
            raise InputError(f"{what}: {exc}") from None
    return Matrix.from_dense(field, parsed, rows, cols)


def _key(tup) -> str:
    return ",".join(str(t + 1) for t in tup)


def _parse_key(key: str, length: int, dim: int) -> tuple:
    if length == 0:
        if key != "":
            raise InputError(f"bad basis tuple key {key!r}")
        return ()
    try:
        tup = tuple(int(x) - 1 for x in key.split(","))
    except ValueError:
        raise InputError(f"bad basis tuple key {key!r}") from None
    if len(tup) != length or any(not 0 <= t < dim for t in tup):
        raise InputError(f"bad basis tuple key {key!r}")
    return tup


def _int(data: dict, key: str, what: str) -> int:
    v = data.get(key)
    if not isinstance(v, int) or isinstance(v, bool):
        raise InputError(f"{what}: {key} must be an integer")
    return v


# algebras and complexes -------------------------------------------------------


def algebra_to_json(A: Algebra) -> dict:
    return A.to_json()


def algebra_from_json(field: Field, data) -> Algebra:
    if not isinstance(data, dict):
        raise InputError("algebra must be an object")
    try:
        return Algebra.from_json(field, data)
    except FieldError as exc:
        raise InputError(f"algebra: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"algebra: {exc}") from None


def complex_to_json(C: Complex, left: dict | None = None, algebra_dim: int = 0) -> dict:
    comps = []
    for n in C.degrees():
        entry = {"degree": n, "dim": C.dim(n),
                 "action": [matrix_to_json(C.action(n, b)) for b in range(C.ring.dim)]}
        if left is not None:
            acts = left.get(n)
            entry["left"] = [matrix_to_json(acts[a]) if acts is not None
                             else matrix_to_json(Matrix.zeros(C.field, C.dim(n), C.dim(n)))
                             for a in range(algebra_dim)]
        comps.append(entry)
    diffs = [{"degree": n, "matrix": matrix_to_json(C.d(n))} for n in range(C.lo + 1, C.hi + 1)]
    return {"lo": C.lo, "hi": C.hi, "components": comps, "differentials": diffs}


def complex_from_json(field: Field, ring: Algebra, data, algebra_dim: int | None = None):
    """Parse a complex; with ``algebra_dim`` also parse left actions."""
    if not isinstance(data, dict):
        raise InputError("complex must be an object")
    lo, hi = _int(data, "lo", "complex"), _int(data, "hi", "complex")
    if hi < lo:
        raise InputError("complex: hi < lo")
    comps = data.get("components")
    if not isinstance(comps, list):
        raise InputError("complex: components must be a list")
    mods, left = {}, {}
    for c in comps:
        if not isinstance(c, dict):
            raise InputError("complex: component must be an object")
        n, d = _int(c, "degree", "component"), _int(c, "dim", "component")
        if not lo <= n <= hi or d < 0 or n in mods:
            raise InputError(f"complex: bad component degree {n} or dim {d}")
        acts = c.get("action")
        if not isinstance(acts, list) or len(acts) != ring.dim:
            raise InputError(f"component {n}: expected {ring.dim} action matrices")
        mods[n] = ModuleRep(d, tuple(matrix_from_json(field, m, d, d, f"action in degree {n}") for m in acts))
        if algebra_dim is not None:
            la = c.get("left")
            if not isinstance(la, list) or len(la) != algebra_dim:
                raise InputError(f"component {n}: expected {algebra_dim} left action matrices")
            left[n] = tuple(matrix_from_json(field, m, d, d, f"left action in degree {n}") for m in la)
    for n in range(lo, hi + 1):
        if n not in mods:
            mods[n] = ModuleRep(0, tuple(Matrix.zeros(field, 0, 0) for _ in range(ring.dim)))
            left[n] = tuple(Matrix.zeros(field, 0, 0) for _ in range(algebra_dim or 0))
    diffs = {}
    dl = data.get("differentials", [])
    if not isinstance(dl, list):
        raise InputError("complex: differentials must be a list")
    for e in dl:
        if not isinstance(e, dict):
            raise InputError("complex: differential must be an object")
        n = _int(e, "degree", "differential")
        if not lo < n <= hi or n in diffs:
            raise InputError(f"complex: bad differential degree {n}")
        diffs[n] = matrix_from_json(field, e.get("matrix"), mods[n - 1].dim, mods[n].dim, f"d_{n}")
    C = Complex(ring, lo, hi, mods, diffs)
    if algebra_dim is None:
        return C
    return C, left


def graded_blocks_to_json(blocks: dict) -> list:
    return [{"degree": n, "matrix": matrix_to_json(M)} for n, M in sorted(blocks.items())]


def graded_blocks_from_json(field: Field, data, shape_of, what: str) -> dict:
    """``shape_of(n)`` gives the expected (rows, cols) of the block at degree n, or None."""
    if not isinstance(data, list):
        raise InputError(f"{what} must be a list of degree blocks")
    out = {}
    for e in data:
        if not isinstance(e, dict):
            raise InputError(f"{what}: block must be an object")
        n = _int(e, "degree", what)
        shape = shape_of(n)
        if shape is None or n in out:
            raise InputError(f"{what}: unexpected degree {n}")
        out[n] = matrix_from_json(field, e.get("matrix"), *shape, f"{what} degree {n}")
    return out


def sha_to_json(sha: StrongHomotopyAction) -> dict:
    """{"n": {"i1,..": [{"degree", "matrix"}]}} for n >= 2.

    Tuples whose higher operation (n >= 3) vanishes are omitted.
    """
    out = {}
    T = sha.base
    for n in range(2, sha.top + 1):
        per = {}
        for tup in tuples(sha.algebra.dim, n - 1):
            blocks = {j: sha.block(n, tup, j) for j in T.degrees()
                      if T.dim(j) and T.dim(j + n - 2)}
            if n >= 3 and all(M.is_zero() for M in blocks.values()):
                continue
            if blocks:
                per[_key(tup)] = graded_blocks_to_json(blocks)
        if per:
            out[str(n)] = per
    return out


def sha_blocks_from_json(field: Field, A: Algebra, T: Complex, data, arity: int | None = None) -> dict:
    """Per-tuple blocks {n: {tuple: {j: Matrix}}} (or just {tuple: ...} when arity is given)."""
    if not isinstance(data, dict):
        raise InputError("strong homotopy data must be an object")

    def parse_arity(n: int, per) -> dict:
        if not isinstance(per, dict):
            raise InputError(f"m_{n} must be an object keyed by basis tuples")
        out = {}
        for key, blocks in per.items():
            tup = _parse_key(key, n - 1, A.dim)
            shape = lambda j, n=n: (T.dim(j + n - 2), T.dim(j)) if j in T.degrees() else None  # noqa: E731
            out[tup] = graded_blocks_from_json(field, blocks, shape, f"m_{n}({key})")
        return out

    if arity is not None:
        return parse_arity(arity, data)
    result = {}
    for nk, per in data.items():
        try:
            n = int(nk)
        except ValueError:
            raise InputError(f"bad arity key {nk!r}") from None
        if n < 2:
            raise InputError("arities start at 2 (m_1 is the differential)")
        result[n] = parse_arity(n, per)
    return result


# instances ------------------------------------------------------------------------


def instance_to_json(inst: Instance) -> dict:
    T = inst.base
    out = {
        "format": INSTANCE_FORMAT,
        "version": VERSION,
        "name": inst.name,
        "field": inst.field.to_spec(),
        "algebra_A": algebra_to_json(inst.algebra),
        "algebra_B": algebra_to_json(inst.ring),
        "complex_T": complex_to_json(T),
        "action": [{"basis": a + 1, "blocks": graded_blocks_to_json({j: f.block(j) for j in T.degrees()})}
                   for a, f in enumerate(inst.alpha)],
    }
    if inst.m3 is not None:
        out["m3"] = {_key(t): graded_blocks_to_json(b) for t, b in sorted(inst.m3.items())}
    return out


def _check_header(data, fmt: str) -> None:
    if not isinstance(data, dict):
        raise InputError("top level must be a JSON object")
    if data.get("format") != fmt:
        raise InputError(f"not a {fmt} file")
    if data.get("version") != VERSION:
        raise InputError(f"unsupported version {data.get('version')!r}")


def instance_from_json(data) -> Instance:
    _check_header(data, INSTANCE_FORMAT)
    try:
        field = Field.from_spec(data.get("field") or {})
    except FieldError as exc:
        raise InputError(str(exc)) from None
    A = algebra_from_json(field, data.get("algebra_A"))
    B = algebra_from_json(field, data.get("algebra_B"))
    T = complex_from_json(field, B, data.get("complex_T"))
    acts = data.get("action")
    if not isinstance(acts, list) or len(acts) != A.dim:
        raise InputError(f"action: expected one entry per basis element of A ({A.dim})")
    alpha = [None] * A.dim
    for e in acts:
        if not isinstance(e, dict):
            raise InputError("action entry must be an object")
        a = _int(e, "basis", "action") - 1
        if not 0 <= a < A.dim or alpha[a] is not None:
            raise InputError(f"action: bad basis index {a + 1}")
        blocks = graded_blocks_from_json(field, e.get("blocks"),
                                         lambda j: (T.dim(j), T.dim(j)) if j in T.degrees() else None,
                                         f"alpha(e_{a + 1})")
        alpha[a] = GradedMap(T, T, 0, blocks)
    m3 = None
    if "m3" in data:
        m3 = sha_blocks_from_json(field, A, T, data["m3"], arity=3)
    return Instance(field, A, B, T, tuple(alpha), m3, str(data.get("name", "")))


def canonical_dumps(data) -> str:
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def instance_hash(inst: Instance) -> str:
    return hashlib.sha256(canonical_dumps(instance_to_json(inst)).encode()).hexdigest()


def load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def dump_json(data, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=1, sort_keys=True)
        fh.write("\n")


def read_instance(path: str) -> Instance:
    return instance_from_json(load_json(path))


# certificates -------------------------------------------------------------------------


def certificate_to_json(cert: Certificate) -> dict:
    A, T, X = cert.algebra, cert.base, cert.X
    field = T.field
    return {
        "format": CERTIFICATE_FORMAT,
        "version": VERSION,
        "instance_hash": cert.instance_hash,
        "builder": cert.builder,
        "field": field.to_spec(),
        "algebra_A": algebra_to_json(A),
        "algebra_B": algebra_to_json(T.ring),
        "complex_T": complex_to_json(T),
        "sha": sha_to_json(cert.sha),
        "X": complex_to_json(X.complex, X.left, A.dim),
        "phi": graded_blocks_to_json(cert.phi.blocks),
        "f2": graded_blocks_to_json(cert.f2),
        "window_dims": list(cert.window_dims),
        "checks": list(cert.checks),
        "notes": list(cert.notes),
        "summary": _jsonable(cert.summary()),
    }


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def certificate_from_json(data) -> Certificate:
    _check_header(data, CERTIFICATE_FORMAT)
    try:
        field = Field.from_spec(data.get("field") or {})
    except FieldError as exc:
        raise InputError(str(exc)) from None
    A = algebra_from_json(field, data.get("algebra_A"))
    B = algebra_from_json(field, data.get("algebra_B"))
    T = complex_from_json(field, B, data.get("complex_T"))
    blocks = sha_blocks_from_json(field, A, T, data.get("sha", {}))
    sha = StrongHomotopyAction.from_blocks(A, T, blocks)
    XC, left = complex_from_json(field, B, data.get("X"), algebra_dim=A.dim)
    X = BimoduleComplex(A, XC, left)
    phi_blocks = graded_blocks_from_json(field, data.get("phi"),
                                         lambda j: (XC.dim(j), T.dim(j)) if j in T.degrees() else None, "phi")
    f2 = graded_blocks_from_json(field, data.get("f2"),
                                 lambda j: (XC.dim(j + 1), A.dim * T.dim(j)) if j in T.degrees() else None, "f2")
    builder = data.get("builder")
    if builder not in ("general", "special"):
        raise InputError(f"unknown builder {builder!r}")
    checks = data.get("checks", [])
    if not isinstance(checks, list):
        raise InputError("checks must be a list")
    return Certificate(str(data.get("instance_hash", "")), builder, A, T, sha, X,
                       GradedMap(T, XC, 0, phi_blocks), f2, list(data.get("window_dims", [])),
                       checks, list(data.get("notes", [])))


def read_certificate(path: str) -> Certificate:
    return certificate_from_json(load_json(path))
