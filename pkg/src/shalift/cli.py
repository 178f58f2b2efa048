"""Command-line front end.

Exit codes: 0 success, 1 check or comparison failure, 2 input error,
3 obstruction to completing the action.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import algebra_validate, module_validate
from .bar import compare_lifts
from .complexes import complex_validate, nullhomotopy_solve
from .errors import (ComparisonFailed, InputError, NoHomotopy, NotAHomotopyAction, ShaliftError,
                     TodaViolation, UnitNotHomotopicToIdentity)
from .field import Field, FieldError
from .formats import (certificate_from_json, certificate_to_json, dump_json, instance_hash, instance_to_json,
                      load_json, read_certificate, read_instance)
from .generate import PRESETS, generate
from .lift import unit_defect, validate_input
from .pipeline import certificate_ok, strictify, verify_certificate

OK, FAILED, BAD_INPUT, TODA = 0, 1, 2, 3


def _say(msg: str) -> None:
    print(msg)


def _report_line(name: str, passed: bool, message: str = "") -> str:
    return f"{'PASS' if passed else 'FAIL'}  {name}" + (f": {message}" if message else "")


def cmd_check(path: str, verbose: bool = False) -> int:
    inst = read_instance(path)
    reps = [algebra_validate(inst.algebra), algebra_validate(inst.ring)]
    T = inst.base
    for n in T.degrees():
        rep = module_validate(T.module(n), inst.ring)
        rep.name = f"module T_{n}"
        reps.append(rep)
    reps.append(complex_validate(T))
    reps.append(validate_input(inst.action_input()))
    D = unit_defect(inst.action_input())
    unital = D.is_zero() or nullhomotopy_solve(D) is not None
    for r in reps:
        if verbose or not r:
            _say(_report_line(r.name, r.passed, r.message))
    if verbose or not unital:
        _say(_report_line("unit", unital, "alpha(1) is homotopic to the identity" if unital
                          else "alpha(1) is not homotopic to the identity"))
    ok = all(reps) and unital
    _say("instance ok" if ok else "instance invalid")
    return OK if ok else FAILED


def _dump_obstruction(exc: TodaViolation) -> None:
    _say(f"obstruction to m_{exc.N} on basis tuple {exc.tuple}")
    c = exc.obstruction
    if c is not None:
        for j in c.source.degrees():
            M = c.block(j)
            if not M.is_zero():
                _say(f"  degree {j} -> {j + c.degree}: {json.dumps([[c.source.field.format(v) for v in r] for r in M.to_dense()])}")


def cmd_strictify(path: str, out: str | None, builder: str = "general", verbose: bool = False) -> int:
    inst = read_instance(path)
    try:
        cert = strictify(inst.action_input(), builder, instance_hash(inst))
    except TodaViolation as exc:
        _say(str(exc))
        _dump_obstruction(exc)
        return TODA
    except (NoHomotopy, UnitNotHomotopicToIdentity, NotAHomotopyAction) as exc:
        _say(f"not a homotopy action: {exc}")
        return FAILED
    except ValueError as exc:
        _say(str(exc))
        return FAILED
    data = certificate_to_json(cert)
    if out:
        dump_json(data, out)
    summary = data["summary"]
    _say(f"X dims {summary['X_dims']}")
    _say(f"H(X) {summary['H_X']}  H(T) {summary['H_T']}")
    for c in cert.checks:
        if verbose or not c["pass"]:
            _say(_report_line(c["name"], c["pass"], c["detail"]))
    ok = certificate_ok(cert)
    _say("all checks pass" if ok else "some checks fail")
    return OK if ok else FAILED


def cmd_verify(cert_path: str, inst_path: str, verbose: bool = False) -> int:
    inst = read_instance(inst_path)
    raw = load_json(cert_path)
    cert = certificate_from_json(raw)
    if cert.instance_hash != instance_hash(inst):
        _say("instance hash mismatch")
        return BAD_INPUT
    reps = verify_certificate(cert, inst.action_input())
    for r in reps:
        if verbose or not r:
            _say(_report_line(r.name, r.passed, r.message))
    ok = all(reps)
    _say("certificate verified" if ok else "certificate rejected")
    return OK if ok else FAILED


def cmd_gen(preset: str, seed: str, max_degree: int, field: Field, out: str | None) -> int:
    g = generate(preset, seed, max_degree, field)
    text = json.dumps(instance_to_json(g.instance), indent=1, sort_keys=True) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_compare(path_a: str, path_b: str, verbose: bool = False) -> int:
    a, b = read_certificate(path_a), read_certificate(path_b)
    try:
        cmp = compare_lifts(a.lift(), b.lift())
    except ComparisonFailed as exc:
        _say(f"comparison failed: {exc}")
        return FAILED
    if cmp.identity_shortcut:
        _say("identical lifts: g = id, all homotopies zero")
    else:
        _say("found g : X -> X' with g phi homotopic to phi', compatible with A up to homotopy")
        if verbose:
            for n in cmp.g.source.degrees():
                _say(f"  g_{n} = {cmp.g.block(n).to_dense()}")
    return OK


def _field(name: str) -> Field:
    try:
        return Field.from_name(name)
    except FieldError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shalift", description="Strictify homotopy actions of finite-dimensional algebras.")
    p.add_argument("--verbose", "-v", action="store_true", help="print every check, not only failures")
    # also accepted after the subcommand; SUPPRESS keeps a global -v from being reset
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="validate an instance file")
    s.add_argument("instance")

    s = sub.add_parser("strictify", parents=[common], help="lift, strictify and write a certificate")
    s.add_argument("instance")
    s.add_argument("--out")
    s.add_argument("--builder", choices=("general", "special"), default="general")

    s = sub.add_parser("verify", parents=[common], help="replay a certificate against its instance")
    s.add_argument("certificate")
    s.add_argument("instance")

    s = sub.add_parser("gen", parents=[common], help="generate an instance")
    s.add_argument("--preset", choices=PRESETS, required=True)
    s.add_argument("--seed", default="0")
    s.add_argument("--max-degree", type=int, default=1)
    s.add_argument("--field", type=_field, default=Field.rationals())
    s.add_argument("--out")

    s = sub.add_parser("compare", parents=[common], help="compare the lifts of two certificates")
    s.add_argument("first")
    s.add_argument("second")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    v = args.verbose
    try:
        if args.command == "check":
            return cmd_check(args.instance, v)
        if args.command == "strictify":
            return cmd_strictify(args.instance, args.out, args.builder, v)
        if args.command == "verify":
            return cmd_verify(args.certificate, args.instance, v)
        if args.command == "gen":
            if args.max_degree < 1:
                _say("--max-degree must be at least 1")
                return BAD_INPUT
            return cmd_gen(args.preset, args.seed, args.max_degree, args.field, args.out)
        return cmd_compare(args.first, args.second, v)
    except (InputError, FieldError) as exc:
        _say(f"input error: {exc}")
        return BAD_INPUT
    except ShaliftError as exc:
        _say(f"error: {exc}")
        return FAILED


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
