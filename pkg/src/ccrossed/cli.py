"""Command line front end.

Exit codes: 0 when every check passes, 1 on a validation or construction
failure, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import structfile
from .actions import (
    SplitExtension, check_semidirect_iso, semidirect, validate_caction, validate_split_extension,
)
from .cgroup import CGroupHom, quotient_by_normal, quotient_by_relation, validate_cgroup
from .classical import (
    FIXTURE_KINDS, FixtureParams, find_xmod_isomorphism, gg_from_xmod, make_fixture,
    validate_crossed_module, validate_group_groupoid, xmod_from_gg,
)
from .crossed import classify_ccm, validate_ccm
from .kernels import build_cssc
from .monoidal import UniqueSpecialError, check_lemma_comm, validate_categorical_group
from .report import ConstructionError, StructureError, ValidationReport
from .setoid import pair_id

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(path: str, *kinds: str) -> structfile.StructureFile:
    try:
        sf = structfile.load(path)
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    except structfile.StructureFileError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if kinds and sf.kind not in kinds:
        raise UsageError(f"{path}: expected kind {' or '.join(kinds)}, file holds {sf.kind!r}")
    return sf


def _validate_value(kind: str, value, strict: bool = False) -> ValidationReport:
    if kind == "setoid":
        rep = ValidationReport("setoid")
        rep.add("setoid.partition", note=f"{len(value.blocks)} blocks")
        return rep
    if kind == "cgroup":
        return validate_cgroup(value)
    if kind == "catgroup":
        return validate_categorical_group(value)
    if kind == "xmod":
        return validate_crossed_module(value)
    if kind == "gg":
        return validate_group_groupoid(value)
    if kind == "ccm":
        return validate_ccm(value, "strict" if strict else "base")
    if kind == "extension":
        return validate_split_extension(value)
    if kind == "action":
        return validate_caction(value)
    raise UsageError(f"unknown kind {kind!r}")


def _write(value, path: str | None, out) -> None:
    text = structfile.dumps(value)
    if path is None or path == "-":
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _emit(reports: list[ValidationReport], args, out) -> int:
    passed = all(r.passed for r in reports)
    if args.json:
        doc = reports[0].to_dict() if len(reports) == 1 else {
            "passed": passed, "reports": [r.to_dict() for r in reports]}
        out.write(json.dumps(doc, indent=1) + "\n")
    else:
        for r in reports:
            out.write(r.format() + "\n")
    return EXIT_OK if passed else EXIT_FAIL


# ---------------------------------------------------------------- commands

def cmd_validate(args, out) -> int:
    sf = _load(args.file)
    if sf.kind != args.kind:
        raise UsageError(f"{args.file}: file holds {sf.kind!r}, not {args.kind!r}")
    return _emit([_validate_value(sf.kind, sf.value, args.strict)], args, out)


def cmd_classify(args, out) -> int:
    X = _load(args.file, "ccm").value
    cls = classify_ccm(X)
    rep = cls.report
    rep.add("class.cssc", passed=cls.cssc,
            note=f"connected={cls.connected} strict={cls.strict} special={cls.special}")
    return _emit([rep], args, out)


def cmd_fixture(args, out) -> int:
    normal = tuple(args.normal.split(",")) if args.normal else None
    params = FixtureParams(args.kind, args.group, args.coefficients, args.omega, normal)
    try:
        value = make_fixture(params)
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    _write(value, args.output, out)
    return EXIT_OK


def cmd_construct(args, out) -> int:
    what = args.what
    reports: list[ValidationReport] = []
    if what == "cssc":
        C = _load(args.file, "catgroup").value
        try:
            value, rep = build_cssc(C)
        except UniqueSpecialError as exc:
            rep = ValidationReport("cssc construction")
            rep.add("resolve.unique_special", (exc.source, exc.target, *exc.found), note=str(exc))
            return _emit([rep], args, sys.stderr if args.output in (None, "-") else out)
        reports.append(rep)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                json.dump(rep.to_dict(), fh, indent=1)
                fh.write("\n")
    elif what == "semidirect":
        act = _load(args.file, "action").value
        S, p, s = semidirect(act)
        i = CGroupHom(act.A, S, {a: pair_id(act.B.zero, a) for a in act.A.elements})
        value = SplitExtension(act.A, S, act.B, i, p, s)
        reports.append(validate_split_extension(value))
    elif what == "quotient":
        G = _load(args.file, "cgroup").value
        try:
            Q, _ = quotient_by_normal(G, args.normal.split(",")) if args.normal else quotient_by_relation(G)
        except ConstructionError as exc:
            raise UsageError(str(exc)) from None
        value = Q.as_cgroup()
        reports.append(validate_cgroup(value))
    elif what == "gg-from-xmod":
        value = gg_from_xmod(_load(args.file, "xmod").value)
        reports.append(validate_group_groupoid(value))
    elif what == "xmod-from-gg":
        value = xmod_from_gg(_load(args.file, "gg").value)
        reports.append(validate_crossed_module(value))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown construction {what!r}")
    if args.output not in (None, "-"):
        _write(value, args.output, out)
        return _emit(reports, args, out)
    _write(value, None, out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_check(args, out) -> int:
    if args.what == "lemma-comm":
        C = _load(args.file, "catgroup").value
        return _emit([check_lemma_comm(C, args.kernel, args.workers)], args, out)
    if args.what == "extension":
        X = _load(args.file, "extension").value
        base = validate_split_extension(X)
        if not base.passed:
            return _emit([base], args, out)
        try:
            iso = check_semidirect_iso(X)
        except ConstructionError as exc:
            iso = ValidationReport("semidirect comparison")
            iso.add("iso.induced_action", ("failed",), note=str(exc))
        return _emit([base, iso], args, out)
    if args.what == "roundtrip":
        sf = _load(args.file)
        rep = ValidationReport(f"roundtrip {args.file}")
        text = structfile.emit_structure(sf)
        again = structfile.emit_structure(structfile.parse_structure(text))
        rep.add("file.emit_parse", None if text == again else ("differs",))
        if sf.kind == "xmod":
            X = sf.value
            Y = xmod_from_gg(gg_from_xmod(X))
            rep.add("xmod.gg_roundtrip", None if find_xmod_isomorphism(X, Y) else ("no isomorphism",))
        elif sf.kind == "gg":
            X = xmod_from_gg(sf.value)
            Y = xmod_from_gg(gg_from_xmod(X))
            rep.add("gg.xmod_roundtrip", None if find_xmod_isomorphism(X, Y) else ("no isomorphism",))
        return _emit([rep], args, out)
    raise UsageError(f"unknown check {args.what!r}")  # pragma: no cover


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ccrossed", description="Finite c-groups, categorical groups "
                                     "and c-crossed modules as explicit tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="machine-readable report")

    p = sub.add_parser("validate", help="check the axioms of a structure file")
    p.add_argument("file")
    p.add_argument("--as", dest="kind", required=True, choices=structfile.KINDS)
    p.add_argument("--strict", action="store_true", help="c-crossed modules: demand exact conditions")
    add_json(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("construct", help="build a derived structure")
    p.add_argument("what", choices=("cssc", "semidirect", "quotient", "gg-from-xmod", "xmod-from-gg"))
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--normal", help="quotient: comma-separated normal c-subgroup")
    p.add_argument("--report", help="cssc: write the certification report here (JSON)")
    add_json(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="connected / strict / special for a c-crossed module")
    p.add_argument("file")
    add_json(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("fixture", help="emit a built-in fixture")
    p.add_argument("kind", choices=FIXTURE_KINDS)
    p.add_argument("--group", default="Z2")
    p.add_argument("--coefficients", default="Z2")
    p.add_argument("--omega", default="nontrivial", choices=("nontrivial", "zero"))
    p.add_argument("--normal", help="comma-separated subgroup elements")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("check", help="run a lemma or round-trip check")
    p.add_argument("what", choices=("lemma-comm", "extension", "roundtrip"))
    p.add_argument("file")
    p.add_argument("--kernel", default="special", choices=("special", "iso"))
    p.add_argument("--workers", type=int, default=None,
                   help="worker processes (default: $CCROSSED_WORKERS or 1)")
    add_json(p)
    p.set_defaults(func=cmd_check)
    return parser


def run_command(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"ccrossed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConstructionError, StructureError) as exc:
        print(f"ccrossed: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":  # pragma: no cover
    main()
