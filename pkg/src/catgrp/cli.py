"""Command line interface.

Exit codes: 0 all checks passed, 1 at least one check failed, 2 parse or
usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .core.catalog import BUILTINS, builtin
from .core.groups import check_action_by_automorphisms, check_group_action, is_homomorphism, validate_group
from .crossed_modules import check_crossed_module_total, image_normal_check, kernel_abelian_check
from .dsl import (
    ActionDecl,
    GroupDecl,
    HomDecl,
    InternalCatDecl,
    SpecDocument,
    SpecSyntaxError,
    XmodDecl,
    group_spec,
    parse_spec,
    serialize_spec,
)
from .equivalence import internal_to_xmod, roundtrip_internal, roundtrip_xmod, xmod_to_internal
from .errors import CatGrpError, ContractError
from .internal_categories import (
    check_cat_group_structure,
    check_internal_category,
    check_internal_digraph,
    is_internal_groupoid,
)
from .reports import CheckReport

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
JSON_VERSION = 1

_BUILTIN_NAMES = {"cyclic": "Z", "dihedral": "D", "symmetric": "S", "alternating": "A"}


def checks_for(decl) -> list[CheckReport]:
    """Every applicable check for one declaration, in a fixed order."""
    if isinstance(decl, GroupDecl):
        return [validate_group(decl.obj.table)]
    if isinstance(decl, HomDecl):
        return [is_homomorphism(decl.obj)]
    if isinstance(decl, ActionDecl):
        return [check_group_action(decl.obj), check_action_by_automorphisms(decl.obj)]
    if isinstance(decl, XmodDecl):
        report = check_crossed_module_total(decl.obj)
        if not report.passed:
            return [report]
        return [report, kernel_abelian_check(decl.obj), image_normal_check(decl.obj)]
    if isinstance(decl, InternalCatDecl):
        ic = decl.obj
        digraph = check_internal_digraph(ic.digraph)
        if not digraph.passed:
            return [digraph]
        category = check_internal_category(ic)
        reports = [digraph, category]
        if category.passed:
            reports.append(is_internal_groupoid(ic))
        reports.append(check_cat_group_structure(ic))
        return reports
    raise TypeError(f"unknown declaration {decl!r}")


def _print_reports(results: list[tuple[str, CheckReport]], as_json: bool, extra: Optional[dict] = None) -> None:
    if as_json:
        payload = {"version": JSON_VERSION, "results": [r.to_json(target) for target, r in results]}
        if extra:
            payload.update(extra)
        print(json.dumps(payload, indent=2, ensure_ascii=False))
        return
    for target, r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"{status}  {target}  {r.check_name}: {r.detail}"
        if r.witness is not None:
            line += f"  witness={list(r.witness)}"
        print(line)
    if extra:
        for key, value in extra.items():
            print(f"{key}: {value}")


def _load(path: str) -> SpecDocument:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return parse_spec(text)
    except SpecSyntaxError as exc:
        for d in exc.diagnostics:
            print(d.format(path), file=sys.stderr)
        raise


def cmd_check(args) -> int:
    doc = _load(args.file)
    results = [(decl.name, r) for decl in doc for r in checks_for(decl)]
    _print_reports(results, args.json)
    return EXIT_OK if all(r.passed for _, r in results) else EXIT_FAILED


def _decl_of_kind(doc: SpecDocument, name: str, kind: type):
    try:
        decl = doc.get(name)
    except KeyError:
        raise _UsageError(f"no declaration named {name!r}")
    if not isinstance(decl, kind):
        raise _UsageError(f"{name!r} is a {decl.kind}, expected a {kind.kind}")
    return decl


class _UsageError(Exception):
    pass


def cmd_construct(args) -> int:
    doc = _load(args.file)
    n = args.name
    out = SpecDocument()
    if args.direction == "xmod-to-internal":
        decl = _decl_of_kind(doc, n, XmodDecl)
        ic = xmod_to_internal(decl.obj, f"{n}_int")
        dg = ic.digraph
        out.add_group(f"{n}_A", dg.A)
        out.add_group(f"{n}_O", dg.O)
        out.add_hom(f"{n}_s", dg.s, f"{n}_A", f"{n}_O")
        out.add_hom(f"{n}_t", dg.t, f"{n}_A", f"{n}_O")
        out.add_hom(f"{n}_e", dg.e, f"{n}_O", f"{n}_A")
        out.add_internalcat(f"{n}_int", ic, f"{n}_A", f"{n}_O", f"{n}_s", f"{n}_t", f"{n}_e")
    else:
        decl = _decl_of_kind(doc, n, InternalCatDecl)
        xm = internal_to_xmod(decl.obj, f"{n}_xm")
        out.add_group(f"{n}_C", xm.C)
        out.add_group(f"{n}_G", xm.G)
        out.add_hom(f"{n}_boundary", xm.boundary, f"{n}_C", f"{n}_G")
        out.add_action(f"{n}_action", xm.action, f"{n}_G", f"{n}_C")
        out.add_xmod(f"{n}_xm", xm, f"{n}_C", f"{n}_G", f"{n}_boundary", f"{n}_action")
    text = serialize_spec(out)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    doc = _load(args.file)
    try:
        decl = doc.get(args.name)
    except KeyError:
        raise _UsageError(f"no declaration named {args.name!r}")
    if isinstance(decl, XmodDecl):
        iso, report = roundtrip_xmod(decl.obj)
        maps = {} if iso is None else {"alpha": [int(x) for x in iso.alpha.map], "beta": [int(x) for x in iso.beta.map]}
    elif isinstance(decl, InternalCatDecl):
        iso, report = roundtrip_internal(decl.obj)
        maps = {} if iso is None else {"arrow_iso": [int(x) for x in iso.arrow_iso.map],
                                       "object_iso": [int(x) for x in iso.object_iso.map]}
    else:
        raise _UsageError(f"{args.name!r} is a {decl.kind}; roundtrip needs an xmod or internalcat")
    _print_reports([(decl.name, report)], args.json, {"iso": maps} if args.json else maps)
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_builtin(args) -> int:
    G = builtin(args.kind, args.k)
    name = "Q8" if args.kind == "quaternion8" else f"{_BUILTIN_NAMES[args.kind]}{args.k}"
    sys.stdout.write(group_spec(name, G))
    return EXIT_OK


def cmd_suite(args) -> int:
    from .suite import run_suite

    results = run_suite()
    if args.json:
        payload = {"version": JSON_VERSION, "results": [
            {"target": "suite", "check": r.name, "passed": r.passed, "witness": None, "detail": r.detail}
            for r in results]}
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        for r in results:
            print(r.line())
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="catgrp", description="Finite-group categorical algebra workbench")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("check", help="run every applicable check on every declaration")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="convert between crossed modules and internal categories")
    p.add_argument("direction", choices=["xmod-to-internal", "internal-to-xmod"])
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("-o", "--output", help="write the result here instead of stdout")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("roundtrip", help="verify the round trip through the other structure")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("builtin", help="print a builtin group as a spec")
    p.add_argument("kind", choices=sorted(BUILTINS))
    p.add_argument("k", nargs="?", type=int)
    p.set_defaults(func=cmd_builtin)

    p = sub.add_parser("suite", help="run the generated acceptance suite")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors this way
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except SpecSyntaxError:
        return EXIT_USAGE
    except (OSError, _UsageError) as exc:
        print(f"catgrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractError as exc:
        print(f"catgrp: check failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(f"witness={exc.witness}", file=sys.stderr)
        return EXIT_FAILED
    except CatGrpError as exc:
        print(f"catgrp: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
