"""Command-line entry point.

    levi classify <specfile> [--format text|json] [--order-bound N]
    levi verify [case] [case params] [--format text|json]
    levi catalog list [--catalog FILE]

classify prints the stable Levi subsets, the geometric and rational
partitions with witness words, and the agreement verdict. Witness words
list 1-based simple-root labels, rightmost reflection applied first.
Exit status is zero iff every requested check passed; parse failures exit
with 2, exceeded order bounds with 3.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cases import (DEFAULT_SUITE, CaseParameterError, UnknownCaseError,
                    list_cases, run_paper_case)
from .index import ClassificationReport, TitsIndex, classify
from .rootsys import base_type
from .specfile import (IndexSpec, SpecFileError, load_catalog, load_index_file,
                       perm_to_cycle_string)
from .weyl import DEFAULT_ORDER_BOUND, GroupOrderExceeded


def _witness_word(w) -> list[int]:
    return [i + 1 for i in (w.word or ())]


def report_document(spec: IndexSpec, ix: TitsIndex, report: ClassificationReport,
                    order_bound: int) -> dict:
    """The machine-readable classification report (stable across runs)."""
    subsets = [sorted(i + 1 for i in s) for s in report.subsets]

    def witness_list(witnesses):
        return [{"source": i, "target": j, "word": _witness_word(w)}
                for (i, j), w in sorted(witnesses.items())]

    return {
        "index": {
            "series": spec.series,
            "rank": spec.total_rank,
            "factors": [list(f) for f in spec.factors] if spec.factors else None,
            "delta0": sorted(spec.delta0),
            "automorphisms": [perm_to_cycle_string(a.node_perm) for a in ix.gamma
                              if not a.is_identity],
        },
        "order_bound": order_bound,
        "subsets": subsets,
        "geometric_classes": [list(c) for c in report.geometric_classes],
        "rational_classes": [list(c) for c in report.rational_classes],
        "witnesses": {
            "geometric": witness_list(report.geometric_witnesses),
            "rational": witness_list(report.rational_witnesses),
        },
        "agreement": report.agreement,
    }


def _print_text_report(spec: IndexSpec, ix: TitsIndex, report: ClassificationReport):
    print("index: %s" % spec.describe())
    print("stable Levi subsets: %d" % len(report.subsets))
    width = max(len("{%s}" % ", ".join(map(str, sorted(i + 1 for i in s))))
                for s in report.subsets)
    for pos, s in enumerate(report.subsets):
        label = "{%s}" % ", ".join(map(str, sorted(i + 1 for i in s)))
        print("  %3d  %-*s  type %s" % (pos, width, label, base_type(ix.rs, s)))
    for kind, classes, witnesses in (
            ("geometric", report.geometric_classes, report.geometric_witnesses),
            ("rational", report.rational_classes, report.rational_witnesses)):
        print("%s classes: %d" % (kind, len(classes)))
        for cls in classes:
            print("  %s" % " ~ ".join(str(p) for p in cls))
        for (i, j), w in sorted(witnesses.items()):
            word = " ".join("s%d" % k for k in _witness_word(w)) or "(identity)"
            print("  witness %d -> %d: %s" % (i, j, word))
    print("agreement: %s" % ("yes" if report.agreement else "NO"))


def cmd_classify(args) -> int:
    try:
        spec, ix = load_index_file(args.spec)
    except SpecFileError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    try:
        report = classify(ix, order_bound=args.order_bound)
    except GroupOrderExceeded as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 3
    if args.format == "json":
        print(json.dumps(report_document(spec, ix, report, args.order_bound), indent=2))
    else:
        _print_text_report(spec, ix, report)
    return 0


def _suite_for(args) -> list[tuple[str, dict]]:
    params = {}
    for key in ("n", "d", "m", "copies"):
        value = getattr(args, key)
        if value is not None:
            params[key] = value
    if args.factor is not None:
        params["factor"] = args.factor
    if args.case in (None, "all"):
        if params:
            raise UnknownCaseError("case parameters need an explicit case id")
        return list(DEFAULT_SUITE)
    if params:
        return [(args.case, params)]
    matching = [(cid, p) for cid, p in DEFAULT_SUITE if cid == args.case]
    if matching:
        return matching
    if args.case in list_cases():
        return [(args.case, {})]
    raise UnknownCaseError("unknown case %r; known cases: %s"
                           % (args.case, ", ".join(sorted(list_cases()))))


def cmd_verify(args) -> int:
    try:
        suite = _suite_for(args)
    except UnknownCaseError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    reports = []
    status = 0
    for case_id, params in suite:
        try:
            report = run_paper_case(case_id, **params)
        except (CaseParameterError, UnknownCaseError) as exc:
            print("error: %s" % exc, file=sys.stderr)
            return 2
        reports.append(report)
        if not report.passed:
            status = 1
    if args.format == "json":
        print(json.dumps([{
            "case": r.case_id, "params": r.params, "passed": r.passed,
            "elapsed": round(r.elapsed, 3), "expected": _jsonable(r.expected),
            "computed": _jsonable(r.computed), "notes": r.notes,
        } for r in reports], indent=2))
    else:
        for r in reports:
            print(r.summary())
            for note in r.notes:
                print("    note: %s" % note)
        print("%d/%d cases passed" % (sum(r.passed for r in reports), len(reports)))
    return status


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in value]
    return value


def cmd_catalog(args) -> int:
    if args.action != "list":
        print("error: unknown catalog action %r" % args.action, file=sys.stderr)
        return 2
    try:
        entries = load_catalog(args.catalog)
    except (SpecFileError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    for spec in entries:
        print("%-22s %s" % (spec.name, spec.describe()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="levi",
        description="Classify conjugacy of (pseudo-)Levi subgroups at the "
                    "level of root data and Tits indices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_classify = sub.add_parser("classify", help="classify one index from a spec file")
    p_classify.add_argument("spec", help="path to an index specification file")
    p_classify.add_argument("--format", choices=("text", "json"), default="text")
    p_classify.add_argument("--order-bound", type=int, default=DEFAULT_ORDER_BOUND)
    p_classify.set_defaults(func=cmd_classify)

    p_verify = sub.add_parser("verify", help="run the case verification suite")
    p_verify.add_argument("case", nargs="?", default=None,
                          help="case id (default: all); one of %s" % ", ".join(sorted(list_cases())))
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--d", type=int, default=None)
    p_verify.add_argument("--m", type=int, default=None)
    p_verify.add_argument("--factor", default=None)
    p_verify.add_argument("--copies", type=int, default=None)
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.set_defaults(func=cmd_verify)

    p_catalog = sub.add_parser("catalog", help="inspect the index catalog")
    p_catalog.add_argument("action", choices=("list",))
    p_catalog.add_argument("--catalog", default=None, help="alternative catalog file")
    p_catalog.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
