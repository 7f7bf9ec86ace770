"""Command-line front end.

Exit codes: 0 for success or a mathematically positive outcome, 1 for a
mathematically negative one (not isomorphic, incompatible, identity fails,
audit mismatch), 2 for unusable input.  All reports are line oriented and
deterministic so they can be pinned in golden tests.
"""

from __future__ import annotations

import argparse
import os
import sys

from ktgroups import classify, coloring, diagram as diagram_mod, ternary
from ktgroups.errors import (
    BudgetExceededError,
    GroupMismatchError,
    IncompatiblePairError,
    NotKnotTheoreticError,
    NotTernaryGroupError,
    SkewUndefinedError,
    SpecError,
)
from ktgroups.terms import CATALOG_ORDER, DERIVED_OPERATION_KEYS
from ktgroups.ternary import PROPERTY_ORDER

_INPUT_ERRORS = (
    SpecError,
    GroupMismatchError,
    NotKnotTheoreticError,
    NotTernaryGroupError,
    SkewUndefinedError,
    BudgetExceededError,
    OSError,
    ValueError,
)


def _fmt_bool(b):
    return "true" if b else "false"


def _fmt_value(v):
    return str(v)


def _fmt_env(env):
    return ";".join(_fmt_value(v) for v in env)


def emit_report(rows, fmt="lines"):
    """Render a list of ordered key/value rows.

    "lines" prints one ``key=value`` record per line; "text" aligns the same
    records in columns.
    """
    rendered = [[(k, str(v)) for k, v in row] for row in rows]
    if fmt == "lines":
        return "\n".join(" ".join(f"{k}={v}" for k, v in row) for row in rendered)
    widths = {}
    for row in rendered:
        for k, v in row:
            widths[k] = max(widths.get(k, len(k)), len(f"{k}={v}"))
    lines = []
    for row in rendered:
        lines.append("  ".join(f"{k}={v}".ljust(widths[k]) for k, v in row).rstrip())
    return "\n".join(lines)


def _load_structure(token):
    """A structure argument is either a kt-spec or a path to a table file."""
    if os.path.exists(token):
        with open(token, "r", encoding="ascii") as fh:
            return ternary.parse_table_file(fh.read())
    if "@" not in token and not token.startswith("Z"):
        raise SpecError(f"{token!r} is neither a structure spec nor an existing file")
    return ternary.parse_kt_spec(token)


def _load_diagram(token):
    if token.startswith("builtin:"):
        return diagram_mod.builtin(token[len("builtin:") :])
    if not os.path.exists(token):
        raise SpecError(f"diagram file {token!r} does not exist")
    with open(token, "r", encoding="ascii") as fh:
        return diagram_mod.parse_diagram(fh.read(), name=os.path.basename(token))


def _cmd_check(args):
    struct = _load_structure(args.structure)
    report = ternary.property_report(
        struct,
        budget=args.tuple_budget,
        samples=args.samples,
        seed=args.seed,
    )
    rows = [
        [
            ("property", name),
            ("holds", _fmt_bool(report.flags[name])),
            ("sampled", _fmt_bool(name in report.sampled)),
        ]
        for name in PROPERTY_ORDER
    ]
    print(emit_report(rows, args.format))
    return 0 if report.flags["knot_theoretic"] else 1


def _cmd_identities(args):
    struct = _load_structure(args.structure)
    names = list(CATALOG_ORDER)
    if args.only:
        names = [n.strip() for n in args.only.split(",") if n.strip()]
        for n in names:
            if n not in CATALOG_ORDER:
                raise SpecError(f"unknown identity {n!r}")
    derived = None
    rows = []
    all_hold = True
    for name in names:
        target = struct
        if name in DERIVED_OPERATION_KEYS:
            if derived is None:
                derived = ternary.derived_malcev(struct)
            target = derived
        rep = ternary.check_identity(
            target,
            name,
            mode="auto",
            budget=args.tuple_budget,
            samples=args.samples,
            seed=args.seed,
        )
        row = [
            ("identity", name),
            ("holds", _fmt_bool(rep.holds)),
            ("sampled", _fmt_bool(rep.sampled)),
        ]
        if not rep.holds:
            all_hold = False
            if rep.failed_member and rep.failed_member != name:
                row.append(("member", rep.failed_member))
            if rep.counterexample is not None:
                row.append(("counterexample", _fmt_env(rep.counterexample)))
        rows.append(row)
    print(emit_report(rows, args.format))
    return 0 if all_hold else 1


def _cmd_enumerate(args):
    report = classify.enumerate_kt(args.order)
    print(
        f"n={args.order} all={report.counts['all']} "
        f"idempotent={report.counts['idempotent']} "
        f"commutative={report.counts['commutative']}"
    )
    return 0


def _counts_str(counts):
    return f"{counts['all']}/{counts['idempotent']}/{counts['commutative']}"


def _cmd_table1(args):
    rows = classify.table1_compare(args.max)
    out = [
        [
            ("n", row.n),
            ("paper", _counts_str(row.paper)),
            ("computed", _counts_str(row.computed)),
            ("match", _fmt_bool(row.match)),
        ]
        for row in rows
    ]
    print(emit_report(out, args.format))
    mismatches = [row.n for row in rows if not row.match]
    if mismatches:
        print(
            "audit: computed counts disagree with the published table at n="
            + ",".join(str(n) for n in mismatches),
            file=sys.stderr,
        )
        return 1
    return 0


def _cmd_iso(args):
    first = _load_structure(args.first)
    second = _load_structure(args.second)
    report = ternary.iso_test(first, second, method=args.method)
    print(f"isomorphic={_fmt_bool(report.isomorphic)}")
    return 0 if report.isomorphic else 1


def _cmd_compat(args):
    flat = _load_structure(args.flat)
    virt = _load_structure(args.virt)
    report = ternary.compatible(flat, virt)
    row = [
        ("compatible", _fmt_bool(report.compatible)),
        ("companion", _fmt_bool(report.companion)),
    ]
    if report.counterexample is not None:
        row.append(("counterexample", _fmt_env(report.counterexample)))
    elif report.companion_counterexample is not None:
        row.append(("counterexample", _fmt_env(report.companion_counterexample)))
    print(emit_report([row], args.format))
    return 0 if report.both else 1


def _cmd_color(args):
    diag = _load_diagram(args.diagram)
    flat = ternary.parse_kt_spec(args.flat)
    virt = ternary.parse_kt_spec(args.virt) if args.virt else None

    if args.vector:
        if args.vector != "order4":
            raise SpecError(f"unknown catalog {args.vector!r}; have: order4")
        catalog = coloring.order4_catalog()
        counts = coloring.invariant_vector(diag, catalog)
        for struct, count in zip(catalog, counts):
            print(
                f"diagram={diag.name} flat={struct.spec()} virt=- "
                f"count={count} method=affine"
            )
        print("vector=" + ",".join(str(c) for c in counts))
        return 0

    if args.method in ("affine", "both"):
        system = coloring.compile_system(diag, flat, virt)
        affine = coloring.count_affine(system)
    if args.method in ("brute", "both"):
        if args.method == "brute" and virt is not None:
            pair = ternary.compatible(flat, virt)
            if not pair.both:
                raise IncompatiblePairError(
                    "flat/virtual operations are incompatible; counterexample "
                    f"{pair.counterexample or pair.companion_counterexample}"
                )
        brute = coloring.count_bruteforce(diag, flat, virt, budget=args.brute_budget)

    virt_spec = virt.spec() if virt is not None else "-"
    if args.method == "both" and affine.count != brute.count:
        print(
            f"diagram={diag.name} flat={flat.spec()} virt={virt_spec} "
            f"affine={affine.count} brute={brute.count} agreement=false"
        )
        return 1
    chosen = affine if args.method in ("affine", "both") else brute
    print(
        f"diagram={diag.name} flat={flat.spec()} virt={virt_spec} "
        f"count={chosen.count} method={chosen.method}"
    )
    if args.enumerate:
        for assignment in coloring.enumerate_colorings(
            diag, flat, virt, cap=args.enumerate_cap, budget=args.brute_budget
        ):
            print("coloring=" + _fmt_env(assignment))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ktg",
        description="Knot-theoretic ternary groups: verification, classification, "
        "and diagram coloring invariants.",
    )
    parser.add_argument("--format", choices=("lines", "text"), default="lines")
    parser.add_argument("--tuple-budget", type=int, default=ternary.DEFAULT_TUPLE_BUDGET)
    parser.add_argument("--brute-budget", type=int, default=coloring.DEFAULT_BRUTE_BUDGET)
    parser.add_argument("--samples", type=int, default=ternary.DEFAULT_SAMPLES)
    parser.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="property report for a structure")
    p.add_argument("structure")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("identities", help="evaluate catalog identities")
    p.add_argument("structure")
    p.add_argument("--only", help="comma-separated identity names")
    p.set_defaults(func=_cmd_identities)

    p = sub.add_parser("enumerate", help="classify structures of one order")
    p.add_argument("order", type=int)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("table1", help="audit the published classification counts")
    p.add_argument("--max", type=int, default=64)
    p.set_defaults(func=_cmd_table1)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--method", choices=("bfs", "pinned"), default="bfs")
    p.set_defaults(func=_cmd_iso)

    p = sub.add_parser("compat", help="compatibility of a flat/virtual pair")
    p.add_argument("flat")
    p.add_argument("virt")
    p.set_defaults(func=_cmd_compat)

    p = sub.add_parser("color", help="count diagram colorings")
    p.add_argument("diagram", help="diagram file or builtin:<name>")
    p.add_argument("--flat", required=True)
    p.add_argument("--virt")
    p.add_argument("--method", choices=("affine", "brute", "both"), default="affine")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--enumerate-cap", type=int, default=4096)
    p.add_argument("--vector", help="named catalog for an invariant vector (order4)")
    p.set_defaults(func=_cmd_color)

    return parser


def run(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    for field in ("tuple_budget", "brute_budget", "samples"):
        if getattr(args, field) <= 0:
            print(f"error: --{field.replace('_', '-')} must be positive", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except IncompatiblePairError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    raise SystemExit(run())


if __name__ == "__main__":
    main()
