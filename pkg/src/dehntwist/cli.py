"""Command-line interface. Every command ends with one ``RESULT key=value ...`` line."""

from __future__ import annotations

import argparse
import os
import sys
import time

from . import klein
from .corpus import DEFAULT_MAX, Filters, enumerate_instances, resolve
from .criteria import all_criteria
from .fileformat import load as _load_file, serialize
from .overlay import A, B, OverlayError, validate
from .segments import build_gamma, side_labels
from .suite import EXPONENTS, check_corpus
from .topology import classify_ambient, classify_complement, is_generic
from .twist import TwistError, fast_path, formula_intersection, oracle_intersection

OK, FALSIFIED, USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def load(path):
    return _load_file(resolve(path))


def _result(**fields) -> str:
    parts = []
    for k, v in fields.items():
        if isinstance(v, bool):
            v = str(v).lower()
        elif isinstance(v, (list, tuple)):
            v = "[" + ",".join(map(str, v)) + "]"
        parts.append(f"{k}={v}")
    return "RESULT " + " ".join(parts)


def _dump(inst, out) -> None:
    print("--- instance ---", file=out)
    out.write(serialize(inst))
    print("----------------", file=out)


def cmd_validate(args, out) -> int:
    inst = load(args.file)
    report = validate(inst)
    for cat, msg in report.problems:
        print(f"{cat}: {msg}", file=out)
    print(_result(valid=report.ok, m=inst.m, faces=len(inst.faces.faces)), file=out)
    return OK if report.ok else FALSIFIED


def cmd_classify(args, out) -> int:
    inst = load(args.file)
    kind = classify_ambient(inst)
    print(f"surface: {kind}", file=out)
    for curve in (A, B):
        sided = "two-sided" if inst.overlay.sign_product(curve) > 0 else "one-sided"
        pieces = classify_complement(inst, curve)
        print(f"{curve}: {sided}, generic={str(is_generic(inst, curve)).lower()}, complement: "
              + "; ".join(map(str, pieces)), file=out)
    print(_result(orientable=kind.orientable, genus=kind.genus, r=kind.boundaries, s=kind.punctures,
                  chi=kind.chi), file=out)
    return OK


def cmd_gamma(args, out) -> int:
    inst = load(args.file)
    table = side_labels(inst)
    for s in table.segments:
        print(f"segment {s.edge}: {s.start}->{s.end} {''.join(s.labels)} {s.sidedness}", file=out)
    gamma = build_gamma(inst)
    for p, q, f in gamma.edges:
        print(f"adjacent {p} {q} via face {f}", file=out)
    bad = gamma.violations()
    for v in bad:
        print(f"violation: {v}", file=out)
    print(_result(m=inst.m, vertices=list(gamma.vertices), edges=len(gamma.edges), ks=gamma.ks,
                  forest=gamma.is_forest, max_degree=gamma.max_degree), file=out)
    return FALSIFIED if bad else OK


def _zero_note(out) -> None:
    print("note: n=0 is the identity, so I(b, b) = 0", file=out)


def cmd_predict(args, out) -> int:
    inst = load(args.file)
    gamma = build_gamma(inst)
    if args.n == 0:
        _zero_note(out)
        value = 0
    else:
        value = formula_intersection(inst.m, args.n, gamma.ks)
    print(_result(I=value, m=inst.m, ks=gamma.ks), file=out)
    return OK


def cmd_oracle(args, out) -> int:
    inst = load(args.file)
    if args.n == 0:
        _zero_note(out)
        value = 0
    else:
        value = oracle_intersection(inst, args.n)
    print(_result(I=value, m=inst.m, n=args.n), file=out)
    return OK


def cmd_compare(args, out) -> int:
    inst = load(args.file)
    if args.n == 0:
        _zero_note(out)
        print(_result(formula=0, oracle=0, agree=True), file=out)
        return OK
    gamma = build_gamma(inst)
    predicted = formula_intersection(inst.m, args.n, gamma.ks)
    actual = oracle_intersection(inst, args.n)
    fp = fast_path(inst, args.n)
    print(f"fast path: type I {fp.type_one}/{fp.expected_one}, type II {fp.type_two}/{fp.expected_two}, "
          f"bigon left: {str(fp.bigon_left).lower()}", file=out)
    agree = predicted == actual
    print(_result(formula=predicted, oracle=actual, agree=agree, m=inst.m, ks=gamma.ks), file=out)
    if not agree:
        _dump(inst, out)
        return FALSIFIED
    return OK


def cmd_props(args, out) -> int:
    inst = load(args.file)
    reports = all_criteria(inst, args.n, args.j, args.k, args.file)
    for r in reports:
        print(r.summary() + (f" ({r.note})" if r.note else ""), file=out)
    ok = all(r.ok for r in reports)
    print(_result(ok=ok, **{r.name: r.verdict for r in reports}), file=out)
    if not ok:
        _dump(inst, out)
        return FALSIFIED
    return OK


def cmd_enumerate(args, out) -> int:
    if args.m > args.bound:
        raise ValueError(f"-m {args.m} exceeds the bound {args.bound}; raise it with --bound")
    start = time.perf_counter()
    entries = list(enumerate_instances(args.m, Filters(generic=not args.no_generic), bound=args.bound))
    counts = {}
    for e in entries:
        counts[e.instance.m] = counts.get(e.instance.m, 0) + 1
    for m in sorted(counts):
        print(f"m={m}: {counts[m]} instances", file=out)
    if args.list:
        for e in entries:
            print(f"{e.name}: {e.kind} ks={e.gamma.ks}", file=out)
    if not args.check:
        print(_result(instances=len(entries)), file=out)
        return OK
    workers = args.workers or os.cpu_count() or 1
    results = check_corpus(entries, EXPONENTS, workers)
    failed = [(e, r) for e, r in zip(entries, results) if r.violations]
    for e, r in failed:
        print(f"{e.name}:", file=out)
        for v in r.violations:
            print(f"  {v}", file=out)
        _dump(e.instance, out)
    checks = sum(r.checks for r in results)
    elapsed = time.perf_counter() - start
    print(_result(instances=len(entries), checks=checks, violations=sum(len(r.violations) for _, r in failed),
                  seconds=f"{elapsed:.1f}"), file=out)
    return FALSIFIED if failed else OK


def _fmt(x) -> str:
    return "(" + ",".join(map(str, x.astuple())) + ")"


def cmd_klein(args, out) -> int:
    group = klein.GROUPS[args.group]
    if args.op == "center":
        gens = klein.center(group)
    elif args.op == "centralizer":
        gens = klein.twist_centralizer(group)
    else:
        if not args.elements:
            raise ValueError("mult needs at least one element")
        value = group.identity
        for text in args.elements:
            value = value * klein.parse_element(group, text)
        print(_result(product=_fmt(value)), file=out)
        return OK
    print(_result(generators="[" + ",".join(_fmt(g) for g in gens) + "]"), file=out)
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dehntwist", description="Intersection numbers of Dehn-twisted curves.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name, func, help_ in (("validate", cmd_validate, "check an instance file"),
                              ("classify", cmd_classify, "surface type and curve complements"),
                              ("gamma", cmd_gamma, "segments and the adjacency graph")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.set_defaults(func=func)
    for name, func, help_ in (("predict", cmd_predict, "closed-form intersection number"),
                              ("oracle", cmd_oracle, "intersection number by construction and bigon removal"),
                              ("compare", cmd_compare, "formula against oracle; exit 1 on disagreement")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file")
        p.add_argument("-n", type=int, required=True, help="twist exponent")
        p.set_defaults(func=func)

    p = sub.add_parser("props", help="intersection-number criteria for the algebraic statements")
    p.add_argument("file")
    p.add_argument("-j", type=int, default=1)
    p.add_argument("-k", type=int, default=1)
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_props)

    p = sub.add_parser("enumerate", help="enumerate small instances, optionally checking each")
    p.add_argument("-m", type=int, required=True, help="largest crossing count")
    p.add_argument("--check", action="store_true", help="run the differential and invariant suite")
    p.add_argument("--workers", type=int, default=0, help="worker processes (default: all cores)")
    p.add_argument("--bound", type=int, default=DEFAULT_MAX, help="largest -m accepted")
    p.add_argument("--list", action="store_true", help="print every instance")
    p.add_argument("--no-generic", action="store_true", help="drop the genericity filter")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("klein", help="mapping class groups of two Klein bottles")
    p.add_argument("group", choices=sorted(klein.GROUPS))
    p.add_argument("op", choices=("center", "centralizer", "mult"))
    p.add_argument("elements", nargs="*", help="elements for mult, e.g. 1,1,0")
    p.set_defaults(func=cmd_klein)
    return parser


def run_command(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    try:
        return args.func(args, out)
    except (OSError, ValueError, OverlayError, TwistError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    raise SystemExit(run_command())


if __name__ == "__main__":
    main()
