"""Command-line front end.

Exit status: 0 when every check passes, 1 when a mathematical check fails,
2 on usage, parse or budget errors. Every report starts with a header carrying
the package version, a hash of the effective configuration and the seed.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from pathlib import Path

from . import __version__
from .cayley import parse_set, spectrum
from .circuit import circuit_matrix, oriented_cycle_matrix, signed_incidence
from .errors import BudgetExceededError, NotBipartiteError
from .graphs import (
    OddCycle,
    SimpleGraph,
    SubdivisionPlan,
    builtin_help,
    connected_components,
    even_subdivision,
    is_bipartite,
    load_pattern,
)
from .group import TAU_NUM, group_parse
from .homdensity import DEFAULT_BUDGET, density, density_all
from .sidorenko import (
    DEFAULT_SEARCH_CAP,
    check_even_subdivision,
    check_sidorenko,
    quasirandomness_report,
    search_extremal,
    strictness_check,
)
from .suite import CSV_COLUMNS, SUITE_KERNEL_CAP, run_suite, summarize

OUTPUT_DIR_ENV = "CAYLEY_SIDORENKO_OUTPUT_DIR"
# never part of the configuration hash: they change speed or destination only
_UNHASHED = {"threads", "output", "func"}


class UsageError(Exception):
    pass


def _parse_lengths(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"malformed --lengths {text!r}") from None


def _header(args: argparse.Namespace) -> dict:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _UNHASHED}
    digest = hashlib.sha256(json.dumps(config, sort_keys=True, default=str).encode()).hexdigest()[:16]
    return {"tool": "cayley-sidorenko", "version": __version__, "configHash": digest, "seed": getattr(args, "seed", None)}


def _emit(args: argparse.Namespace, payload: dict, rows: list[list[str]] | None = None, columns=None, summary: str | None = None) -> None:
    header = _header(args)
    if args.format == "csv" and rows is not None:
        buf = io.StringIO()
        buf.write(f"# cayley-sidorenko {header['version']} config={header['configHash']} seed={header['seed']}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        writer.writerows(rows)
        if summary:
            buf.write(f"# summary {summary}\n")
        text = buf.getvalue()
    else:
        text = json.dumps({"header": header, **payload}, indent=2) + "\n"
    if args.output:
        path = Path(args.output)
        if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
            path = Path(os.environ[OUTPUT_DIR_ENV]) / path
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
    else:
        sys.stdout.write(text)


def _group_and_set(args):
    group = group_parse(args.group)
    return group, parse_set(group, args.set, closure=args.set_closure)


def _pattern_or_plan(args) -> tuple[SimpleGraph, SubdivisionPlan | None]:
    if args.base:
        if args.pattern:
            raise UsageError("give either --pattern or --base/--lengths, not both")
        base = load_pattern(args.base)
        lengths = _parse_lengths(args.lengths) if args.lengths else (1,) * base.num_edges
        plan = SubdivisionPlan(base, lengths)
        return even_subdivision(plan), plan
    if not args.pattern:
        raise UsageError("a pattern is required (--pattern, or --base with --lengths)")
    return load_pattern(args.pattern), None


def _value_json(v) -> dict | None:
    if v is None:
        return None
    return {"value": v.value, "method": v.method, "residualImag": v.residual_imag, "cost": v.cost}


# -- subcommands ----------------------------------------------------------------


def cmd_density(args) -> int:
    h = load_pattern(args.pattern)
    group, s = _group_and_set(args)
    method = "bruteforce" if args.method == "brute" else args.method
    if method == "all":
        values = density_all(h, s, args.budget)
        results = {k: _value_json(v) for k, v in values.items()}
        present = {k: v.value for k, v in values.items() if v is not None}
        names = list(present)
        deltas = {f"{a}-{b}": abs(present[a] - present[b]) for i, a in enumerate(names) for b in names[i + 1:]}
        status = 0 if all(d <= TAU_NUM for d in deltas.values()) else 1
        rows = [[k, "" if v is None else repr(v["value"]), "" if v is None else str(v["cost"])] for k, v in results.items()]
        _emit(args, {"pattern": args.pattern, "group": str(group), "set": s.label(), "results": results, "deltas": deltas},
              rows, ["method", "value", "cost"])
        return status
    value = density(h, s, method, args.budget)
    _emit(args, {"pattern": args.pattern, "group": str(group), "set": s.label(), "results": {value.method: _value_json(value)}},
          [[value.method, repr(value.value), str(value.cost)]], ["method", "value", "cost"])
    return 0


def cmd_check(args) -> int:
    h, plan = _pattern_or_plan(args)
    group, s = _group_and_set(args)
    report = check_even_subdivision(plan, s, args.budget) if plan is not None else check_sidorenko(h, s, args.budget)
    payload = {"pattern": args.pattern or f"{args.base} lengths={list(plan.lengths)}", "group": str(group), "set": s.label(),
               **report.to_json()}
    ok = report.verdict == "pass"
    if report.term_min is not None:
        ok = ok and report.term_min >= -TAU_NUM and report.term_imag_max <= TAU_NUM
    if args.epsilon is not None:
        if plan is None:
            raise UsageError("--epsilon needs an even-subdivision pattern (--base/--lengths)")
        st = strictness_check(plan, s, args.epsilon, args.budget)
        payload["strictness"] = {
            "epsilon": st.epsilon, "maxRatio": st.max_ratio, "hypothesis": st.hypothesis,
            "strictBound": st.strict_bound, "strictHolds": st.strict_holds,
            "contrapositiveApplies": st.contrapositive_applies, "contrapositiveHolds": st.contrapositive_holds,
        }
        ok = ok and st.passed
    row = [str(payload[k]) if payload[k] is not None else "" for k in ("tH", "tEdge", "exponent", "bound", "gap", "verdict", "termMin", "termImagMax")]
    _emit(args, payload, [row], ["tH", "tEdge", "exponent", "bound", "gap", "verdict", "termMin", "termImagMax"])
    return 0 if ok else 1


def cmd_matrix(args) -> int:
    h, _ = _pattern_or_plan(args)
    components = []
    for comp in connected_components(h):
        if len(comp) == 1:
            continue
        sub, _ = h.induced(comp)
        entry = {"vertices": comp}
        if args.oriented:
            entry["circuit"] = oriented_cycle_matrix(sub).to_json()
        else:
            bip = is_bipartite(sub)
            if isinstance(bip, OddCycle):
                raise NotBipartiteError("circuit matrix needs a bipartite pattern (try --oriented)", tuple(comp[v] for v in bip.cycle))
            entry["circuit"] = circuit_matrix(sub, bip).to_json()
            entry["incidence"] = signed_incidence(sub, bip).to_json()
        components.append(entry)
    _emit(args, {"n": h.n, "edges": [list(e) for e in h.edges], "components": components})
    return 0


def cmd_spectrum(args) -> int:
    group, s = _group_and_set(args)
    lam = spectrum(s)
    qr = quasirandomness_report(s, args.epsilon)
    elements = group.elements()
    rows = [[" ".join(map(str, a)), repr(float(x))] for a, x in zip(elements, lam)]
    _emit(args, {"group": str(group), "set": s.label(), "eigenvalues": [float(x) for x in lam], **qr.to_json()},
          rows, ["character", "eigenvalue"])
    return 0


def cmd_search(args) -> int:
    group = group_parse(args.group)
    base = load_pattern(args.base)
    lengths = _parse_lengths(args.lengths) if args.lengths else (1,) * base.num_edges
    plan = SubdivisionPlan(base, lengths)
    entries = search_extremal(group, plan, args.size, args.mode, args.count, args.seed, args.cap, args.threads)
    rows = [[e.members.label() or "{}", repr(e.density), repr(e.max_ratio), repr(e.max_nonprincipal_eig)] for e in entries]
    payload = {"group": str(group), "base": args.base, "lengths": list(lengths), "size": args.size,
               "ranking": [dict(zip(("set", "density", "maxRatio", "maxNonprincipalEig"), r)) for r in rows]}
    _emit(args, payload, rows, ["set", "density", "maxRatio", "maxNonprincipalEig"])
    return 0


def cmd_suite(args) -> int:
    rows = run_suite(trees=args.trees, fault=args.inject_fault, threads=args.threads,
                     max_order=args.max_order, kernel_cap=args.kernel_cap, max_instances=args.budget)
    summary = summarize(rows)
    text = f"instances={summary['instances']} failures={summary['failures']} maxAbsGap={summary['maxAbsGap']!r}"
    _emit(args, {"summary": summary, "rows": [r.to_json() for r in rows]}, [r.cells() for r in rows], CSV_COLUMNS, text)
    print(f"summary: {text}", file=sys.stderr)
    return 0 if summary["failures"] == 0 else 1


# -- parser ---------------------------------------------------------------------


def _add_common(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv"), default=default_format)
    p.add_argument("--output", help=f"output file (relative paths resolve under ${OUTPUT_DIR_ENV} when set)")
    p.add_argument("--threads", type=int, default=1, help="worker threads; affects speed only")


def _add_host(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="e.g. Z4 or Z2xZ2xZ3")
    p.add_argument("--set", required=True, help="connection set: 1,3 or '(1,0);(0,1)'")
    p.add_argument("--set-closure", action="store_true", help="add missing negatives to --set")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cayley-sidorenko",
        description="Homomorphism densities and Sidorenko gaps in abelian Cayley graphs.",
        epilog=builtin_help() + "\nEdge-list files: 'n <count>' then 'u v' per line, '#' comments.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("density", help="t(H, Cay(G, S)) by one or all methods")
    p.add_argument("--pattern", required=True, help="edge-list file or builtin name")
    _add_host(p)
    p.add_argument("--method", choices=("brute", "kernel", "fourier", "auto", "all"), default="auto")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_common(p)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("check", help="Sidorenko report for a pattern or an even subdivision")
    p.add_argument("--pattern")
    p.add_argument("--base", help="base graph H_0 of an even subdivision")
    p.add_argument("--lengths", help="m_1,...,m_k: edge i becomes a path of length 2 m_i")
    _add_host(p)
    p.add_argument("--epsilon", type=float, help="also run the strictness check at this epsilon")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("matrix", help="circuit and signed incidence matrices as JSON")
    p.add_argument("--pattern")
    p.add_argument("--base")
    p.add_argument("--lengths")
    p.add_argument("--oriented", action="store_true", help="oriented cycle matrix (any connected graph)")
    _add_common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("spectrum", help="Cayley eigenvalues and the quasirandomness report")
    _add_host(p)
    p.add_argument("--epsilon", type=float, default=0.1)
    _add_common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("search", help="rank symmetric sets by subdivision density")
    p.add_argument("--group", required=True)
    p.add_argument("--base", required=True)
    p.add_argument("--lengths")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--mode", choices=("exhaustive", "sample"), default="exhaustive")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=DEFAULT_SEARCH_CAP)
    _add_common(p, "csv")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("suite", help="run the theorem suite")
    p.add_argument("--trees", action="store_true", help="tree bases only (gaps must vanish)")
    p.add_argument("--inject-fault", action="store_true", help="test hook: flip one circuit-matrix sign")
    p.add_argument("--max-order", type=int, default=8)
    p.add_argument("--kernel-cap", type=int, default=SUITE_KERNEL_CAP)
    p.add_argument("--budget", type=int, default=None, help="refuse suites with more instances than this")
    _add_common(p, "csv")
    p.set_defaults(func=cmd_suite)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError, BudgetExceededError, NotBipartiteError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
