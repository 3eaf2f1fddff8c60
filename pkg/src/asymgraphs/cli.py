"""Command-line entry point.

Data goes to stdout, diagnostics to stderr. Every JSON document carries a
``schema`` field and is written with sorted keys so reruns are byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import __version__
from .automorphism import automorphism_group
from .constructions import (
    ConstructionError,
    ConstructionSpec,
    contains_cycle_v1_to_vn,
    cubic_family,
    higher_regular_family,
    quartic_family,
    search_5regular_asymmetric_hamiltonian,
)
from .enumeration import EnumerationError, count_asds, enumerate_cubic_hamiltonian
from .graph import Graph, GraphError, decode_graph6, dirac_guarantees_hamiltonian, encode_graph6, find_hamiltonian_cycle, to_dot

SCHEMA_PREFIX = "asymgraphs"


class UsageError(Exception):
    pass


def _dump(doc: dict, kind: str) -> str:
    doc = {"schema": f"{SCHEMA_PREFIX}.{kind}/1", **doc}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _write(path: str | None, text: str, stdout: TextIO) -> None:
    if path is None or path == "-":
        stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text, encoding="utf-8")


def hamiltonicity(g: Graph) -> tuple[bool, str]:
    """Whether ``g`` is Hamiltonian, with the evidence used."""
    if contains_cycle_v1_to_vn(g):
        return True, "cycle v1..vn"
    if g.n >= 3 and dirac_guarantees_hamiltonian(g):
        return True, "dirac"
    if find_hamiltonian_cycle(g) is not None:
        return True, "search"
    return False, "search"


def _expected_asymmetric(spec: ConstructionSpec) -> bool | None:
    if spec.family == "subdivided_star":
        arms = spec.arms or []
        return len(arms) >= 3 and len(set(arms)) == len(arms)
    return True


def certificate(spec: ConstructionSpec, g: Graph) -> dict:
    report = automorphism_group(g)
    ham, evidence = hamiltonicity(g)
    expected = _expected_asymmetric(spec)
    return {
        "spec": spec.to_dict(),
        "n": g.n,
        "edges": g.num_edges,
        "degrees": g.degrees(),
        "is_asymmetric": report.is_asymmetric,
        "group_order": report.group_order,
        "hamiltonian": ham,
        "hamiltonian_evidence": evidence,
        "expected_asymmetric": expected,
        "pass": expected is None or expected == report.is_asymmetric,
        "graph6": encode_graph6(g).decode(),
    }


# ---------------------------------------------------------------------------
# commands


def cmd_construct(args, stdout: TextIO) -> int:
    if args.recipe:
        spec = ConstructionSpec.from_json(Path(args.recipe).read_text(encoding="utf-8"))
    else:
        if not args.family:
            raise UsageError("construct needs a family or --recipe")
        spec = ConstructionSpec.from_dict(
            {"family": args.family, "n": args.n, "arms": args.arms, "seed": args.seed, "budget": args.budget}
        )
    g = spec.build()
    if g is None:
        print(f"error: no {spec.family} graph found within budget {spec.budget}", file=sys.stderr)
        return 1
    cert = certificate(spec, g)
    _write(args.graph6, encode_graph6(g).decode() + "\n", stdout)
    if args.dot:
        _write(args.dot, to_dot(g, spec.family), stdout)
    if args.certificate:
        _write(args.certificate, _dump(cert, "certificate"), stdout)
    return 0 if cert["pass"] else 1


def cmd_certify(args, stdout: TextIO) -> int:
    stream = sys.stdin if args.input in (None, "-") else open(args.input, encoding="ascii", errors="replace")
    failed = False
    try:
        for lineno, line in enumerate(stream, 1):
            line = line.strip()
            if not line:
                continue
            try:
                g = decode_graph6(line)
            except GraphError as exc:
                print(f"error: line {lineno}: {exc}", file=sys.stderr)
                failed = True
                continue
            if g.n == 0:
                body = {"n": 0, "group_order": 1, "generators": [], "orbits": [], "is_asymmetric": True}
            else:
                body = automorphism_group(g).to_json()
            doc = {"schema": f"{SCHEMA_PREFIX}.autreport/1", "line": lineno, **body}
            stdout.write(json.dumps(doc, sort_keys=True) + "\n")
    finally:
        if stream is not sys.stdin:
            stream.close()
    return 1 if failed else 0


def cmd_census(args, stdout: TextIO) -> int:
    report = enumerate_cubic_hamiltonian(args.n, workers=args.workers)
    reps = report.asymmetric_representatives() if args.asymmetric_only else report.representatives
    if args.corpus:
        _write(args.corpus, "".join(r.decode() + "\n" for r in reps), stdout)
        asym_path = Path(args.corpus).with_suffix(".asym.g6")
        _write(str(asym_path), "".join(r.decode() + "\n" for r in report.asymmetric_representatives()), stdout)
    doc = report.to_json()
    doc["asymmetric_only"] = args.asymmetric_only
    _write(args.report, _dump(doc, "census"), stdout)
    return 0


FAMILY_BUILDERS = {
    "cubic": (cubic_family, lambda n: 3),
    "quartic": (quartic_family, lambda n: 4),
    "complement_cubic": (lambda n: higher_regular_family(n, "cubic"), lambda n: n - 4),
    "complement_quartic": (lambda n: higher_regular_family(n, "quartic"), lambda n: n - 5),
}


def verify_row(n: int, family: str) -> dict:
    build, degree = FAMILY_BUILDERS[family]
    g = build(n)
    report = automorphism_group(g)
    ham, evidence = hamiltonicity(g)
    regular = g.is_regular(degree(n))
    dirac = dirac_guarantees_hamiltonian(g)
    ok = regular and ham and report.is_asymmetric
    if family.startswith("complement"):
        ok = ok and dirac
    return {
        "n": n,
        "family": family,
        "degree": degree(n),
        "regular": regular,
        "hamiltonian": ham,
        "hamiltonian_evidence": evidence,
        "dirac": dirac,
        "group_order": report.group_order,
        "ok": ok,
    }


def cmd_verify(args, stdout: TextIO) -> int:
    lo, hi = args.from_n, args.to_n
    if lo > hi or lo % 2 or hi % 2 or lo < 12:
        raise UsageError(f"verify needs even 12 <= from <= to, got from={lo} to={hi}")
    rows = [verify_row(n, fam) for n in range(lo, hi + 1, 2) for fam in FAMILY_BUILDERS]
    all_ok = all(r["ok"] for r in rows)
    if args.report:
        _write(args.report, _dump({"rows": rows, "all_ok": all_ok}, "verify"), stdout)
    else:
        head = f"{'n':>4} {'family':<20}{'deg':>4} {'regular':>8} {'hamiltonian':>12} {'dirac':>6} {'|Aut|':>6}  ok"
        stdout.write(head + "\n")
        for r in rows:
            stdout.write(
                f"{r['n']:>4} {r['family']:<20}{r['degree']:>4} {str(r['regular']):>8} "
                f"{str(r['hamiltonian']):>12} {str(r['dirac']):>6} {r['group_order']:>6}  {'yes' if r['ok'] else 'NO'}\n"
            )
        stdout.write(f"all asymmetric: {all_ok}\n")
    return 0 if all_ok else 1


def cmd_count_asds(args, stdout: TextIO) -> int:
    lo, hi = args.from_n, args.to_n
    if lo > hi or lo < 4:
        raise UsageError(f"count-asds needs 4 <= from <= to, got from={lo} to={hi}")
    rows = [count_asds(n) for n in range(lo, hi + 1)]
    # the solver count must agree with the count of 3+ distinct-part partitions
    consistent = all(r.exact_value == r.partition_count for r in rows)
    if args.report:
        _write(args.report, _dump({"rows": [r.to_json() for r in rows], "consistent": consistent}, "count_asds"), stdout)
    else:
        stdout.write(f"{'n':>4} {'formula':>8} {'exact':>6} {'discrepancy':>12}\n")
        for r in rows:
            stdout.write(f"{r.n:>4} {r.formula_value:>8} {r.exact_value:>6} {r.discrepancy:>12}\n")
    return 0 if consistent else 1


def cmd_search_5reg(args, stdout: TextIO) -> int:
    g = search_5regular_asymmetric_hamiltonian(args.n, seed=args.seed, budget=args.budget)
    if g is None:
        print(f"error: no witness within budget {args.budget}", file=sys.stderr)
        return 1
    spec = ConstructionSpec("five_regular", args.n, None, args.seed, args.budget)
    cert = certificate(spec, g)
    _write(args.graph6, encode_graph6(g).decode() + "\n", stdout)
    if args.dot:
        _write(args.dot, to_dot(g, "five_regular"), stdout)
    if args.certificate:
        _write(args.certificate, _dump(cert, "certificate"), stdout)
    return 0 if cert["pass"] and cert["hamiltonian"] and g.is_regular(5) else 1


def cmd_export_dot(args, stdout: TextIO) -> int:
    stream = sys.stdin if args.input in (None, "-") else open(args.input, encoding="ascii", errors="replace")
    failed = False
    graphs = []
    try:
        for lineno, line in enumerate(stream, 1):
            line = line.strip()
            if not line:
                continue
            try:
                graphs.append((lineno, decode_graph6(line)))
            except GraphError as exc:
                print(f"error: line {lineno}: {exc}", file=sys.stderr)
                failed = True
    finally:
        if stream is not sys.stdin:
            stream.close()
    for lineno, g in graphs:
        name = f"{args.prefix}{lineno}"
        if args.outdir:
            _write(str(Path(args.outdir) / f"{name}.dot"), to_dot(g, name), stdout)
        else:
            stdout.write(to_dot(g, name))
    return 1 if failed else 0


def _arms(text: str) -> list[int]:
    try:
        return [int(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"arms must be comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="asymgraphs", description="Build and certify asymmetric graphs.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build one graph family member")
    p.add_argument("family", nargs="?", help="subdivided-star, fig3-tree, cubic, quartic, complement-cubic, "
                   "complement-quartic, five-regular")
    p.add_argument("--n", type=int)
    p.add_argument("--arms", type=_arms)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--recipe", help="JSON recipe {family, n, arms, seed, budget}")
    p.add_argument("--graph6", help="graph6 output path (default stdout)")
    p.add_argument("--dot", help="DOT output path")
    p.add_argument("--certificate", help="JSON certificate path ('-' for stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="automorphism report for each graph6 line")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("census", help="cubic Hamiltonian graphs on n vertices up to isomorphism")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--asymmetric-only", action="store_true")
    p.add_argument("--corpus", help="graph6 corpus path; asymmetric subset goes to <stem>.asym.g6")
    p.add_argument("--report", help="JSON report path (default stdout)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check all families for each even n in a range")
    p.add_argument("--from", dest="from_n", type=int, required=True)
    p.add_argument("--to", dest="to_n", type=int, required=True)
    p.add_argument("--report", help="JSON report path instead of the text table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("count-asds", help="asymmetric subdivided stars: formula vs exact")
    p.add_argument("--from", dest="from_n", type=int, required=True)
    p.add_argument("--to", dest="to_n", type=int, required=True)
    p.add_argument("--report", help="JSON report path instead of the text table")
    p.set_defaults(func=cmd_count_asds)

    p = sub.add_parser("search-5reg", help="random search for an asymmetric 5-regular Hamiltonian graph")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1000)
    p.add_argument("--graph6", help="graph6 output path (default stdout)")
    p.add_argument("--dot", help="DOT output path")
    p.add_argument("--certificate", help="JSON certificate path ('-' for stdout)")
    p.set_defaults(func=cmd_search_5reg)

    p = sub.add_parser("export-dot", help="convert graph6 lines to DOT")
    p.add_argument("input", nargs="?", help="graph6 file (default stdin)")
    p.add_argument("--outdir", help="write one <prefix><line>.dot per graph")
    p.add_argument("--prefix", default="G")
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = stdout or sys.stdout
    try:
        return args.func(args, out)
    except (UsageError, ConstructionError, EnumerationError, GraphError, OSError, KeyError, ValueError) as exc:
        msg = str(exc).strip("'\"") or type(exc).__name__
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
