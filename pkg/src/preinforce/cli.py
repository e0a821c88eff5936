"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (bad graph, failed
precondition, size guard, failed verification), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import family, verifier
from .deficiency import eta_graph, eta_local, mu_graph, mu_set
from .domination import gamma_p
from .exceptions import PreinforceError
from .graph_core import (
    edge_list_string,
    enumerate_trees,
    format_edge_list,
    read_edge_list,
    to_dot,
)
from .reinforcement import r_p


class UsageError(Exception):
    pass


def _parse_set(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"bad vertex list {text!r}") from None


def _emit(out: TextIO, args, payload: dict, lines: list[str]) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write("\n".join(lines) + "\n")


def _load(args):
    if not args.input:
        raise UsageError("--input is required")
    return read_edge_list(args.input)


def cmd_gamma(args, out):
    G = _load(args)
    cert = gamma_p(G, args.p, all_sets=args.all)
    payload = {
        "p": cert.p,
        "gamma_p": cert.value,
        "witness": sorted(cert.witness),
        "unique": cert.unique,
        "count": cert.count,
    }
    lines = [f"gamma_p = {cert.value}", f"witness = {sorted(cert.witness)}", f"unique = {cert.unique}"]
    if cert.all_min_sets is not None:
        payload["all_min_sets"] = [sorted(s) for s in cert.all_min_sets]
        lines += [f"  {sorted(s)}" for s in cert.all_min_sets]
    _emit(out, args, payload, lines)
    return 0


def cmd_reinforce(args, out):
    G = _load(args)
    res = r_p(G, args.p, method=args.method, budget=args.budget)
    payload = {
        "p": res.p,
        "r_p": res.value,
        "gamma_p": res.gamma,
        "method": res.method,
        "witness_edges": [list(e) for e in res.witness_edges],
        "witness_verified": res.witness_verified,
    }
    lines = [f"r_p = {res.value}", f"method = {res.method}", f"edges = {list(res.witness_edges)}"]
    if not res.witness_verified:
        lines.append("warning: witness edge set could not be verified")
    _emit(out, args, payload, lines)
    return 0


def cmd_eta(args, out):
    G = _load(args)
    if args.set is not None:
        X = _parse_set(args.set)
        total = eta_local(G, args.p, X, range(G.n))
        _emit(out, args, {"p": args.p, "X": sorted(set(X)), "eta": total}, [f"eta_p(V, X) = {total}"])
        return 0
    w = eta_graph(G, args.p, restricted=not args.unrestricted)
    payload = {"p": w.p, "eta_p": w.total, "gamma_p": w.gamma, "X": sorted(w.X), "deficiencies": list(w.deficiencies)}
    _emit(out, args, payload, [f"eta_p = {w.total}", f"X = {sorted(w.X)}"])
    return 0


def cmd_mu(args, out):
    G = _load(args)
    rep = mu_set(G, args.p, _parse_set(args.set)) if args.set is not None else mu_graph(G, args.p)
    payload = {
        "p": rep.p,
        "D": sorted(rep.D),
        "mu": rep.set_min,
        "vertex": rep.vertex,
        "entries": [
            {"vertex": e.vertex, "private": e.private_count, "deficit": e.deficit, "mu": e.mu}
            for e in rep.entries
        ],
    }
    lines = [f"mu_p = {rep.set_min} (at vertex {rep.vertex})", f"D = {sorted(rep.D)}"]
    lines += [f"  {e.vertex}: |PN| = {e.private_count}, deficit = {e.deficit}" for e in rep.entries]
    _emit(out, args, payload, lines)
    return 0


def _write_graph(G, A, args, out, extra: dict):
    text = format_edge_list(G, comment=f"A = {' '.join(map(str, sorted(A)))}")
    if args.out:
        Path(args.out).write_text(text)
    payload = dict(extra, n=G.n, edges=[list(e) for e in G.edges], A=sorted(A))
    _emit(out, args, payload, [text.rstrip("\n")] if not args.out else [f"wrote {args.out}"])


def cmd_family(args, out):
    if args.action == "build":
        if args.trace:
            trace = family.ConstructionTrace.from_json(Path(args.trace).read_text())
        elif args.ops_json:
            trace = family.ConstructionTrace.from_json(args.ops_json)
        else:
            raise UsageError("family build needs --trace FILE or --ops-json TEXT")
        G, A = family.replay_trace(trace)
        _write_graph(G, A, args, out, {"trace": json.loads(trace.to_json())})
        return 0
    if args.action == "gen":
        if args.ops is None:
            raise UsageError("family gen needs --ops")
        G, trace = family.generate_member(args.p, args.ops, args.seed, args.t_max)
        _, A = family.replay_trace(trace)
        if not args.json and not args.out:
            out.write(f"# trace {trace.to_json()}\n")
        _write_graph(G, A, args, out, {"trace": json.loads(trace.to_json())})
        return 0
    G = _load(args)
    trace = family.recognize(G, args.p)
    if trace is None:
        _emit(out, args, {"member": False}, ["not a member"])
    else:
        _emit(out, args, {"member": True, "trace": json.loads(trace.to_json())}, ["member", trace.to_json()])
    return 0


def cmd_enumerate(args, out):
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    trees = list(enumerate_trees(args.n))
    if args.count_only:
        _emit(out, args, {"n": args.n, "count": len(trees)}, [str(len(trees))])
        return 0
    payload = {"n": args.n, "count": len(trees), "trees": [edge_list_string(T) for T in trees]}
    _emit(out, args, payload, [edge_list_string(T) for T in trees])
    return 0


def cmd_verify(args, out):
    if args.claim == "fig-1":
        report = verifier.figure1_fixture_check()
    else:
        if args.claim not in verifier.CLAIMS:
            raise UsageError(f"unknown claim {args.claim!r}")
        report = verifier.run_theorem_suite(args.claim, args.p, args.max_n, args.jobs)
    text = report.to_json(timing=not args.no_timing)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.json:
        out.write(text + "\n")
    else:
        status = "PASS" if report.passed else "FAIL"
        out.write(f"{status} {report.claim} p={report.p} n<={report.n_max}: "
                  f"{report.checked} checked, {len(report.violations)} violations\n")
        for v in report.violations[:10]:
            out.write(f"  {v['tree']}: {v['detail']}\n")
        if report.census:
            out.write("census " + " ".join(f"{n}:{c}" for n, c in sorted(report.census.items())) + "\n")
    return 0 if report.passed else 1


def cmd_export(args, out):
    G = _load(args)
    highlight = ()
    if args.highlight_p is not None:
        highlight = gamma_p(G, args.highlight_p).witness
    text = to_dot(G, name=Path(args.input).stem.replace("-", "_") or "G", highlight=highlight)
    if args.out:
        Path(args.out).write_text(text)
        out.write(f"wrote {args.out}\n")
    else:
        out.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", "-i", help="edge-list file")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    needs_p = argparse.ArgumentParser(add_help=False)
    needs_p.add_argument("--p", type=int, required=True)

    parser = argparse.ArgumentParser(prog="preinforce", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gamma", parents=[common, needs_p], help="p-domination number")
    sp.add_argument("--all", action="store_true", help="list every minimum set")
    sp.set_defaults(func=cmd_gamma)

    sp = sub.add_parser("reinforce", parents=[common, needs_p], help="p-reinforcement number")
    sp.add_argument("--method", choices=["auto", "eta", "definition"], default="auto")
    sp.add_argument("--budget", type=int, default=None, help="largest edge set tried by --method definition (0 = no limit)")
    sp.set_defaults(func=cmd_reinforce)

    sp = sub.add_parser("eta", parents=[common, needs_p], help="minimum deficiency, or the deficiency of --set")
    sp.add_argument("--set", help="vertex list such as '0,2,5'")
    sp.add_argument("--unrestricted", action="store_true", help="search every size below gamma_p")
    sp.set_defaults(func=cmd_eta)

    sp = sub.add_parser("mu", parents=[common, needs_p], help="private-neighbour functional")
    sp.add_argument("--set", help="evaluate this set instead of minimising over minimum sets")
    sp.set_defaults(func=cmd_mu)

    sp = sub.add_parser("family", parents=[common, needs_p], help="build, sample or recognise family members")
    sp.add_argument("action", choices=["build", "gen", "check"])
    sp.add_argument("--trace", help="trace JSON file (build)")
    sp.add_argument("--ops-json", help="trace JSON text (build)")
    sp.add_argument("--ops", type=int, help="number of operations (gen)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--t-max", type=int, default=None)
    sp.add_argument("--out", "-o", help="write the edge list here")
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("enumerate", parents=[common], help="non-isomorphic trees on n vertices")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count-only", action="store_true")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", parents=[common], help="run a bounded verification suite")
    sp.add_argument("--claim", required=True, help=f"one of {', '.join(sorted(verifier.CLAIMS))}, fig-1")
    sp.add_argument("--p", type=int, default=3)
    sp.add_argument("--max-n", type=int, default=None)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out", "-o", help="write the JSON report here")
    sp.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0 for byte-stable output")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", parents=[common], help="write the graph in another format")
    sp.add_argument("--format", choices=["dot"], default="dot")
    sp.add_argument("--highlight-p", type=int, help="highlight a minimum p-dominating set")
    sp.add_argument("--out", "-o")
    sp.set_defaults(func=cmd_export)
    return parser


def run_command(argv: Sequence[str], out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if getattr(args, "jobs", 1) is not None and getattr(args, "jobs", 1) < 1:
        err.write("error: --jobs must be >= 1\n")
        return 2
    try:
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (PreinforceError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        err.write(f"error: {exc}\n")
        return 1


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
