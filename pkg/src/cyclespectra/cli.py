"""Command-line entry point: ``cyclespectra <subcommand> ...``.

Exit status is 0 on success, 1 when the input is well formed but the
computation fails or a certificate does not verify, and 2 on usage errors.
Every JSON report records the tool version, the seed and the budgets used.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    HFreeSpec,
    corollary4_bound,
    delta,
    ex_bound,
    hfree_exponents,
    log_star,
    moore_bound,
    optimize_theorem3,
    section4_comparison,
    section4_sigma,
    theorem3_bound,
    turan_expansion_size,
)
from .certificate import coloring_to_dict, cycle_set_to_dict, family_to_dict, parse_certificate, verify_certificate
from .chromatic import CHI_BUDGET, chromatic_number, consecutive_cycles_chromatic, critical_subgraph, gyarfas_check
from .conjectures import (
    erdos_gyarfas_scan,
    power_plus_one_scan,
    random_cubic_source,
    random_gnp_source,
    random_min_degree_source,
)
from .extraction import consecutive_even_cycles, generalized_pipeline
from .generators import CAGES, GeneratorError, complete, complete_bipartite, cycle, gnp, path, random_regular, theta_graph, wheel
from .generators import cage as named_cage
from .graph import Graph, girth
from .io import FormatError, format_edge_list, format_graph6, iter_edge_list_stream, iter_graph6_stream, parse_edge_list
from .sequences import SequenceError, SubsequenceChoice, greedy_tower_choice, sequence_by_name
from .spectrum import DEFAULT_BUDGET, cycle_spectrum, longest_run

DEFAULT_SEED = 0

GEN_ARITY = {
    "complete": 1,
    "complete_bipartite": 2,
    "cycle": 1,
    "path": 1,
    "wheel": 1,
    "theta": 3,
    "random_regular": 2,
    "gnp": 2,
}


class UsageError(Exception):
    pass


# -- plumbing ----------------------------------------------------------------------


def _header(command: str, args: argparse.Namespace, budgets: dict) -> dict:
    return {
        "tool": "cyclespectra",
        "version": __version__,
        "command": command,
        "seed": getattr(args, "seed", None),
        "budgets": budgets,
    }


def _write(text: str, output: str | None) -> None:
    """Write to stdout, or atomically to ``output`` (temp file then rename)."""
    if not text.endswith("\n"):
        text += "\n"
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    target = Path(output)
    fd, tmp = tempfile.mkstemp(dir=target.parent or ".", prefix=f".{target.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(obj: dict, output: str | None) -> None:
    _write(json.dumps(obj, indent=2, sort_keys=False), output)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _read_graph(path: str, fmt: str) -> Graph:
    text = _read_text(path)
    if fmt == "graph6":
        graphs = list(iter_graph6_stream(text.splitlines()))
        if len(graphs) != 1:
            raise FormatError(f"expected one graph6 line, found {len(graphs)}")
        return graphs[0]
    return parse_edge_list(text)


def _stream(path: str, fmt: str):
    fh = sys.stdin if path == "-" else open(path, encoding="utf-8")
    try:
        if fmt == "graph6":
            yield from iter_graph6_stream(fh)
        else:
            yield from iter_edge_list_stream(fh)
    finally:
        if fh is not sys.stdin:
            fh.close()


def _big(text: str) -> tuple[int | None, float]:
    """Parse an integer or ``B^E``; returns (value or None if huge, log2 of value)."""
    s = text.replace("**", "^").strip()
    try:
        if "^" in s:
            base, exp = (int(x) for x in s.split("^", 1))
            if base < 2 or exp < 0:
                raise ValueError
            log2 = exp * math.log2(base)
            return (base ** exp if log2 <= 1 << 17 else None), log2
        v = int(s)
    except ValueError:
        raise UsageError(f"not an integer or power: {text!r}") from None
    return v, math.log2(v) if v > 0 else float("-inf")


def _seed(value: str) -> int:
    v = int(value)
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return v


def _positive(value: str) -> int:
    v = int(value)
    if v <= 0:
        raise argparse.ArgumentTypeError("budgets must be positive")
    return v


# -- subcommands ------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    kind, params = args.kind, args.params
    if kind in CAGES:
        if params:
            raise UsageError(f"{kind} takes no parameters")
        g = named_cage(kind)
    else:
        if len(params) != GEN_ARITY[kind]:
            raise UsageError(f"{kind} needs {GEN_ARITY[kind]} parameter(s), got {len(params)}")
        if kind == "gnp":
            g = gnp(int(params[0]), float(params[1]), args.seed)
        else:
            ints = [int(p) for p in params]
            builders = {
                "complete": complete,
                "complete_bipartite": complete_bipartite,
                "cycle": cycle,
                "path": path,
                "wheel": wheel,
                "theta": lambda a, b, c: theta_graph(a, b, c).graph,
                "random_regular": lambda n, d: random_regular(n, d, args.seed),
            }
            g = builders[kind](*ints)
    _write(format_graph6(g) if args.format == "graph6" else format_edge_list(g), args.output)
    return 0


def cmd_spectrum(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    want = args.certificate is not None
    s = cycle_spectrum(g, args.max_len, witnesses=want, budget=args.budget)
    budgets = {"node_expansions": args.budget}
    report = _header("spectrum", args, budgets)
    report.update(
        vertices=g.n,
        edges=g.m,
        lengths=list(s.lengths),
        exhaustive_up_to=s.exhaustive_up_to,
        max_len=s.max_len,
        exhaustive=s.exhaustive,
        expansions=s.expansions,
    )
    if s.exhaustive:
        report.update(
            reciprocal_sum=sum(1.0 / ell for ell in s.lengths),
            odd_length_count=sum(1 for ell in s.lengths if ell % 2),
            longest_run={p: list(longest_run(s, p)) for p in ("any", "even", "odd")},
        )
    if want:
        cert = cycle_set_to_dict(s.witnesses, s.exhaustive_up_to, g, {"seed": args.seed, "budgets": budgets})
        _emit(cert, args.certificate)
    _emit(report, args.output)
    return 0


def cmd_girth(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    gi = girth(g)
    report = _header("girth", args, {})
    report.update(vertices=g.n, edges=g.m, girth=None if gi == math.inf else gi, acyclic=gi == math.inf)
    _emit(report, args.output)
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    budgets = {"candidates": 48}
    if args.mode == "girth":
        cert = consecutive_even_cycles(g, args.d, seed=args.seed)
    else:
        if args.expansion_size is None:
            raise UsageError("--mode generalized needs --expansion-size")
        m = args.expansion_size
        cert = generalized_pipeline(g, lambda _d: m, args.min_degree_factor, args.d, seed=args.seed)
    _emit(family_to_dict(cert, g, {"seed": args.seed, "budgets": budgets}), args.output)
    return 0


def cmd_chromatic(args: argparse.Namespace) -> int:
    g = _read_graph(args.input, args.format)
    budgets = {"branch_nodes": args.chi_budget, "node_expansions": args.budget}
    meta = {"seed": args.seed, "budgets": budgets}
    if args.op == "chi":
        chi, w = chromatic_number(g, args.chi_budget)
        _emit(coloring_to_dict(w, g, meta), args.output)
        return 0
    if args.op == "pipeline":
        cert = consecutive_cycles_chromatic(g, args.seed, args.chi_budget, args.budget)
        _emit(family_to_dict(cert, g, meta), args.output)
        return 0
    report = _header("chromatic", args, budgets)
    if args.op == "critical":
        d = args.d if args.d is not None else chromatic_number(g, args.chi_budget)[0]
        h = critical_subgraph(g, d, args.chi_budget)
        report.update(d=d, vertices=list(h.labels), edges=[[h.labels[u], h.labels[v]] for u, v in h.sorted_edges()])
    else:
        res = gyarfas_check(g, args.budget, args.chi_budget)
        report.update(chi=res.chi, odd_length_count=res.odd_count, required=res.required, passes=res.passes)
    _emit(report, args.output)
    return 0


def _hfree(text: str) -> HFreeSpec:
    parts = text.split(":")
    try:
        if parts[0] == "even_cycle" and len(parts) == 2:
            return HFreeSpec.even_cycle(int(parts[1]))
        if parts[0] == "r_half" and len(parts) in (2, 3):
            return HFreeSpec.r_half_bounded(int(parts[1]), float(parts[2]) if len(parts) == 3 else None)
        if parts[0] == "generic" and len(parts) == 3:
            return HFreeSpec.generic(Fraction(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise UsageError(f"bad H-free spec {text!r}: {exc}") from None
    raise UsageError(f"bad H-free spec {text!r}; use even_cycle:K, r_half:R[:C] or generic:T:C")


def cmd_bound(args: argparse.Namespace) -> int:
    report = _header("bound", args, {})
    if args.moore:
        d, gi = args.moore
        report.update(quantity="moore", d=d, girth=gi, value=moore_bound(d, gi))
    elif args.lemma10:
        a, b, d = Fraction(args.lemma10[0]), Fraction(args.lemma10[1]), int(args.lemma10[2])
        need, size = turan_expansion_size(a, b, d)
        report.update(quantity="lemma10", min_degree_required=need, expansion_size=size)
    elif args.hfree:
        h = _hfree(args.hfree)
        t, run = hfree_exponents(h)
        report.update(quantity="hfree", t=str(t), run_exponent=str(run))
        if args.n is not None:
            n, _ = _big(args.n)
            report["ex_bound"] = ex_bound(n, h, args.constant)
    elif args.log_star:
        n, log2 = _big(args.log_star)
        report.update(quantity="log_star", value=log_star(n=n) if n is not None else log_star(log2_n=log2))
    elif args.section4 is not None:
        i = args.section4
        exponent, two_ln_alpha = section4_comparison(i)
        report.update(quantity="section4", i=i, ln_sigma=str(section4_sigma(i)), bound_exponent=exponent, two_ln_alpha=two_ln_alpha)
    elif args.corollary4:
        sigma = sequence_by_name(args.corollary4[0])
        n, log2 = _big(args.corollary4[1])
        res = corollary4_bound(sigma, n=n) if n is not None else corollary4_bound(sigma, log2_n=log2)
        report.update(
            quantity="corollary4",
            sequence=sigma.name,
            exponent=res.exponent,
            log_star=res.log_star,
            constant=res.constant,
            greedy_values=list(res.greedy_values),
            greedy_checked=res.greedy_checked,
        )
    elif args.theorem3:
        sigma = sequence_by_name(args.theorem3[0])
        n, log2 = _big(args.theorem3[1])
        kw = {"n": n} if n is not None else {"ln_n": log2 * math.log(2)}
        if args.optimize:
            best = optimize_theorem3(sigma, budget=args.candidates, **kw)
            choice, r, b = best.choice, best.r, best.bound
            report["candidates"] = best.candidates
        else:
            if args.pi:
                choice = SubsequenceChoice(tuple(int(x) for x in args.pi.split(",")))
            else:
                depth = args.r or (log_star(n=n) if n is not None else log_star(log2_n=log2))
                choice = greedy_tower_choice(sigma, depth)
            r = args.r or choice.depth
            b = theorem3_bound(sigma, choice, r, **kw)
        report.update(
            quantity="theorem3",
            sequence=sigma.name,
            pi=[str(v) for v in choice.values],
            r=r,
            deltas=[str(delta(sigma, choice, i)) for i in range(1, r + 1)],
            exponent=b.exponent,
            exponent_precise=b.precise,
            terms=b.terms,
        )
    else:
        raise UsageError("bound needs one of --moore, --theorem3, --corollary4, --lemma10, --hfree, --log-star, --section4")
    _emit(report, args.output)
    return 0


def cmd_scan(args: argparse.Namespace) -> int:
    src = args.source
    if src[0] == "file" and len(src) == 2:
        source = _stream(src[1], args.format)
        limit, seed = args.limit, None
    elif src[0] == "random" and len(src) == 5:
        n, d, count, seed = (int(x) for x in src[1:])
        if args.target == "pow2":
            source = random_cubic_source(n, seed) if d == 3 else random_min_degree_source(n, d, seed)
        else:
            source = random_gnp_source(n, n, min(1.0, d / max(1, n - 1)), seed)
        limit = count
    else:
        raise UsageError("--source takes 'file PATH' or 'random N D COUNT SEED'")
    if args.target == "pow2":
        rep = erdos_gyarfas_scan(source, limit, args.budget, seed)
    else:
        rep = power_plus_one_scan(source, limit, args.budget, args.chi_budget, seed)
    report = _header("scan", args, {"node_expansions": args.budget, "branch_nodes": args.chi_budget})
    report["seed"] = seed
    report.update(rep.to_dict())
    _emit(report, args.output)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    g = _read_graph(args.graph, args.format)
    data = parse_certificate(_read_text(args.certificate))
    verdict = verify_certificate(g, data)
    _emit({"valid": verdict.ok, "problems": list(verdict.problems)}, args.output)
    if not verdict.ok:
        for p in verdict.problems[:10]:
            print(f"verify: {p}", file=sys.stderr)
        if len(verdict.problems) > 10:
            print(f"verify: ... {len(verdict.problems) - 10} more", file=sys.stderr)
    return 0 if verdict.ok else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cyclespectra", description="Cycle-length spectra and certificates.")
    ap.add_argument("--version", action="version", version=f"cyclespectra {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="graph file, or - for stdin")
        p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
        p.add_argument("--output", help="write here instead of stdout")

    p = sub.add_parser("gen", help="emit a named or random graph")
    p.add_argument("--kind", required=True, choices=sorted(set(GEN_ARITY) | set(CAGES)))
    p.add_argument("--params", nargs="*", default=[])
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    common(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("spectrum", help="set of cycle lengths")
    graph_input(p)
    common(p)
    p.add_argument("--max-len", type=int)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--certificate", help="also write a witness certificate here")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("girth", help="length of a shortest cycle")
    graph_input(p)
    common(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("pipeline", help="certificate of consecutive even cycle lengths")
    graph_input(p)
    common(p)
    p.add_argument("--mode", choices=("girth", "generalized"), default="girth")
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--expansion-size", type=int)
    p.add_argument("--min-degree-factor", type=int, default=1)
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("chromatic", help="chromatic number and odd-theta pipeline")
    graph_input(p)
    common(p)
    p.add_argument("--op", choices=("chi", "critical", "pipeline", "gyarfas"), default="chi")
    p.add_argument("--d", type=int)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--chi-budget", type=_positive, default=CHI_BUDGET)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("bound", help="closed-form bounds")
    common(p)
    what = p.add_mutually_exclusive_group(required=True)
    what.add_argument("--moore", nargs=2, type=int, metavar=("D", "G"))
    what.add_argument("--theorem3", nargs=2, metavar=("SIGMA", "N"))
    what.add_argument("--corollary4", nargs=2, metavar=("SIGMA", "N"))
    what.add_argument("--lemma10", nargs=3, metavar=("A", "B", "D"))
    what.add_argument("--hfree", metavar="SPEC")
    what.add_argument("--log-star", metavar="N")
    what.add_argument("--section4", type=int, metavar="I")
    p.add_argument("--optimize", action="store_true")
    p.add_argument("--candidates", type=_positive, default=400)
    p.add_argument("--pi", help="comma-separated subsequence values")
    p.add_argument("--r", type=int)
    p.add_argument("--n", help="vertex count for --hfree")
    p.add_argument("--constant", type=float)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("scan", help="search a graph stream for counterexample candidates")
    common(p)
    p.add_argument("--target", choices=("pow2", "pow2plus1"), required=True)
    p.add_argument("--source", nargs="+", required=True, metavar="ARG")
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--limit", type=_positive)
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    p.add_argument("--chi-budget", type=_positive, default=CHI_BUDGET)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="replay a certificate against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--certificate", required=True)
    p.add_argument("--format", choices=("edgelist", "graph6"), default="edgelist")
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)
    return ap


def dispatch(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError, OSError, OverflowError, GeneratorError, FormatError, SequenceError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch())


if __name__ == "__main__":
    main()
