"""Acceptance suite: one test per criterion, each recording a PASS/FAIL line."""

from __future__ import annotations

import json
import math
import random
import statistics
import time

import pytest

from cyclespectra.bounds import (
    claim1_final_check,
    claim1_residuals,
    claim1_sequence,
    corollary4_bound,
    delta,
    log_star,
    moore_bound,
    theorem3_bound,
)
from cyclespectra.certificate import family_to_dict, verify_certificate
from cyclespectra.chromatic import consecutive_cycles_chromatic, gyarfas_check
from cyclespectra.cli import dispatch
from cyclespectra.conjectures import erdos_gyarfas_scan, power_plus_one_scan, random_gnp_source
from cyclespectra.extraction import ab_length_table, consecutive_even_cycles, posa_long_path, verify_expansion
from cyclespectra.generators import cage, complete, complete_bipartite, cycle, gnp, path, random_min_degree, random_regular, theta_graph, wheel
from cyclespectra.graph import girth, is_connected, max_cut_bipartite_subgraph, two_coloring
from cyclespectra.sequences import POWERS_OF_TWO, SubsequenceChoice, tower
from cyclespectra.spectrum import cycle_spectrum

from oracles import atlas, graph6_file, naive_spectrum, theorem3_reference


def test_01_spectrum_matches_oracle(acceptance):
    t0 = time.perf_counter()
    graphs = atlas(connected=True)
    graphs += [g for g in graph6_file("connected_sample_8_9.g6") if g.n == 8]
    graphs += [complete(n) for n in range(3, 9)] + [cycle(n) for n in range(3, 9)] + [path(n) for n in range(1, 9)]
    graphs += [complete_bipartite(r, s) for r in range(1, 5) for s in range(r, 9 - r)]
    graphs += [wheel(k) for k in range(3, 8)]
    graphs += [theta_graph(a, b, c).graph for a in range(1, 4) for b in range(max(a, 2), 5) for c in range(b, 6) if a + b + c - 1 <= 8]
    rng = random.Random(2024)
    for i in range(200):
        graphs.append(gnp(rng.randint(3, 8), rng.uniform(0.2, 0.9), seed=i))
    bad = [g for g in graphs if set(cycle_spectrum(g).lengths) != naive_spectrum(g)]
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60
    acceptance("1 spectrum oracle equivalence", ok, f"{len(graphs)} graphs, {len(bad)} mismatches, {elapsed:.1f} s")
    assert not bad
    assert elapsed < 60


def test_02_equality_cases(acceptance):
    sizes = {}
    for d in range(3, 7):
        sizes[f"K{d + 1}"] = (len(cycle_spectrum(complete(d + 1))), d - 1)
        sizes[f"K{d},{d}"] = (len(cycle_spectrum(complete_bipartite(d, d))), d - 1)
    ok = all(got == want for got, want in sizes.values())
    acceptance("2 equality for K_{d+1} and K_{d,d}", ok, ", ".join(f"{k}={v[0]}" for k, v in sizes.items()))
    assert ok


def test_03_moore_tightness(acceptance):
    cases = {"petersen": (3, 5, 10), "heawood": (3, 6, 14), "tutte_coxeter": (3, 8, 30)}
    got = {}
    for name, (d, gi, n) in cases.items():
        g = cage(name)
        got[name] = (girth(g), g.n, moore_bound(d, gi))
    ok = all(got[k] == (v[1], v[2], v[2]) for k, v in cases.items())
    acceptance("3 Moore tightness", ok, ", ".join(f"{k} girth {a} on {b}/{c}" for k, (a, b, c) in got.items()))
    assert ok


def test_04_dense_graphs_are_pancyclic(acceptance):
    graphs = graph6_file("min_degree_above_half_3_9.g6.gz")
    bad = [g for g in graphs if g.min_degree * 2 <= g.n or cycle_spectrum(g).lengths != tuple(range(3, g.n + 1))]
    ok = not bad and len(graphs) >= 500
    acceptance("4 pancyclicity above n/2", ok, f"{len(graphs)} graphs, {len(bad)} exceptions")
    assert ok


def test_05_max_cut_keeps_half_the_edges(acceptance):
    rng = random.Random(5)
    failures = 0
    for i in range(100):
        g = gnp(rng.randint(2, 60), rng.uniform(0.05, 0.9), seed=1000 + i)
        cut = max_cut_bipartite_subgraph(g)
        h = cut.subgraph
        if h.m < math.ceil(g.m / 2) or not h.edges <= g.edges or two_coloring(h) is None:
            failures += 1
    acceptance("5 max-cut half of the edges", failures == 0, f"100 graphs, {failures} failures")
    assert failures == 0


def test_06_posa_on_expanders(acceptance):
    graphs = atlas(connected=True) + graph6_file("mindeg3_connected_4_9.g6.gz")
    graphs += graph6_file("mindeg3_connected_squarefree_10.g6")
    graphs += [random_min_degree(10, k, seed=s, p=0.3) for k in (3, 4, 5) for s in range(100)]
    graphs += [complete(n) for n in range(2, 11)]
    checked = failures = 0
    for g in graphs:
        if not is_connected(g):
            continue
        for m in (1, 2):
            if not verify_expansion(g, m, "exhaustive").verified:
                continue
            checked += 1
            p = posa_long_path(g, m, seed=0)
            if not p.is_valid(g) or p.length < 3 * m:
                failures += 1
    ok = failures == 0 and checked > 0
    acceptance("6 Posa long paths", ok, f"{checked} (graph, m) pairs verified, {failures} failures")
    assert ok


def _theta_tables():
    for a in range(2, 7):
        for b in range(a, 7):
            for c in range(b, 7):
                g = theta_graph(a, b, c).graph
                masks, table = ab_length_table(g)
                colors = two_coloring(g)
                bip_mask = None
                if colors is not None:
                    side = colors[g.n - 1]
                    bip_mask = sum(1 << v for v in range(g.n - 1) if colors[v] != side)
                yield (a, b, c), g, masks, table, bip_mask


@pytest.mark.xfail(strict=True, reason="thetas have nontrivial partitions missing some AB-path lengths (see decisions ledger)")
def test_07_ab_paths_on_thetas(acceptance):
    t0 = time.perf_counter()
    exceptions = {"bipartite": 0, "non-bipartite": 0}
    bipartition_problems = []
    thetas = 0
    for abc, g, masks, table, bip_mask in _theta_tables():
        thetas += 1
        full = table[:, 1:].all(axis=1)
        for k in (~full).nonzero()[0]:
            if int(masks[k]) != bip_mask:
                exceptions["bipartite" if bip_mask is not None else "non-bipartite"] += 1
        if bip_mask is not None:
            row = table[bip_mask - 1]
            present = {ell for ell in range(1, g.n) if row[ell]}
            if not present or {ell % 2 for ell in present} != {1}:
                bipartition_problems.append(abc)
    elapsed = time.perf_counter() - t0
    ok = not any(exceptions.values()) and not bipartition_problems and elapsed < 120
    acceptance(
        "7 AB-path lengths on thetas",
        ok,
        f"{thetas} thetas, partitions missing a length: {exceptions}, "
        f"bipartition cases with both parities: {len(bipartition_problems)}, {elapsed:.1f} s",
    )
    assert ok


def test_07_what_holds_for_thetas():
    # When gcd(b - a, c - a) is 1 or 2, every partition other than the bipartition
    # sees all lengths below the longest cycle b + c (for a = b = c read the gcd as a).
    # Larger gcds can fail: theta(3, 3, 6) with A = {0, 1, 8} has no AB-path of length 3.
    # The bipartition itself sees exactly the odd lengths.
    for (a, b, c), g, masks, table, bip_mask in _theta_tables():
        others = masks != (bip_mask if bip_mask is not None else -1)
        if (math.gcd(b - a, c - a) or a) in (1, 2):
            assert table[others][:, 1 : b + c].all(), (a, b, c)
        if bip_mask is not None:
            row = table[bip_mask - 1]
            assert {ell for ell in range(1, g.n) if row[ell]} == set(range(1, g.n, 2)), (a, b, c)


SEEDS_PER_CELL = 10
SIZES = (50, 100, 200)
DEGREES = (8, 16, 24)


@pytest.fixture(scope="module")
def pipeline_runs():
    runs = {}
    for n in SIZES:
        for d in DEGREES:
            for s in range(SEEDS_PER_CELL):
                g = random_regular(n, d, seed=s)
                cert = consecutive_even_cycles(g, seed=s)
                verdict = verify_certificate(g, json.loads(json.dumps(family_to_dict(cert, g, {"seed": s}))))
                runs[n, d, s] = (cert.run[1], verdict.ok and cert.parity == "even")
    return runs


def test_08a_pipeline_certificates_verify(acceptance, pipeline_runs):
    bad = [k for k, (count, ok) in pipeline_runs.items() if not ok or count < 3]
    shortest = min(count for count, _ in pipeline_runs.values())
    ok = not bad and len(pipeline_runs) >= 50
    acceptance("8a pipeline certificate soundness", ok, f"{len(pipeline_runs)} runs, {len(bad)} bad, shortest run {shortest}")
    assert ok


@pytest.mark.xfail(strict=True, reason="median run length is not monotone in d at n = 50, 100 (see decisions ledger)")
def test_08b_pipeline_median_monotone_in_d(acceptance, pipeline_runs):
    medians = {
        (n, d): statistics.median(pipeline_runs[n, d, s][0] for s in range(SEEDS_PER_CELL)) for n in SIZES for d in DEGREES
    }
    broken = [n for n in SIZES if any(medians[n, a] > medians[n, b] for a, b in zip(DEGREES, DEGREES[1:]))]
    detail = "; ".join(f"n={n}: " + "/".join(f"{medians[n, d]:g}" for d in DEGREES) for n in SIZES)
    acceptance("8b pipeline median run monotone in d", not broken, detail)
    assert not broken


def test_09_chromatic_pipeline(acceptance):
    graphs = atlas(connected=False, min_n=1) + graph6_file("connected_sample_8_9.g6")
    failing = [g for g in graphs if not gyarfas_check(g).passes]
    equality = {2 * d + 1: gyarfas_check(complete(2 * d + 1)).odd_count for d in range(1, 5)}
    eq_ok = all(equality[2 * d + 1] == d for d in range(1, 5))
    k9 = complete(9)
    cert = consecutive_cycles_chromatic(k9)
    odd = any(ell % 2 for ell in cert.lengths)
    k9_ok = cert.is_valid(k9) and cert.run[1] >= 3 and odd and cert.stages[-1]["stage"] == "run"
    ok = not failing and len(graphs) >= 500 and eq_ok and k9_ok
    acceptance(
        "9 chromatic pipeline",
        ok,
        f"{len(graphs)} graphs, {len(failing)} failures; odd counts {equality}; K9 run {cert.run}",
    )
    assert ok


def test_10_theorem3_arithmetic(acceptance):
    pi = SubsequenceChoice(tuple(tower(i) for i in range(1, 5)))
    got = theorem3_bound(POWERS_OF_TWO, pi, 4, n=2**16).exponent
    ref = float(theorem3_reference(list(pi.values), [2**k for k in range(1, 17)], 2**16))
    t3_ok = abs(got - 28.419) <= 1e-3 and abs(got - ref) <= 1e-3

    deltas = [delta(POWERS_OF_TWO, pi, i) for i in range(1, 5)]
    log_a = claim1_sequence(pi, deltas, 4)
    residual = max(claim1_residuals(pi, deltas, log_a))
    last, cap = claim1_final_check(pi, deltas, 4)
    c1_ok = residual <= 1e-12 and math.isclose(float(log_a[0]), math.log(8), rel_tol=1e-12) and last < cap

    points = []
    for kw in ({"n": 2}, {"n": 16}, {"n": 2**16}, {"log2_n": 65536}):
        b = corollary4_bound(POWERS_OF_TWO, **kw)
        points.append((b.log_star, b.exponent))
    slope = 6 + 2 * math.log(4)
    linear = all(math.isclose(e, slope * ls + 2, rel_tol=1e-12) for ls, e in points)
    distinct = len({ls for ls, _ in points}) == len(points)
    ls_ok = [ls for ls, _ in points] == [log_star(n=2), log_star(n=16), log_star(n=2**16), log_star(log2_n=65536)]
    c4_ok = linear and distinct and ls_ok

    ok = t3_ok and c1_ok and c4_ok
    acceptance(
        "10 subsequence-bound arithmetic",
        ok,
        f"exponent {got:.6f} (reference {ref:.6f}); claim residual {residual:.1e}; corollary points {points}",
    )
    assert ok


def test_11_conjecture_scans(acceptance):
    stream = graph6_file("mindeg3_connected_4_9.g6.gz") + graph6_file("mindeg3_connected_squarefree_10.g6")
    rep = erdos_gyarfas_scan(stream)
    pow2_ok = rep.instances_checked == len(stream) and not rep.unknown and not rep.counterexample_candidates
    rep2 = power_plus_one_scan(random_gnp_source(9, 16, 0.55, seed=11), limit=1000)
    plus_ok = rep2.instances_checked == 1000 and not rep2.counterexample_candidates
    ok = pow2_ok and plus_ok
    acceptance(
        "11 conjecture scans",
        ok,
        f"pow2: {rep.instances_checked} graphs, {len(rep.unknown)} unknown, {len(rep.counterexample_candidates)} candidates; "
        f"pow2plus1: {rep2.instances_checked} graphs (chi >= 4), {len(rep2.counterexample_candidates)} candidates",
    )
    assert ok


def _mutate(data: dict) -> dict:
    bad = json.loads(json.dumps(data))
    if bad["kind"] == "coloring":
        bad["colors"] = [0] * len(bad["colors"])
        bad["color_count"] = 1
    else:
        cyc = bad["cycles"][0]
        cyc[0], cyc[-1] = cyc[-1], cyc[0]
        cyc.append(cyc[0])
    return bad


def test_12_cli_certificates_round_trip(acceptance, tmp_path, capsys):
    graphs = {
        "petersen.txt": ["gen", "--kind", "petersen"],
        "k9.txt": ["gen", "--kind", "complete", "--params", "9"],
        "rr.txt": ["gen", "--kind", "random_regular", "--params", "60", "10", "--seed", "3"],
        "theta.txt": ["gen", "--kind", "theta", "--params", "2", "3", "5"],
    }
    for name, argv in graphs.items():
        assert dispatch(argv + ["--output", str(tmp_path / name)]) == 0
    runs = []
    for gname in graphs:
        gp = str(tmp_path / gname)
        stem = gname.split(".")[0]
        runs += [
            (gp, ["spectrum", "--input", gp, "--certificate", str(tmp_path / f"{stem}.spec.json")], f"{stem}.spec.json"),
            (gp, ["chromatic", "--input", gp, "--op", "chi"], f"{stem}.chi.json"),
            (gp, ["chromatic", "--input", gp, "--op", "pipeline"], f"{stem}.chrom.json"),
            (gp, ["pipeline", "--input", gp], f"{stem}.even.json"),
        ]
    rr = str(tmp_path / "rr.txt")
    runs.append((rr, ["pipeline", "--input", rr, "--mode", "generalized", "--expansion-size", "1"], "rr.gen.json"))
    emitted = verified = rejected = declined = 0
    failures = []
    for gp, argv, cert_name in runs:
        cert_path = tmp_path / cert_name
        if "--certificate" not in argv:
            argv = argv + ["--output", str(cert_path)]
        else:
            argv = argv + ["--output", str(tmp_path / "report.json")]
        if dispatch(argv) != 0:
            # a pipeline may decline a graph; it must then leave no certificate behind
            declined += 1
            if cert_path.exists():
                failures.append(("partial output", cert_name))
            continue
        emitted += 1
        if dispatch(["verify", "--graph", gp, "--certificate", str(cert_path)]) == 0:
            verified += 1
        else:
            failures.append(("verify", cert_name))
        mutated = tmp_path / f"mutated.{cert_name}"
        mutated.write_text(json.dumps(_mutate(json.loads(cert_path.read_text()))))
        if dispatch(["verify", "--graph", gp, "--certificate", str(mutated)]) == 1:
            rejected += 1
        else:
            failures.append(("mutant accepted", cert_name))
    capsys.readouterr()
    ok = not failures and verified == rejected == emitted >= len(runs) - 2
    acceptance(
        "12 end-to-end certificates",
        ok,
        f"{emitted} emitted, {verified} verified, {rejected} mutants rejected, {declined} declined, problems {failures}",
    )
    assert ok
