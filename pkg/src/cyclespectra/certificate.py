"""JSON certificates for cycle families, spectrum witnesses and colourings.

Every certificate names the graph it speaks about by a digest of its
canonical edge list, so replaying it against a different graph fails even
when the cycles happen to fit. Unknown fields are rejected.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from .chromatic import ColoringWitness
from .extraction import CycleFamilyCertificate
from .graph import CycleWitness, Graph
from .io import FormatError, format_edge_list

SCHEMA = 1
KINDS = ("cycle_family", "cycle_set", "coloring")

_COMMON = {"schema", "kind", "tool", "version", "seed", "budgets", "graph"}
_FIELDS = {
    "cycle_family": _COMMON | {"parity", "run", "cycles", "stages"},
    "cycle_set": _COMMON | {"lengths", "cycles", "exhaustive_up_to"},
    "coloring": _COMMON | {"colors", "color_count"},
}
_GRAPH_FIELDS = {"n", "m", "sha256"}


def graph_digest(g: Graph) -> str:
    return hashlib.sha256(format_edge_list(g).encode()).hexdigest()


def _graph_block(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "sha256": graph_digest(g)}


def _header(kind: str, g: Graph, meta: dict) -> dict:
    from . import __version__

    return {
        "schema": SCHEMA,
        "kind": kind,
        "tool": "cyclespectra",
        "version": __version__,
        "seed": meta.get("seed"),
        "budgets": meta.get("budgets", {}),
        "graph": _graph_block(g),
    }


def family_to_dict(cert: CycleFamilyCertificate, g: Graph, meta: dict | None = None) -> dict:
    out = _header("cycle_family", g, meta or {})
    out.update(
        parity=cert.parity,
        run={"start": cert.run[0], "count": cert.run[1]},
        cycles=[list(c.vertices) for c in cert.cycles],
        stages=list(cert.stages),
    )
    return out


def cycle_set_to_dict(witnesses: dict[int, CycleWitness], exhaustive_up_to: int, g: Graph, meta: dict | None = None) -> dict:
    out = _header("cycle_set", g, meta or {})
    lengths = sorted(witnesses)
    out.update(lengths=lengths, cycles=[list(witnesses[ell].vertices) for ell in lengths], exhaustive_up_to=exhaustive_up_to)
    return out


def coloring_to_dict(w: ColoringWitness, g: Graph, meta: dict | None = None) -> dict:
    out = _header("coloring", g, meta or {})
    out.update(colors=list(w.colors), color_count=w.color_count)
    return out


def parse_certificate(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"column {exc.colno}: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict):
        raise FormatError("certificate must be a JSON object")
    return data


@dataclass(frozen=True)
class Verdict:
    ok: bool
    problems: tuple[str, ...]


def _int_list(x) -> bool:
    return isinstance(x, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in x)


def verify_certificate(g: Graph, data: dict) -> Verdict:
    """Replay a certificate against ``g``; every listed problem makes it fail."""
    problems: list[str] = []
    if data.get("schema") != SCHEMA:
        return Verdict(False, (f"unsupported schema {data.get('schema')!r}",))
    kind = data.get("kind")
    if kind not in KINDS:
        return Verdict(False, (f"unknown certificate kind {kind!r}",))
    extra = set(data) - _FIELDS[kind]
    missing = _FIELDS[kind] - set(data)
    if extra:
        problems.append(f"unknown fields {sorted(extra)}")
    if missing:
        problems.append(f"missing fields {sorted(missing)}")
    if problems:
        return Verdict(False, tuple(problems))
    block = data["graph"]
    if not isinstance(block, dict) or set(block) != _GRAPH_FIELDS:
        problems.append("graph block must have exactly n, m, sha256")
    elif block != _graph_block(g):
        problems.append("certificate was issued for a different graph")

    if kind == "coloring":
        colors = data["colors"]
        if not _int_list(colors):
            problems.append("colors must be a list of integers")
        else:
            w = ColoringWitness(tuple(colors))
            problems.extend(w.problems(g))
            if data["color_count"] != w.color_count:
                problems.append(f"color_count {data['color_count']} but {w.color_count} colours used")
        return Verdict(not problems, tuple(problems))

    raw = data["cycles"]
    if not isinstance(raw, list) or not all(_int_list(c) for c in raw):
        problems.append("cycles must be lists of integers")
        return Verdict(False, tuple(problems))
    cycles = [CycleWitness(tuple(c)) for c in raw]
    if kind == "cycle_set":
        lengths = data["lengths"]
        if not _int_list(lengths):
            problems.append("lengths must be a list of integers")
        elif lengths != [c.length for c in cycles]:
            problems.append("listed lengths do not match the cycles")
        for i, c in enumerate(cycles):
            problems.extend(f"cycle {i}: {msg}" for msg in c.problems(g))
        return Verdict(not problems, tuple(problems))

    run = data["run"]
    if not isinstance(run, dict) or set(run) != {"start", "count"} or not _int_list(list(run.values())):
        problems.append("run must have exactly the integers start and count")
        return Verdict(False, tuple(problems))
    if not isinstance(data["stages"], list):
        problems.append("stages must be a list")
    cert = CycleFamilyCertificate(tuple(cycles), data["parity"], (run["start"], run["count"]))
    problems.extend(cert.problems(g))
    return Verdict(not problems, tuple(problems))
