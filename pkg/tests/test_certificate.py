import json

import pytest

from cyclespectra.certificate import (
    coloring_to_dict,
    cycle_set_to_dict,
    family_to_dict,
    graph_digest,
    parse_certificate,
    verify_certificate,
)
from cyclespectra.chromatic import chromatic_number, consecutive_cycles_chromatic
from cyclespectra.extraction import consecutive_even_cycles
from cyclespectra.generators import cage, complete, random_regular
from cyclespectra.io import FormatError
from cyclespectra.spectrum import cycle_spectrum


def round_trip(d):
    return parse_certificate(json.dumps(d))


@pytest.fixture(scope="module")
def family():
    g = random_regular(60, 10, seed=1)
    return g, round_trip(family_to_dict(consecutive_even_cycles(g), g, {"seed": 0}))


def test_family_certificate_verifies(family):
    g, data = family
    assert verify_certificate(g, data).ok
    assert data["graph"]["sha256"] == graph_digest(g)


def test_other_graph_is_rejected(family):
    g, data = family
    other = random_regular(60, 10, seed=2)
    verdict = verify_certificate(other, data)
    assert not verdict.ok and any("different graph" in p for p in verdict.problems)


@pytest.mark.parametrize(
    "mutate, fragment",
    [
        (lambda d: d["cycles"][0].append(d["cycles"][0][0]), "repeated vertex"),
        (lambda d: d["run"].update(count=d["run"]["count"] + 1), "run count"),
        (lambda d: d["run"].update(start=d["run"]["start"] + 2), "not the run"),
        (lambda d: d.update(extra=1), "unknown fields"),
        (lambda d: d.pop("stages"), "missing fields"),
        (lambda d: d.update(schema=2), "unsupported schema"),
        (lambda d: d.update(kind="magic"), "unknown certificate kind"),
        (lambda d: d["graph"].update(note="x"), "graph block"),
        (lambda d: d.update(cycles=[["a"]]), "lists of integers"),
    ],
)
def test_mutations_are_rejected(family, mutate, fragment):
    g, data = family
    bad = json.loads(json.dumps(data))
    mutate(bad)
    verdict = verify_certificate(g, bad)
    assert not verdict.ok
    assert any(fragment in p for p in verdict.problems), verdict.problems


def test_cycle_set_certificate():
    g = cage("petersen")
    s = cycle_spectrum(g, witnesses=True)
    data = round_trip(cycle_set_to_dict(s.witnesses, s.exhaustive_up_to, g))
    assert verify_certificate(g, data).ok
    data["lengths"][0] = 4
    assert not verify_certificate(g, data).ok


def test_coloring_certificate():
    g = complete(5)
    _, w = chromatic_number(g)
    data = round_trip(coloring_to_dict(w, g))
    assert verify_certificate(g, data).ok
    data["color_count"] = 4
    assert any("color_count" in p for p in verify_certificate(g, data).problems)
    data = round_trip(coloring_to_dict(w, g))
    data["colors"][0] = data["colors"][1]
    assert not verify_certificate(g, data).ok


def test_chromatic_family_certificate():
    g = complete(9)
    data = round_trip(family_to_dict(consecutive_cycles_chromatic(g), g))
    assert data["parity"] == "any" and verify_certificate(g, data).ok


def test_parse_errors():
    with pytest.raises(FormatError, match="line 1"):
        parse_certificate("{nope")
    with pytest.raises(FormatError, match="object"):
        parse_certificate("[1, 2]")
