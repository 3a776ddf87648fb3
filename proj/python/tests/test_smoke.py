import json
import math
from pathlib import Path

import pytest

import clone_lattice as cl

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = (ROOT / "corpus" / "micro" / "sphinx_fixtures.c").read_text()


def test_version_and_kinds():
    assert cl.__version__ == "0.3.0"
    assert len(cl.NODE_KINDS) == 17
    assert cl.NODE_KINDS[0] == "ID"


def test_function_names():
    names = cl.function_names(FIXTURES)
    assert "mgau_eval" in names
    assert "fe_spec_magnitude_fft" in names


def test_slices():
    by_id = {(s["function"], s["pointer"]): s for s in cl.slices(FIXTURES)}
    s = by_id[("mgau_eval", "active")]
    assert s["vector"][:9] == [7, 2, 2, 2, 0, 1, 1, 1, 1]
    assert [name for name, _ in s["related"]] == ["j"]
    assert s["size"] == sum(s["vector"])


@pytest.mark.parametrize(
    "a, b, expected",
    [
        (("dict2pid_dump", "mdef->sseq"), ("gc_compute_closest_cw", "gs->codeword"), "true-clone"),
        (("mgau_eval", "active"), ("lextree_hmm_histbin", "list"), "false-positive"),
        (("fe_spec_magnitude", "IN"), ("fe_spec_magnitude_fft", "IN"), "false-positive"),
    ],
)
def test_verify(a, b, expected):
    verdict, _ = cl.verify(FIXTURES, *a, FIXTURES, *b)
    assert verdict == expected


def test_worked_feedback():
    a = [7, 2, 2, 2, 0, 1, 1, 1, 1]
    b = [8, 1, 1, 2, 1, 1, 1, 1, 1]
    assert cl.euclidean_distance(a, b) == pytest.approx(2.0)
    assert cl.hamming_distance(a, b) == pytest.approx(4.0)
    t = cl.cluster_threshold(0.75, 17, 17)
    assert t == pytest.approx(math.sqrt(8.5))
    assert cl.cluster([a, b], 0.75) == [[0, 1]]
    wa, wb, delta = cl.false_positive_feedback(a, b, 0.75)
    assert delta == 2.0
    assert cl.euclidean_distance(wa, wb) == pytest.approx(4.0)


def test_report_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((ROOT / "docs" / "report.schema.json").read_text())
    report = cl.analyze(ROOT / "corpus" / "micro", similarity=1.0)
    jsonschema.validate(report, schema)
    assert report["summary"]["clone_pairs"] > 0
    assert cl.analyze_json(str(ROOT / "corpus" / "micro")) == cl.analyze_json(str(ROOT / "corpus" / "micro"))


def test_empty_corpus(tmp_path):
    with pytest.raises(ValueError):
        cl.analyze(tmp_path)
