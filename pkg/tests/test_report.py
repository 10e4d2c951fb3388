import json
from pathlib import Path

from cellstrat.config import Caps
from cellstrat.decompose import decompose_restriction, decompose_Uv
from cellstrat.partial import parse_partial
from cellstrat.perm import Composition
from cellstrat.report import SCHEMA, emit_report, render_text, report_obj

GOLDEN = Path(__file__).parent / "golden" / "flagship.json"
FLAGSHIP = parse_partial("L{1}L{2}L{3}L{4,5}L{6,7}U{8,9}")


def _flagship():
    return decompose_Uv(9, 5, 9, FLAGSHIP, Composition((7, 2)))


def _walk(obj):
    yield obj
    if isinstance(obj, dict):
        for v in obj.values():
            yield from _walk(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from _walk(v)


def test_golden_flagship():
    assert json.loads(emit_report(_flagship(), "json", Caps())) == json.loads(GOLDEN.read_text())


def test_json_is_byte_stable():
    assert emit_report(_flagship()) == emit_report(_flagship())


def test_schema_fields():
    obj = report_obj(_flagship())
    assert obj["schema"] == SCHEMA
    assert list(obj)[:4] == ["schema", "version", "kind", "instance"]
    assert obj["provenance"]["caps"] == Caps().as_dict()
    assert not any(isinstance(x, float) for x in _walk(obj))


def test_golden_content_matches_table():
    obj = json.loads(GOLDEN.read_text())
    rows = [(s["orbit_size"], s["labelled_order"], tuple(s["nu"])) for s in obj["summands"]]
    assert [r[1] for r in rows] == [48, 12, 24, 12, 16, 4, 16]
    assert [r[2] for r in rows] == [(3, 2), (3, 1, 1), (3, 1, 1), (3, 2), (2, 1, 2), (2, 1, 1, 1), (1, 2, 2)]
    assert obj["dimension"] == 180


def test_text_table():
    text = render_text(_flagship())
    lines = text.splitlines()
    assert "stabilizer order 96, 7 double cosets" in lines[1]
    assert lines[2].split()[:3] == ["i", "pi_i", "orbit"]
    assert len(lines) == 2 + 2 + 7 + 1
    assert lines[-1].endswith("dimension 180")
    assert all(line == line.rstrip() for line in lines)


def test_empty_restriction_rendering():
    d = decompose_restriction(4, 3, 2, Composition((2,)))
    assert render_text(d) == "[]"
    obj = json.loads(emit_report(d))
    assert obj["classes"] == [] and obj["dimension"] == 0


def test_restriction_report():
    d = decompose_restriction(4, 1, 2, Composition((1, 1)))
    obj = report_obj(d)
    assert obj["kind"] == "restriction"
    assert sum(c["class_size"] for c in obj["classes"]) > 0
    reps = [c["representative"] for c in obj["classes"]]
    assert reps == sorted(reps, key=lambda s: parse_partial(s))
    assert render_text(d).splitlines()[-1] == f"total dimension {d.dimension}"
