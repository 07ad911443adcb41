import pathlib

import pytest

from kgraphs import (
    Degree,
    InvalidGraphError,
    ParseError,
    dual,
    parse_kgraph,
    serialize_kgraph,
)

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def read_fixture(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def test_t1_fixture_is_canonical(t1):
    # the shipped file is byte-identical to the canonical serialization
    assert serialize_kgraph(t1) == read_fixture("t1.kg")


def test_flip2_and_tors_fixtures_are_canonical(flip2, tors):
    assert serialize_kgraph(flip2) == read_fixture("flip2.kg")
    assert serialize_kgraph(tors) == read_fixture("tors.kg")


def test_parse_t1_fixture(t1):
    g = parse_kgraph(read_fixture("t1.kg"))
    assert g.rank == 2
    assert g.vertices == ("v",)
    assert sorted(g.edges) == ["b", "r"]
    assert len(g.squares) == 1
    assert serialize_kgraph(g) == serialize_kgraph(t1)


def test_color_out_of_range_has_line_number():
    text = "kgraph 1\nk 2\nvertex v\nedge b 3 v v\n"
    with pytest.raises(ParseError) as excinfo:
        parse_kgraph(text)
    assert any(
        lineno == 4 and "color out of range" in msg
        for lineno, msg in excinfo.value.diagnostics
    )


def test_parse_collects_multiple_diagnostics():
    text = (
        "kgraph 1\n"
        "k 2\n"
        "vertex v\n"
        "vertex v\n"            # duplicate
        "edge b 1 v w\n"        # unknown range
        "edge r 9 v v\n"        # color out of range
        "squiggle nope\n"       # unknown directive
    )
    with pytest.raises(ParseError) as excinfo:
        parse_kgraph(text)
    lines = [lineno for lineno, _ in excinfo.value.diagnostics]
    assert {4, 5, 6, 7} <= set(lines)


def test_parse_rejects_bad_squares():
    base = "kgraph 1\nk 2\nvertex v\nedge b 1 v v\nedge r 2 v v\n"
    with pytest.raises(ParseError) as excinfo:
        parse_kgraph(base + "square r b b r\n")
    assert any("colors must be i j j i" in msg for _, msg in excinfo.value.diagnostics)
    with pytest.raises(ParseError) as excinfo:
        parse_kgraph(base + "square b r r b\nsquare b r r b\n")
    assert any("already has a square" in msg for _, msg in excinfo.value.diagnostics)
    with pytest.raises(ParseError) as excinfo:
        parse_kgraph(base + "square b r r q\n")
    assert any("unknown edge" in msg for _, msg in excinfo.value.diagnostics)


def test_missing_square_fails_validation_on_parse():
    text = "kgraph 1\nk 2\nvertex v\nedge b 1 v v\nedge r 2 v v\n"
    with pytest.raises(InvalidGraphError) as excinfo:
        parse_kgraph(text)
    assert any("has no square" in p for p in excinfo.value.report.problems)
    # but the structure is loadable without validation
    g = parse_kgraph(text, require_valid=False)
    assert sorted(g.edges) == ["b", "r"]


def test_comments_and_blank_lines_ignored(t1):
    text = "# a k-graph\n\nkgraph 1\nk 2\n vertex v # inline\nedge b 1 v v\nedge r 2 v v\nsquare b r r b\n"
    assert serialize_kgraph(parse_kgraph(text)) == serialize_kgraph(t1)


def test_round_trip_on_corpus(corpus):
    for g in corpus:
        text = serialize_kgraph(g)
        assert serialize_kgraph(parse_kgraph(text)) == text


def test_dual_serialization_round_trips(flip2):
    # dual names contain brackets and commas; they survive the format
    dg = dual(flip2, Degree((1, 1)))
    text = serialize_kgraph(dg)
    assert serialize_kgraph(parse_kgraph(text)) == text


def test_dual_p0_serializes_identically(corpus):
    for g in corpus[:6]:
        assert serialize_kgraph(dual(g, Degree((0, 0)))) == serialize_kgraph(g)
