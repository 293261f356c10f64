from __future__ import annotations

import pytest
from hypothesis import given, settings

from plathom.diagram import (CAP, CUP, FOUR, DiagramError, PlatWord, cells, euler_defect,
                             format_plat, parse_plat, resolve, smooth)
from plathom.khovanov import kh_circles
from strategies import resolutions, words


def kinds(g):
    return [v.kind for v in g.vertices]


def test_parse_empty_word():
    w = parse_plat("n=1; word=[]")
    assert w.n_pairs == 1 and len(w) == 0


def test_parse_trefoil():
    w = parse_plat("n=2; word=[+2,+2,+2]")
    assert w.crossings == ((2, 1),) * 3
    assert w.strands == 4


@pytest.mark.parametrize("text", ["n=1; word=[+9]", "n=0; word=[]", "word=[+1]",
                                  "n=1; word=[+1,", "n=2; word=[0]"])
def test_parse_errors(text):
    with pytest.raises(DiagramError):
        parse_plat(text)


@given(words())
def test_format_parse_round_trip(w):
    assert parse_plat(format_plat(w)) == w


def test_trivial_graph():
    g = resolve(parse_plat("n=1; word=[]"), ())
    assert kinds(g).count(CUP) == 1 and kinds(g).count(CAP) == 1
    assert not g.four_valent and len(g.edges) == 2


def test_single_singularization():
    g = resolve(PlatWord.from_ints(1, [1]), (1,))
    assert len(g.four_valent) == 1 and len(g.edges) == 4
    assert kinds(g).count(CUP) == 1 and kinds(g).count(CAP) == 1


def test_trefoil_all_singular():
    g = resolve(PlatWord.from_ints(2, [2, 2, 2]), (1, 1, 1))
    assert len(g.four_valent) == 3
    assert len(g.edges) == 10


def test_negative_crossing_bit_zero_is_singular():
    g = resolve(PlatWord.from_ints(1, [-1]), (0,))
    assert [g.vertices[v].kind for v in g.four_valent] == [FOUR]
    assert not resolve(PlatWord.from_ints(1, [-1]), (1,)).four_valent


def test_circle_counts():
    assert smooth(resolve(PlatWord.from_ints(1, []), ())).circle_count == 1
    assert smooth(resolve(PlatWord.from_ints(1, [1]), (1,))).circle_count == 2
    w = PlatWord.from_ints(2, [2, 2, 2])
    assert smooth(resolve(w, (1, 1, 1))).circle_count == len(kh_circles(w, (1, 1, 1)))


def test_cells():
    assert len(cells(resolve(PlatWord.from_ints(1, []), ())).cells) == 1
    assert len(cells(resolve(PlatWord.from_ints(1, [1]), (1,))).cells) == 2
    assert euler_defect(resolve(PlatWord.from_ints(2, [2, 2, 2]), (1, 1, 1))) == 0


@given(resolutions())
@settings(max_examples=60)
def test_euler_relation(wb):
    assert euler_defect(resolve(*wb)) == 0


@given(resolutions())
@settings(max_examples=60)
def test_circle_count_matches_oracle(wb):
    w, bits = wb
    assert smooth(resolve(w, bits)).circle_count == len(kh_circles(w, bits))


@given(resolutions())
@settings(max_examples=40)
def test_resolve_is_deterministic(wb):
    a, b = resolve(*wb), resolve(*wb)
    assert a.vertices == b.vertices and a.edges == b.edges


@given(resolutions())
@settings(max_examples=40)
def test_edges_have_one_head_and_tail(wb):
    g = resolve(*wb)
    heads = sorted(e for v in g.vertices for e in v.ins)
    tails = sorted(e for v in g.vertices for e in v.outs)
    assert heads == tails == list(range(len(g.edges)))
