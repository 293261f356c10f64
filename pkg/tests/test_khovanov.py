from __future__ import annotations

import pytest
from hypothesis import given, settings

from plathom.diagram import PlatWord, link_signs, resolve, smooth
from plathom.homology import apply_move
from plathom.khovanov import _edge, kh_complex, kh_delta, kh_homology, kh_signs
from strategies import words

W = PlatWord.from_ints

# standard tables (right-handed trefoil, its mirror, negative Hopf link)
KNOWN = [
    (W(1, []), {(0, 1): 1, (0, -1): 1}),
    (W(1, [1]), {(0, 1): 1, (0, -1): 1}),
    (W(1, [-1]), {(0, 1): 1, (0, -1): 1}),
    (W(2, [2, 2, 2]), {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}),
    (W(2, [-2, -2, -2]), {(0, -1): 1, (0, -3): 1, (-2, -5): 1, (-3, -9): 1}),
    (W(2, [2, 2]), {(0, 0): 1, (0, -2): 1, (-2, -4): 1, (-2, -6): 1}),
    (W(3, []), {(0, 3): 1, (0, 1): 3, (0, -1): 3, (0, -3): 1}),
]


@pytest.mark.parametrize("w,expected", KNOWN)
def test_known_tables(w, expected):
    assert kh_homology(w) == expected


def test_trefoil_delta():
    assert kh_delta(W(2, [2, 2, 2])) == {1: 2, 3: 2}


def test_merge_kills_x1x2():
    # two circles u merge into one circle v
    circ_u = [frozenset({1}), frozenset({2})]
    circ_v = [frozenset({1, 2})]
    assert _edge(circ_u, circ_v, frozenset({0, 1})) == []
    assert _edge(circ_u, circ_v, frozenset({0})) == [(frozenset({0}), 1)]
    assert _edge(circ_u, circ_v, frozenset()) == [(frozenset(), 1)]


def test_split_sends_one_to_x1_plus_x2():
    circ_u = [frozenset({1, 2})]
    circ_v = [frozenset({1}), frozenset({2})]
    assert sorted(_edge(circ_u, circ_v, frozenset()), key=lambda t: sorted(t[0])) == \
        [(frozenset({0}), 1), (frozenset({1}), 1)]
    assert _edge(circ_u, circ_v, frozenset({0})) == [(frozenset({0, 1}), 1)]


def jones_state_sum(w: PlatWord) -> dict[int, int]:
    """Unnormalized Jones polynomial from circle counts of the singular resolutions."""
    signs = link_signs(w)
    n_plus = sum(1 for s in signs if s > 0)
    n_minus = len(signs) - n_plus
    out: dict = {}
    m = len(w)
    for mask in range(2 ** m):
        bits = tuple(mask >> c & 1 for c in range(m))
        k = smooth(resolve(w, bits)).circle_count
        h = sum(bits) - n_minus
        shift = sum(bits) + n_plus - 2 * n_minus
        for t in range(k + 1):
            coeff = 1
            for i in range(t):
                coeff = coeff * (k - i) // (i + 1)
            q = shift + k - 2 * t
            out[q] = out.get(q, 0) + (-1) ** h * coeff
    return {q: c for q, c in out.items() if c}


def euler(dims: dict) -> dict[int, int]:
    out: dict = {}
    for (h, q), d in dims.items():
        out[q] = out.get(q, 0) + (-1) ** h * d
    return {q: c for q, c in out.items() if c}


@given(words(max_pairs=2, max_len=5))
@settings(max_examples=40, deadline=None)
def test_euler_characteristic_is_jones(w):
    assert euler(kh_homology(w)) == jones_state_sum(w)


@given(words(max_pairs=2, max_len=5))
@settings(max_examples=40, deadline=None)
def test_differential_squares_to_zero(w):
    assert kh_complex(w).d_squared_zero()


@given(words(max_pairs=2, max_len=5))
@settings(max_examples=40, deadline=None)
def test_signs_agree_with_diagram_module(w):
    assert tuple(kh_signs(w)) == link_signs(w)


@given(words(max_pairs=2, max_len=3))
@settings(max_examples=25, deadline=None)
def test_reidemeister_ii_invariance(w):
    w2 = apply_move("RII", w, (len(w), 1), 1)
    assert kh_homology(w) == kh_homology(w2)
