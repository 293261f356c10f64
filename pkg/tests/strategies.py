"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from hypothesis import strategies as st

from plathom.diagram import PlatWord


@st.composite
def words(draw, max_pairs=3, max_len=5):
    n = draw(st.integers(1, max_pairs))
    gens = st.integers(1, 2 * n - 1).flatmap(lambda p: st.sampled_from([p, -p]))
    return PlatWord.from_ints(n, draw(st.lists(gens, max_size=max_len)))


@st.composite
def resolutions(draw, **kw):
    w = draw(words(**kw))
    bits = draw(st.lists(st.integers(0, 1), min_size=len(w), max_size=len(w)))
    return w, tuple(bits)
