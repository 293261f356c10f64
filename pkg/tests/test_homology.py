from __future__ import annotations

from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

from plathom.chain import Resolution
from plathom.diagram import PlatWord, build_graph, resolve
from plathom.homology import (A, CubeHomology, GradedDims, WindowError, apply_move,
                              composition_product_check, graded_betti, graded_homology,
                              invariance_check, moy_check, moy_pair, resolution_homology,
                              total_homology, u_action_identities, vertex_homology)
from plathom.khovanov import kh_circles, kh_homology
from test_chain import dense_rank

W = PlatWord.from_ints


def simplicial_complex(facets):
    faces = set()
    for f in facets:
        for r in range(1, len(f) + 1):
            faces.update(combinations(sorted(f), r))
    by_dim: dict = {}
    for f in sorted(faces):
        by_dim.setdefault(len(f) - 1, []).append(f)
    return by_dim


def boundary(by_dim, k):
    """Columns of the boundary map from k-faces to (k-1)-faces."""
    lower = {f: i for i, f in enumerate(by_dim.get(k - 1, []))}
    cols = []
    for f in by_dim.get(k, []):
        col = {}
        if k > 0:
            for i in range(len(f)):
                col[lower[f[:i] + f[i + 1:]]] = (-1) ** i
        cols.append(col)
    return cols


def dense_betti(by_dim, k):
    def rk(j):
        cols = boundary(by_dim, j)
        rows = len(by_dim.get(j - 1, []))
        if not cols or not rows:
            return 0
        return dense_rank([[c.get(r, 0) for r in range(rows)] for c in cols])
    return len(by_dim.get(k, [])) - rk(k) - rk(k + 1)


facets = st.lists(st.lists(st.integers(0, 5), min_size=1, max_size=4, unique=True),
                  min_size=1, max_size=7)


@given(facets)
@settings(max_examples=60, deadline=None)
def test_graded_homology_matches_dense_oracle(fs):
    by_dim = simplicial_complex(fs)
    top = max(by_dim)
    # grading x = 2 * dim so the differential steps by -2
    d = lambda x: boundary(by_dim, x // 2) if x >= 0 else []  # noqa: E731
    size = lambda x: len(by_dim.get(x // 2, [])) if x >= 0 else 0  # noqa: E731
    gradings = range(2 * top + 2, -4, -2)
    dims, pieces = graded_homology(d, size, gradings)
    for k in range(top + 1):
        assert dims.get(2 * k, 0) == dense_betti(by_dim, k)
    assert graded_betti(d, size, gradings) == dims


def test_zero_differential():
    dims, _ = graded_homology(lambda x: [{}, {}, {}] if x == 0 else [],
                              lambda x: 3 if x == 0 else 0, [2, 0, -2])
    assert dims == {0: 3}


def test_window_error():
    with pytest.raises(WindowError):
        graded_homology(lambda x: [{}] if x == 0 else [], lambda x: 1 if x == 0 else 0, [0, -2])


def test_graded_dims():
    assert A.convolve(A) == {2: 1, 0: 2, -2: 1}
    assert GradedDims({1: 0, 2: 3}) == {2: 3}
    assert A.shifted(1).total == 2


def test_unknot_vertex_homology():
    vh, mr = resolution_homology(build_graph(1, ()))
    assert vh.dims == {1: 1, -1: 1} and mr.k == 1 and mr.ok


def test_single_singularization_vertex_homology():
    vh, mr = resolution_homology(build_graph(1, (1,)))
    assert vh.dims.total == 4 and mr.k == 2 and mr.ok


@pytest.mark.parametrize("bits", list(product((0, 1), repeat=3)))
def test_trefoil_resolutions(bits):
    w = W(2, [2, 2, 2])
    vh, mr = resolution_homology(resolve(w, bits))
    k = len(kh_circles(w, bits))
    assert mr.k == k and vh.dims.total == 2 ** k and mr.ok


def test_u_action_on_unknot():
    g = build_graph(1, ())
    vh = vertex_homology(Resolution(g))
    left, right = g.seg[0, 1], g.seg[0, 2]
    for q in (1, -1):
        u1, u2 = vh.u_matrix(left, q), vh.u_matrix(right, q)
        assert [{k: -v for k, v in c.items()} for c in u1] == u2
    assert any(vh.u_matrix(left, 1))
    assert u_action_identities(vh).ok


@given(st.sampled_from([(1, (1,)), (2, (2,)), (2, (1, 3)), (2, (2, 2)), (2, (1, 2))]))
@settings(max_examples=10, deadline=None)
def test_u_action_identities(case):
    vh, mr = resolution_homology(build_graph(*case))
    assert mr.ok
    rep = u_action_identities(vh)
    assert rep.ok and rep.checked > 0


@pytest.mark.parametrize("w", [W(1, []), W(1, [1]), W(1, [-1]), W(2, [2]), W(2, [2, 2, 2])])
def test_e2_is_khovanov(w):
    assert CubeHomology(w).e2() == kh_homology(w)


def test_trefoil_e2_classes():
    cube = CubeHomology(W(2, [2, 2, 2]))
    assert cube.e2() == {(0, 1): 1, (0, 3): 1, (2, 5): 1, (3, 9): 1}
    assert cube.d1_star_square_zero()


def test_total_homology():
    assert total_homology(W(1, [])) == {1: 1, -1: 1}
    assert total_homology(W(1, [1])) == {1: 1, -1: 1}
    assert total_homology(W(2, [2, 2, 2])) == {1: 2, 3: 2}


@pytest.mark.parametrize("kind,n,levels,site", [
    ("0", 1, (), None), ("0", 2, (2,), None), ("I", 1, (), "top"), ("II", 1, (1,), 0),
    ("IIIa", 2, (2,), 0), ("IIIb", 2, (2,), 0)])
def test_moy(kind, n, levels, site):
    r = moy_check(kind, n, levels, site)
    assert r.ok
    if kind in ("0", "II"):
        assert r.after == r.before.convolve(A)
    else:
        assert r.after == r.before


def test_moy_pair_shapes():
    assert moy_pair("0", 1, ()) == (2, ())
    assert moy_pair("IIIa", 2, (2,), 0) == (2, (2, 3, 2))
    assert moy_pair("IIIb", 2, (2,), 0) == (2, (2, 1, 2))


def test_moves_on_words():
    assert apply_move("RII", W(2, [2, 2, 2]), (3, 1)).as_ints() == [2, 2, 2, 1, -1]
    assert apply_move("RIII", W(2, [1, 2, 1]), 0).as_ints() == [2, 1, 2]
    assert apply_move("RI", W(1, []), "top", 1) == W(2, [2])


@pytest.mark.parametrize("move,w,site,sign", [
    ("twist_top", W(1, []), 1, 1), ("twist_bottom", W(1, []), 1, -1),
    ("RI", W(1, []), "top", 1), ("RI", W(1, []), "bottom", -1),
    ("RIII", W(2, [1, 2, 1]), 0, 1), ("cap_swap", W(2, []), 1, 1)])
def test_invariance(move, w, site, sign):
    assert invariance_check(move, w, site, sign).ok


@pytest.mark.parametrize("n,levels", [(1, ()), (1, (1,)), (2, (2,)), (2, (1,))])
def test_composition_product(n, levels):
    r = composition_product_check(build_graph(n, levels))
    assert r.ok and r.contributions > 0
