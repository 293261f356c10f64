from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from plathom.strands import (RULES, AlgebraError, LocalState, MonotoneBijection, StrandsAlgebra,
                             associativity_check, h_map, iso_check, quotient_An_normal_form,
                             relation_suite, rule_comparison, state_map)

Z2 = (0, 0, 0, 0)


@pytest.fixture(scope="module")
def a2():
    return StrandsAlgebra(2)


def test_product_of_two_moves(a2):
    p1 = a2.L(3, (1, 4))
    p2 = a2.R(1, (1, 3))
    assert p1 * p2 == a2.basis(Z2, (1, 4), (2, 3))
    assert not p2 * p1


def test_idempotents(a2):
    for s in a2.states:
        assert a2.iota(s) * a2.iota(s) == a2.iota(s)
        for t in a2.states:
            if t != s:
                assert not a2.iota(s) * a2.iota(t)
    total = a2.zero()
    for s in a2.states:
        total = total + a2.iota(s)
    assert total == a2.one()
    x = a2.R(2) + a2.u(1)
    assert a2.one() * x == x * a2.one() == x


def test_r5(a2):
    for i in a2.move_range():
        assert a2.R(i) * a2.L(i) == a2.iota_i(i) * a2.u(i)
        assert a2.L(i) * a2.R(i) == a2.iota_i(i + 1) * a2.u(i)


def test_r4_undefined_move_vanishes(a2):
    # r_1({1,2}) is undefined because slot 2 is occupied
    assert not a2.iota((1, 2)) * a2.R(1)
    assert a2.iota((1, 3)) * a2.R(1) == a2.R(1, (1, 3))


def test_rho_single_factor(a2):
    assert a2.rho(2, 3) == a2.R(2)
    assert a2.delta(3, 2) == a2.L(2)


def test_u_vanishes_on_full_neighbourhood(a2):
    assert not a2.u(1) * a2.iota((1, 2))
    assert a2.u(1) * a2.iota((1, 3))


@pytest.mark.parametrize("n", [1, 2])
def test_relation_suite(n):
    assert all(r.ok for r in relation_suite(n).values())


def test_quotient_kills_relations(a2):
    assert not quotient_An_normal_form(a2.R(2) * a2.R(1))
    assert not quotient_An_normal_form(a2.L(1) * a2.L(2))
    for s in a2.states:
        img = quotient_An_normal_form(a2.iota(s))
        assert img.tag == "Aq" and img.terms == a2.iota(s).terms
    with pytest.raises(AlgebraError):
        quotient_An_normal_form(StrandsAlgebra(1, "B").one())


def test_state_map():
    assert state_map(LocalState.from_midpoints(3, ["3/2"])) == (2,)
    assert state_map(LocalState.from_midpoints(3, ["5/2"])) == (1,)
    with pytest.raises(AlgebraError):
        state_map(LocalState(4, (1, 2)))


@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.integers(1, 2 * n), min_size=n, max_size=n, unique=True)
    .map(lambda xs: (n, tuple(sorted(xs))))))
def test_state_map_size(case):
    n, left = case
    assert len(state_map(LocalState(2 * n + 1, left), n)) == n


def test_monotone_bijection():
    f = MonotoneBijection((1, 3), (2, 4))
    assert f(1) == 2 and f(3) == 4 and not f.is_identity
    with pytest.raises(AlgebraError):
        MonotoneBijection((1,), (1, 2))


def test_h_images():
    aq = StrandsAlgebra(1, "A", True)
    bq = StrandsAlgebra(1, "B", True)
    # h(I_x) = iota_{S_x}, R'_2 -> L_1
    assert h_map(bq.iota((1,)), aq) == aq.iota((2,))
    assert h_map(bq.R(2), aq) == aq.L(1)
    assert not bq.u(1)


@pytest.mark.parametrize("n", [1, 2])
def test_iso_check(n):
    assert all(r.ok for r in iso_check(n, 2).values())


@pytest.mark.parametrize("kind,quotient", [("A", False), ("A", True), ("B", False), ("B", True)])
def test_associativity(kind, quotient):
    rep = associativity_check(StrandsAlgebra(2, kind, quotient), 2)
    assert rep.ok and rep.checked > 0


def test_only_ideal_rule_is_associative():
    res = rule_comparison(2, 2)
    assert set(res) == set(RULES)
    assert res["ideal"]["associativity"] and res["ideal"]["relations"]
    assert not any(res[r]["associativity"] for r in RULES if r != "ideal")


@st.composite
def triples(draw):
    alg = draw(st.sampled_from([StrandsAlgebra(2), StrandsAlgebra(2, "A", True),
                                StrandsAlgebra(2, "B", True)]))
    keys = list(alg.basis_keys(2))
    return alg, [alg.element({draw(st.sampled_from(keys)): 1}) +
                 alg.element({draw(st.sampled_from(keys)): draw(st.integers(-2, 2))})
                 for _ in range(3)]


@given(triples())
@settings(max_examples=100, deadline=None)
def test_associative_and_distributive(case):
    alg, (x, y, z) = case
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
