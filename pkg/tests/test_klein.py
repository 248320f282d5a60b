import pytest
from hypothesis import given, settings, strategies as st

from dehntwist import klein
from dehntwist.klein import HOLE, PUNCT, KHole, KPunct

bits = st.integers(0, 1)
punct = st.builds(KPunct, st.integers(-50, 50), bits, bits)
hole = st.builds(KHole, st.integers(-50, 50), st.integers(-6, 6))
elements = st.one_of(st.tuples(punct, punct, punct), st.tuples(hole, hole, hole))


@settings(max_examples=1000)
@given(elements)
def test_group_axioms(triple):
    x, y, z = triple
    e = type(x)(0)
    assert (x * y) * z == x * (y * z)
    assert x * e == x == e * x
    assert x * x.inverse() == e == x.inverse() * x


@given(punct)
def test_punct_order_two_elements(x):
    is_involution = x * x == KPunct(0) and x != KPunct(0)
    assert is_involution == (x.e == 1 or (x.n == 0 and x.d == 1))


def test_examples():
    assert KPunct(1, 1, 0) * KPunct(1, 0, 0) == KPunct(0, 1, 0)
    assert KHole(0, 1) * KHole(1, 0) * KHole(0, -1) == KHole(-1, 0)


def test_presentation_relations():
    t, v, s = (PUNCT.generators[k] for k in ("t_a", "v", "sigma"))
    assert v * v == s * s == PUNCT.identity
    assert all(s * g == g * s for g in PUNCT.generators.values())
    assert v * t * v.inverse() == t.inverse()
    assert s * t * s.inverse() == t
    sv = HOLE.generators["sigma_v"]
    assert sv * HOLE.twist * sv.inverse() == HOLE.twist.inverse()


@pytest.mark.parametrize("group", [PUNCT, HOLE])
def test_center_inside_centralizer(group):
    center = klein.center(group)
    cent = klein.twist_centralizer(group)
    for z in center:
        assert all(z * g == g * z for g in group.generators.values())
        assert z * group.twist == group.twist * z
    assert all(g * group.twist == group.twist * g for g in cent)


def test_v_does_not_centralize():
    v = PUNCT.generators["v"]
    assert v * PUNCT.twist != PUNCT.twist * v


def test_solver_finds_whole_twist_line():
    sol = klein.solve_commuting(PUNCT, [PUNCT.twist])
    assert sol == {(0, 0): "all", (0, 1): "all"}
    assert klein.solve_commuting(HOLE, HOLE.generators.values()) == {(0,): 0}


@given(st.integers(1, 10**6))
def test_twist_has_infinite_order(n):
    assert klein.power(PUNCT.twist, n) == KPunct(n)
    assert klein.power(HOLE.twist, -n) == KHole(-n)


@given(punct, st.integers(-20, 20))
def test_power_matches_repeated_product(x, n):
    y = KPunct(0)
    for _ in range(abs(n)):
        y = y * (x if n > 0 else x.inverse())
    assert klein.power(x, n) == y


def test_parse_element():
    assert klein.parse_element(PUNCT, "(1,1,0)") == KPunct(1, 1, 0)
    assert klein.parse_element(HOLE, "-3 2") == KHole(-3, 2)
    with pytest.raises(ValueError):
        klein.parse_element(PUNCT, "1,2,0")
    with pytest.raises(ValueError):
        klein.parse_element(HOLE, "1,2,0")


def test_curve_facts(goldens):
    checks = klein.klein_curve_facts(goldens)
    assert checks and all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_curve_facts_need_goldens(goldens):
    with pytest.raises(KeyError, match="klein_closed"):
        klein.klein_curve_facts({"klein_punct": goldens["klein_punct"]})
