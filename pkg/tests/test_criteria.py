import pytest

from dehntwist.criteria import (HOLDS, INAPPLICABLE, VIOLATED, braid_criterion, check_inter_bounds,
                                commutation_criterion, distinct_twist_criterion, twisted_partner)
from dehntwist.overlay import Instance, SignedOverlay


def disjoint():
    return Instance(SignedOverlay(0, (), (), ()))


def test_clause_one(goldens):
    rep = check_inter_bounds(goldens["torus_m1"].instance, 4)
    assert rep.clauses[1] == HOLDS and rep.witness["I"] == 4


def test_clause_three_orientable(goldens):
    rep = check_inter_bounds(goldens["orientable_m2"].instance, 1)
    assert rep.witness == {"I": 4, "bound3": 2, "ks": []}
    assert rep.clauses == {1: INAPPLICABLE, 2: HOLDS, 3: HOLDS}


def test_clause_three_guard():
    # b not generic: the graph is one component of size m, so the third bound is switched off
    from dehntwist.corpus import Filters, enumerate_instances
    entry = next(e for e in enumerate_instances(2, Filters(generic=False), min_crossings=2)
                 if e.gamma.ks == [2] and e.kind.punctures == 1)
    rep = check_inter_bounds(entry.instance, 1)
    assert rep.witness["I"] == 0
    assert rep.clauses[3] == INAPPLICABLE
    # but positivity still fails: these pairs lie outside the hypotheses
    assert rep.verdict == VIOLATED


def test_false_value_is_caught(goldens):
    rep = check_inter_bounds(goldens["orientable_m2"].instance, 1, value=1)
    assert rep.clauses[2] == VIOLATED and rep.verdict == VIOLATED


def test_distinct_twist(goldens):
    rep = distinct_twist_criterion(goldens["torus_m1"].instance, 2, -3)
    assert rep.verdict == HOLDS and rep.witness == {"I_a": 2, "I_b": 0}
    assert distinct_twist_criterion(disjoint(), 1, 1).verdict == INAPPLICABLE


def test_commutation(goldens):
    inst = goldens["braid"].instance
    reports = [commutation_criterion(inst, j, 1) for j in (1, 2, -5)]
    assert all(r.verdict == HOLDS for r in reports)
    assert len({r.witness["I_ba"] for r in reports}) == 1
    assert commutation_criterion(disjoint(), 1, 1).verdict == HOLDS


@pytest.mark.parametrize("j, survives, verdict", [(1, True, HOLDS), (2, False, HOLDS), (-1, True, HOLDS)])
def test_braid_one_crossing(goldens, j, survives, verdict):
    rep = braid_criterion(goldens["torus_m1"].instance, j, 1)
    assert rep.witness["survives"] is survives
    assert rep.verdict == verdict


def test_braid_two_crossings_excluded(goldens):
    rep = braid_criterion(goldens["braid"].instance, 1, 1)
    assert rep.verdict == HOLDS and rep.note == "excluded"
    assert rep.witness["I_b_tab"] == 2


def test_partner_of_braid_pair(goldens):
    # (a, t_b(a)) has two crossings, no one-sided segments, and twisting it about a gives 4|j|
    from dehntwist.segments import build_gamma
    from dehntwist.twist import oracle_intersection
    partner = twisted_partner(goldens["braid"].instance, 1)
    assert partner.m == 2
    assert build_gamma(partner).ks == []
    assert oracle_intersection(partner, 1) == 4


def test_braid_three_crossings(corpus):
    e = next(e for e in corpus if e.instance.m == 3)
    for j in (1, 2):
        rep = braid_criterion(e.instance, j, 1)
        assert rep.note == "excluded" and rep.verdict == HOLDS


def test_all_criteria_hold_on_corpus(corpus):
    from dehntwist.criteria import all_criteria
    for e in corpus[::7]:
        assert all(r.ok for r in all_criteria(e.instance, 1, 1, -1, e.name))
