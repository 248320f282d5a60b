"""Intersection-number witnesses behind the algebraic statements about twists.

None of these decide equality of mapping classes. Each one evaluates the
numerical core of an argument on a concrete instance and reports whether the
numbers come out as the argument needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bigon import minimal_position
from .overlay import Instance, swap_curves
from .regions import Complex
from .segments import build_gamma
from .twist import construct_twisted_overlay, oracle_intersection

HOLDS = "holds"
VIOLATED = "violated"
INAPPLICABLE = "inapplicable"


@dataclass(frozen=True)
class CriterionReport:
    name: str
    instance: str
    params: dict
    verdict: str
    witness: dict = field(default_factory=dict)
    # per-clause verdicts, for checks made of several clauses
    clauses: dict = field(default_factory=dict)
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.verdict != VIOLATED

    def summary(self) -> str:
        parts = [f"{k}={v}" for k, v in self.params.items()]
        parts += [f"{k}={v}" for k, v in self.witness.items()]
        parts += [f"clause{k}={v}" for k, v in self.clauses.items()]
        return f"{self.name} {self.verdict} " + " ".join(parts)


def _fold(verdicts) -> str:
    verdicts = list(verdicts)
    if VIOLATED in verdicts:
        return VIOLATED
    if verdicts and all(v == INAPPLICABLE for v in verdicts):
        return INAPPLICABLE
    return HOLDS


def check_inter_bounds(inst: Instance | Complex, n: int, name: str = "",
                       value: int | None = None) -> CriterionReport:
    """The three lower bounds for I(t_a^n(b), b), checked against the oracle.

    The third bound is only claimed when the component sizes leave room for
    it, i.e. when ``sum k_i^2 < m^2``; otherwise it is marked inapplicable.
    A precomputed oracle ``value`` may be passed in.
    """
    m = inst.m
    if m == 0:
        value, ks = 0, []
    else:
        if value is None:
            value = oracle_intersection(inst, n)
        ks = build_gamma(inst).ks
    clauses = {}
    clauses[1] = (HOLDS if value == abs(n) else VIOLATED) if m == 1 else INAPPLICABLE
    clauses[2] = HOLDS if value >= m else VIOLATED
    bound = (abs(n) - 1) * m * m + 2 * m - 2
    if m >= 1 and sum(k * k for k in ks) >= m * m:
        clauses[3] = INAPPLICABLE
    else:
        clauses[3] = HOLDS if value >= bound else VIOLATED
    positive = m == 0 or value > 0
    verdict = _fold(clauses.values())
    if not positive:
        verdict = VIOLATED
    return CriterionReport("inter_bounds", name, {"n": n, "m": m}, verdict,
                           {"I": value, "bound3": bound, "ks": ks}, clauses)


def distinct_twist_criterion(inst: Instance | Complex, j: int, k: int, name: str = "") -> CriterionReport:
    """Twisting b about a moves it, twisting b about itself does not."""
    params = {"j": j, "k": k, "m": inst.m}
    if inst.m == 0:
        return CriterionReport("distinct_twist", name, params, INAPPLICABLE,
                               note="disjoint curves give no witness")
    moved = oracle_intersection(inst, j)
    # t_b fixes b, so I(t_b^k(b), b) = I(b, b) = 0
    fixed = 0
    verdict = HOLDS if moved > fixed else VIOLATED
    return CriterionReport("distinct_twist", name, params, verdict, {"I_a": moved, "I_b": fixed})


def commutation_criterion(inst: Instance | Complex, j: int, k: int, name: str = "") -> CriterionReport:
    """If the curves meet, twisting a about b moves a, so the twists cannot commute.

    Only ``k`` enters the numbers; ``j`` is carried for the record.
    """
    params = {"j": j, "k": k, "m": inst.m}
    if inst.m == 0:
        return CriterionReport("commutation", name, params, HOLDS, note="disjoint curves")
    moved = oracle_intersection(swap_curves(inst), k)
    return CriterionReport("commutation", name, params, HOLDS if moved > 0 else VIOLATED,
                           {"I_ba": moved})


def twisted_partner(inst: Instance | Complex, k: int) -> Complex:
    """The pair (a, t_b^k(a)) in minimal position."""
    tw = construct_twisted_overlay(swap_curves(inst), k)
    reduced, _ = minimal_position(tw.complex)
    return swap_curves(reduced)


def braid_criterion(inst: Instance | Complex, j: int, k: int, name: str = "") -> CriterionReport:
    """Run the exclusion chain for the braid relation t_a^j t_b^k t_a^j = t_b^k t_a^j t_b^k.

    The relation forces I(b, t_a^j(b)) = I(a, b) and the third lower bound on
    that number. Pairs with two crossings that pass both are tested once more
    on (a, c) with c = t_a^j t_b^k(a), which needs I(c, t_a^j(c)) = I(a, b) too.
    The criterion holds when every surviving case has one crossing and
    ``|j| = 1``.
    """
    m = inst.m
    params = {"j": j, "k": k, "m": m}
    if m == 0:
        return CriterionReport("braid", name, params, INAPPLICABLE, note="disjoint curves")
    moved = oracle_intersection(inst, j)
    witness = {"I_b_tab": moved}
    inequality = m >= (abs(j) - 1) * m * m + 2 * m - 2
    survives = inequality and moved == m
    if survives and m == 2:
        partner = twisted_partner(inst, k)
        again = oracle_intersection(partner, j)
        witness["I_c_tac"] = again
        survives = again == m
    witness["survives"] = survives
    if not survives:
        return CriterionReport("braid", name, params, HOLDS, witness, note="excluded")
    verdict = HOLDS if m == 1 and abs(j) == 1 else VIOLATED
    return CriterionReport("braid", name, params, verdict, witness, note="survives")


def all_criteria(inst: Instance | Complex, n: int, j: int, k: int, name: str = "") -> list[CriterionReport]:
    return [check_inter_bounds(inst, n, name), distinct_twist_criterion(inst, j, k, name),
            commutation_criterion(inst, j, k, name), braid_criterion(inst, j, k, name)]
