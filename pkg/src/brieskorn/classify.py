"""Classification search and per-manifold obstruction reports.

Verdicts are phrased as "obstructed" (a necessary condition fails, or a
theorem covers the case) or "not obstructed by this artifact". Nothing here
ever asserts that a filling exists.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Optional

from .arith import format_rational, sparse_determinant
from .dinv import correction_term
from .errors import AmbiguousGammaPrime, UnsupportedCase, ValidationError
from .plumbing import (GammaType, PlumbingGraph, TwistingData, gamma_prime, intersection_matrix,
                       standard_graph, validate_standard)
from .seifert import (BrieskornData, Family, SeifertData, brieskorn_to_seifert, euler_number,
                      family_membership, recognize_brieskorn, reverse_orientation)
from .surgery import SurgeryPresentation, complete_blow_down, d3_canonical, fillable_count


def brieskorn_tuples(a_max: int, n: int = 3, a_min: int = 2) -> Iterator[tuple[int, ...]]:
    """Pairwise coprime ``a_min <= a1 < ... < an <= a_max`` in lexicographic order."""
    def extend(prefix, start):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for x in range(start, a_max + 1):
            if all(gcd(x, y) == 1 for y in prefix):
                prefix.append(x)
                yield from extend(prefix, x + 1)
                prefix.pop()
    yield from extend([], a_min)


@dataclass(frozen=True)
class Invariants:
    seifert: SeifertData
    graph: PlumbingGraph
    twisting: TwistingData
    presentation: SurgeryPresentation
    count: int
    d3_can: Fraction


def invariants(s: SeifertData) -> Invariants:
    """Standard graph, blow-down and fillable-structure data of negative-definite ``s``."""
    g = standard_graph(s)
    rep = validate_standard(g, expect_homology_sphere=False)
    if not rep.negative_definite:
        raise ValidationError(f"{s} does not have a negative-definite standard graph")
    t = gamma_prime(g)
    p = complete_blow_down(g, t)
    return Invariants(s, g, t, p, fillable_count(p), d3_canonical(p))


@lru_cache(maxsize=None)
def brieskorn_invariants(a: tuple[int, ...]) -> Invariants:
    return invariants(brieskorn_to_seifert(BrieskornData(a)))


@lru_cache(maxsize=None)
def brieskorn_d(a: tuple[int, ...], method: str = "auto") -> Fraction:
    return correction_term(brieskorn_invariants(a).graph, method)


def search_two_fillable(a_max: int, *, n: int = 3, fillable: int = 2,
                        vanishing_d: bool = True) -> list[BrieskornData]:
    """Brieskorn spheres with exactly ``fillable`` fillable structures.

    With ``vanishing_d`` (the default) also require ``e0 = -1`` and ``d = 0``.
    """
    if n == 3 and a_max < 7:
        raise ValidationError("a_max must be at least 7")
    out = []
    for a in brieskorn_tuples(a_max, n):
        inv = brieskorn_invariants(a)
        if inv.count != fillable:
            continue
        if vanishing_d and (inv.seifert.e0 != -1 or brieskorn_d(a) != 0):
            continue
        out.append(BrieskornData(a))
    return out


def expected_two_fillable(a_max: int, k_max: Optional[int] = None) -> list[BrieskornData]:
    """``Sigma(3,4,5)``, ``Sigma(2,5,7)`` and ``Sigma(2,3,6k+1)`` within the bounds."""
    out = [BrieskornData((3, 4, 5)), BrieskornData((2, 5, 7))]
    k = 1
    while 6 * k + 1 <= a_max and (k_max is None or k <= k_max):
        out.append(BrieskornData((2, 3, 6 * k + 1)))
        k += 1
    return sorted((b for b in out if max(b.a) <= a_max), key=lambda b: b.a)


# ---------------------------------------------------------------------------
# obstruction reports

HOMOLOGY_BALL_NOTE = (
    "A Stein domain has no handles of index above 2; with an integral homology sphere as boundary "
    "this forces a rational homology ball Stein filling to be an integral homology ball.")
NO_HALF_TORSION = "for contact structures without half convex Giroux torsion"


@dataclass(frozen=True)
class Verdict:
    statement: str
    verdict: str
    evidence: dict = field(default_factory=dict)
    qualifiers: tuple[str, ...] = ()

    def to_json(self):
        return {"statement": self.statement, "verdict": self.verdict,
                "evidence": dict(self.evidence), "qualifiers": list(self.qualifiers)}


@dataclass(frozen=True)
class ObstructionReport:
    given: SeifertData
    model: SeifertData
    orientation: str
    brieskorn: Optional[BrieskornData]
    e0: int
    euler: Fraction
    d: Optional[Fraction]
    fillable_count: int
    tw: int
    d3_canonical: Fraction
    families: tuple[Family, ...]
    verdicts: tuple[Verdict, ...]

    def to_json(self):
        def sd(s):
            return {"e0": s.e0, "multipliers": [format_rational(r) for r in s.multipliers]}
        return {
            "manifold": {
                "given": sd(self.given),
                "orientation": self.orientation,
                "seifert": sd(self.model),
                "reversed": sd(reverse_orientation(self.model)),
                "brieskorn": list(self.brieskorn.a) if self.brieskorn else None,
            },
            "e0": self.e0,
            "euler": format_rational(self.euler),
            "d": None if self.d is None else format_rational(self.d),
            "count": self.fillable_count,
            "tw": self.tw,
            "d3_can": format_rational(self.d3_canonical),
            "families": [str(f) for f in self.families],
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def obstruction_report(s: SeifertData) -> ObstructionReport:
    """Evidence and theorem-level verdicts for ``s`` or, if ``e(s) > 0``, its reverse."""
    if s.n < 3:
        raise ValidationError("only lens spaces have a standard graph with two legs; need n >= 3")
    e = euler_number(s)
    if e == 0:
        raise ValidationError(f"{s} has e = 0 and is not a rational homology sphere")
    y = s if e < 0 else reverse_orientation(s)
    orientation = "canonical" if e < 0 else "reversed"
    inv = invariants(y)
    b = recognize_brieskorn(y)
    det = sparse_determinant(intersection_matrix(inv.graph))
    d = None
    if abs(det) == 1:
        d = correction_term(inv.graph)
    families = tuple(sorted(family_membership(y)))
    rev_e0 = reverse_orientation(y).e0

    verdicts = []
    failures = {}
    if d is not None and d != 0:
        failures["d"] = format_rational(d)
    if y.e0 != -1:
        failures["e0"] = y.e0
    if inv.d3_can != 0:
        failures["d3_can"] = format_rational(inv.d3_can)
    if failures:
        verdicts.append(Verdict("Y_xi_can_qhb_necessary_conditions", "obstructed", failures,
                                ("applies to xi_can and its conjugate",)))
    else:
        ev = {"d": None if d is None else format_rational(d), "e0": y.e0,
              "d3_can": format_rational(inv.d3_can)}
        quals = ("applies to xi_can and its conjugate",)
        if d is None:
            quals += ("d not computed: not an integral homology sphere",)
        verdicts.append(Verdict("Y_xi_can_qhb_necessary_conditions", "not obstructed by this artifact", ev, quals))

    if b is not None:
        exception = any(f.name == "TwoFillableException" for f in families)
        ev = {"manifold.brieskorn": list(b.a), "manifold.reversed.e0": rev_e0}
        if b.n == 3:
            verdicts.append(Verdict("minus_Y_qhb_symplectic_filling", "obstructed", ev,
                                    ("every contact structure on -Y",)))
            if exception:
                verdicts.append(Verdict("Y_xi_can_qhb_symplectic_filling", "not obstructed by this artifact",
                                        {"families": [str(f) for f in families], "d": format_rational(d),
                                         "count": inv.count, "d3_can": format_rational(inv.d3_can)},
                                        ("existence of a filling is open",)))
            else:
                verdicts.append(Verdict("Y_xi_can_qhb_symplectic_filling", "obstructed",
                                        {"count": inv.count, "d": format_rational(d), "e0": y.e0},
                                        ("xi_can and its conjugate",)))
        else:
            verdicts.append(Verdict("minus_Y_qhb_symplectic_filling", "obstructed", ev, (NO_HALF_TORSION,)))
            verdicts.append(Verdict("Y_xi_can_qhb_symplectic_filling", "obstructed",
                                    {"manifold.brieskorn": list(b.a)}, ("xi_can and its conjugate",)))

    pseudo = [f for f in families if f.name == "PseudoconvexFamily"]
    if pseudo:
        verdicts.append(Verdict("minus_Y_pseudoconvex_boundary",
                                f"bounds a pseudo-convex domain in C^2 (family a={dict(pseudo[0].params)['a']})",
                                {"families": [str(f) for f in pseudo], "manifold.reversed.e0": rev_e0},
                                ("theorem-level construction, not computed",)))
    else:
        verdicts.append(Verdict("minus_Y_pseudoconvex_boundary", "obstructed",
                                {"e0": y.e0, "manifold.reversed.e0": rev_e0, "families": [str(f) for f in families]},
                                ("without half convex Giroux torsion on the boundary",)))
    verdicts.append(Verdict("stein_qhb_filling_is_homology_ball", "note", {}, (HOMOLOGY_BALL_NOTE,)))

    return ObstructionReport(
        given=s, model=y, orientation=orientation, brieskorn=b, e0=y.e0, euler=euler_number(y), d=d,
        fillable_count=inv.count, tw=inv.twisting.tw, d3_canonical=inv.d3_can, families=families,
        verdicts=tuple(verdicts))


# ---------------------------------------------------------------------------
# case analysis for e0 = -1 candidates


@dataclass(frozen=True)
class CaseStep:
    rule: str
    description: str
    bound: Optional[Fraction] = None
    value: object = None

    def to_json(self):
        return {"rule": self.rule, "description": self.description,
                "bound": None if self.bound is None else format_rational(self.bound),
                "value": format_rational(self.value) if isinstance(self.value, Fraction) else self.value}


@dataclass(frozen=True)
class CaseTrace:
    graph: PlumbingGraph
    euler: Fraction
    gamma_type: Optional[GammaType]
    tw: Optional[int]
    verdict: str
    witness: Optional[CaseStep]
    survivor: Optional[BrieskornData] = None

    @property
    def consistent(self) -> bool:
        """A fired bound never exceeds the candidate's actual Euler number."""
        return self.witness is None or self.witness.bound is None or self.witness.bound <= self.euler

    def to_json(self):
        return {"graph": self.graph.to_json(), "euler": format_rational(self.euler),
                "gamma_type": None if self.gamma_type is None else str(self.gamma_type), "tw": self.tw,
                "verdict": self.verdict, "witness": None if self.witness is None else self.witness.to_json(),
                "survivor": None if self.survivor is None else list(self.survivor.a)}


def _twos_after(leg: tuple[int, ...], start: int) -> Optional[int]:
    """Number of trailing vertices from ``start`` if they are all -2, else None."""
    tail = leg[start:]
    return len(tail) if all(c == -2 for c in tail) else None


def _center_only_rules(g, e, budgets):
    n = g.n
    roots = [leg[0] for leg in g.legs]
    if n > 3:
        return CaseStep("center-only/n>3", "more than three legs", Fraction(n - 1, 3) + Fraction(1, 4) - 1)
    if -4 not in roots:
        return CaseStep("center-only/no-4", "no -4 vertex next to the center", 3 * Fraction(1, 3) - 1)
    threes = sorted(len(leg) - 1 for leg in g.legs if leg[0] == -3)
    a, c = threes
    b = len(next(leg for leg in g.legs if leg[0] == -4)) - 1
    if a >= 1 and c >= 1:
        return CaseStep("center-only/a,c>=1", "two -3 legs carry -2 vertices",
                        Fraction(2, 5) + Fraction(1, 4) + Fraction(2, 5) - 1)
    if c >= 2:
        return CaseStep("center-only/c>=2", "a -3 leg carries two or more -2 vertices",
                        Fraction(1, 3) + Fraction(1, 4) + Fraction(3, 7) - 1)
    if c == 0:
        return CaseStep("center-only/c=0", "two legs [-3]: multiplicities 3 and 3 are not coprime", value=3)
    if b >= 1:
        return CaseStep("center-only/b>=1", "the -4 leg carries -2 vertices", Fraction(3 * b - 1, 45 * b + 60), b)
    return None


def _partial_leg_rules(g, e, t):
    n = g.n
    a = t.d1 - 1
    chain_leg = t.prefixes[0][0]
    others = [leg for i, leg in enumerate(g.legs) if i != chain_leg]
    if n > 3:
        return CaseStep("partial-leg/n>3", "more than three legs",
                        Fraction(a, a + 1) + Fraction(n - 2, a + 3) + Fraction(1, a + 4) - 1, a)
    if -(a + 4) not in [leg[0] for leg in others]:
        return CaseStep("partial-leg/no-(a+4)", f"no -{a + 4} vertex next to the center",
                        Fraction(a, a + 1) + Fraction(2, a + 3) - 1, a)
    if a >= 2:
        return CaseStep("partial-leg/a>=2", "the -2 chain has length at least 2",
                        Fraction(a, a + 1) + Fraction(1, a + 3) + Fraction(1, a + 4) - 1, a)
    b = len(next(leg for leg in others if leg[0] == -5)) - 1
    c = len(next(leg for leg in others if leg[0] == -4)) - 1
    if c >= 2:
        return CaseStep("partial-leg/c>=2", "the -4 leg carries two or more -2 vertices",
                        Fraction(1, 2) + Fraction(1, 5) + Fraction(3, 10) - 1, c)
    if c == 0:
        return CaseStep("partial-leg/c=0", "legs [-2] and [-4]: multiplicities 2 and 4 are not coprime", value=2)
    if b >= 1:
        return CaseStep("partial-leg/b>=1", "the -5 leg carries -2 vertices", Fraction(2 * b - 1, 56 * b + 70), b)
    if len(g.legs[chain_leg]) > a:
        return CaseStep("partial-leg/longer", "the chain leg continues past the -2 chain",
                        Fraction(3, 5) + Fraction(1, 5) + Fraction(2, 7) - 1)
    return None


def _two_legs_rules(g, e, t, p):
    if (t.d2, t.d1) != (2, 3):
        tb = t.d1 * t.d2 - t.d1 - t.d2
        return CaseStep("two-legs/not-trefoil", f"T({t.d2},{t.d1}) has max tb {tb}: its copies need "
                        f"{tb - 1} or more stabilizations", value=tb)
    tori = [c for c in p.components if c.knot.kind == "Torus"]
    if len(tori) > 1:
        return CaseStep("two-legs/several-trefoils", "each trefoil copy is stabilized at least once",
                        value=len(tori))
    prefix_legs = {i: k for i, k in t.prefixes}
    if any(len(g.legs[i]) > k for i, k in prefix_legs.items()) and e > 0:
        return CaseStep("two-legs/longer", "a torus-knot leg continues past the blown-down segment", e, e)
    return None


def case_inequalities(g: PlumbingGraph) -> CaseTrace:
    """Replay the exclusion argument for a ``e0 = -1`` candidate graph.

    Returns the first rule that excludes the candidate, with the exact lower
    bound on ``e(Y)`` the rule provides (``e > 0``, or ``e >= 0``, rules the
    graph out as not negative definite), or marks it a survivor.
    """
    if g.center != -1:
        raise ValidationError(f"case analysis needs central framing -1, got {g.center}")
    s = g.seifert_data()
    e = euler_number(s)

    def done(step, gt=None, tw=None):
        return CaseTrace(g, e, gt, tw, "excluded", step)

    twos = [i for i, leg in enumerate(g.legs) if leg[0] == -2]
    if len(twos) > 1:
        bound = 1 + sum(Fraction(1, -leg[0]) for i, leg in enumerate(g.legs) if i not in twos[:2]) - 1
        return done(CaseStep("two-chains", "two legs start with -2", bound))
    try:
        t = gamma_prime(g)
    except AmbiguousGammaPrime as exc:
        return done(CaseStep("ambiguous", str(exc)))
    p = complete_blow_down(g, t, strict=False)
    gt, tw = t.gamma_type, t.tw

    step = None
    if gt is GammaType.TWO_LEGS:
        step = _two_legs_rules(g, e, t, p)
    if step is None:
        budgets = p.budgets
        if any(x < 0 or x > 1 for x in budgets) or sum(budgets) > 1:
            count = 0 if any(x < 0 for x in budgets) else fillable_count(p)
            step = CaseStep("count", f"budgets {list(budgets)}: not two fillable structures", value=count)
    if step is None:
        if gt is GammaType.CENTER_ONLY:
            step = _center_only_rules(g, e, p.budgets)
        elif gt is GammaType.PARTIAL_LEG:
            step = _partial_leg_rules(g, e, t)
    if step is None:
        det = sparse_determinant(intersection_matrix(g))
        if abs(det) != 1:
            step = CaseStep("not-homology-sphere", f"|det| = {abs(det)}", value=abs(det))
        elif e >= 0:
            step = CaseStep("indefinite", "e(Y) >= 0", e, e)
    if step is not None:
        return done(step, gt, tw)
    return CaseTrace(g, e, gt, tw, "survivor", None, recognize_brieskorn(s))
