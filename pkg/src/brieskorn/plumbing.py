"""Star-shaped plumbing graphs, their intersection forms, and the typing of the
maximal blow-down subgraph.

Vertex ids are stable: the center is 0, then each leg in order, outward from
the center.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import (SymIntMatrix, eval_neg_cont_frac, is_negative_definite, neg_cont_frac,
                    sparse_determinant)
from .errors import AmbiguousGammaPrime, ValidationError
from .seifert import SeifertData


@dataclass(frozen=True)
class PlumbingGraph:
    center: int
    legs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        legs = tuple(tuple(int(x) for x in leg) for leg in self.legs)
        if any(len(leg) == 0 for leg in legs):
            raise ValidationError("legs must be non-empty")
        object.__setattr__(self, "center", int(self.center))
        object.__setattr__(self, "legs", legs)

    @property
    def n(self) -> int:
        return len(self.legs)

    @property
    def size(self) -> int:
        return 1 + sum(len(leg) for leg in self.legs)

    def leg_ids(self, i: int) -> list[int]:
        start = 1 + sum(len(leg) for leg in self.legs[:i])
        return list(range(start, start + len(self.legs[i])))

    def framings(self) -> list[int]:
        out = [self.center]
        for leg in self.legs:
            out.extend(leg)
        return out

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for i in range(self.n):
            ids = self.leg_ids(i)
            out.append((0, ids[0]))
            out.extend(zip(ids, ids[1:]))
        return out

    def degrees(self) -> list[int]:
        deg = [0] * self.size
        for u, v in self.edges():
            deg[u] += 1
            deg[v] += 1
        return deg

    def seifert_data(self) -> SeifertData:
        """Read the Seifert invariants back off the legs (framings <= -2)."""
        if any(c > -2 for leg in self.legs for c in leg):
            raise ValidationError("leg framings must be <= -2 to read off Seifert data")
        return SeifertData(self.center, tuple(1 / eval_neg_cont_frac([-c for c in leg]) for leg in self.legs))

    def to_dot(self, name: str = "plumbing") -> str:
        lines = [f"graph {name} {{"]
        for v, f in enumerate(self.framings()):
            lines.append(f'  v{v} [label="{f}"];')
        for u, v in self.edges():
            lines.append(f"  v{u} -- v{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"center": self.center, "legs": [list(leg) for leg in self.legs]}


def standard_graph(s: SeifertData) -> PlumbingGraph:
    for r in s.multipliers:
        if not 0 < r < 1:
            raise ValidationError(f"multiplier {r} outside (0, 1)")
    return PlumbingGraph(s.e0, tuple(tuple(-c for c in neg_cont_frac(1 / r)) for r in s.multipliers))


def intersection_matrix(g: PlumbingGraph) -> SymIntMatrix:
    entries = {(v, v): f for v, f in enumerate(g.framings())}
    for u, v in g.edges():
        entries[(u, v)] = 1
    return SymIntMatrix.from_sparse(g.size, entries)


@dataclass(frozen=True)
class StandardGraphReport:
    leg_framings_ok: bool
    negative_definite: bool
    det: int
    unimodular: Optional[bool]
    bad_vertices: tuple[int, ...]

    @property
    def bad_vertex_count(self) -> int:
        return len(self.bad_vertices)

    @property
    def ok(self) -> bool:
        return (self.leg_framings_ok and self.negative_definite and self.unimodular is not False
                and self.bad_vertex_count <= 1 and set(self.bad_vertices) <= {0})

    def problems(self) -> list[str]:
        out = []
        if not self.leg_framings_ok:
            out.append("a leg vertex has framing > -2")
        if not self.negative_definite:
            out.append("intersection form is not negative definite")
        if self.unimodular is False:
            out.append(f"|det| = {abs(self.det)} != 1, not a homology sphere")
        if self.bad_vertex_count > 1 or not set(self.bad_vertices) <= {0}:
            out.append(f"bad vertices {list(self.bad_vertices)}")
        return out


def validate_standard(g: PlumbingGraph, expect_homology_sphere: bool = True) -> StandardGraphReport:
    q = intersection_matrix(g)
    det = sparse_determinant(q)
    deg = g.degrees()
    bad = tuple(v for v, f in enumerate(g.framings()) if f > -deg[v])
    return StandardGraphReport(
        leg_framings_ok=all(c <= -2 for leg in g.legs for c in leg),
        negative_definite=is_negative_definite(q),
        det=det,
        unimodular=(abs(det) == 1) if expect_homology_sphere else None,
        bad_vertices=bad,
    )


class GammaType(enum.Enum):
    EMPTY = "Empty"
    CENTER_ONLY = "CenterOnly"
    PARTIAL_LEG = "PartialLeg"
    TWO_LEGS = "TwoLegs"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class TwistingData:
    """Type of the maximal blow-down subgraph and the twisting number.

    ``prefixes`` lists ``(leg index, number of vertices)`` for the leg segments
    inside the subgraph; ``d1 >= d2`` (both 0 when the subgraph is empty).
    """

    gamma_type: GammaType
    d1: int
    d2: int
    consumed: frozenset[int]
    tw: int
    prefixes: tuple[tuple[int, int], ...] = ()

    def to_json(self):
        return {"type": str(self.gamma_type), "d1": self.d1, "d2": self.d2,
                "consumed": sorted(self.consumed), "tw": self.tw,
                "prefixes": [list(p) for p in self.prefixes]}


def _prefix_values(leg: tuple[int, ...]) -> list[Fraction]:
    """``r`` of every leg prefix: index k is the prefix of length k (0 -> r = 0)."""
    cs = [-c for c in leg]
    out = [Fraction(0)]
    for k in range(1, len(cs) + 1):
        out.append(1 / eval_neg_cont_frac(cs[:k]))
    return out


def gamma_prime(g: PlumbingGraph) -> TwistingData:
    """Maximal subgraph that blows down to nothing, and ``tw = -d1 - d2``.

    With central framing -1 the subgraph is the center plus initial segments
    of at most two legs whose Seifert data ``b1/d1 + b2/d2 = 1 - 1/(d1 d2)``
    describe the fibration of the torus knot ``T(d2, d1)``; an empty segment
    counts as ``0/1``. All such subgraphs must be nested, and the largest one
    is returned.
    """
    if g.center <= -2:
        return TwistingData(GammaType.EMPTY, 0, 0, frozenset(), -1)
    if g.center != -1:
        raise ValidationError(f"central framing {g.center} > -1: not a negative-definite standard graph")
    if any(c > -2 for leg in g.legs for c in leg):
        raise ValidationError("leg framings must be <= -2")
    values = [_prefix_values(leg) for leg in g.legs]
    candidates = {frozenset(): (1, 1, ())}
    for i in range(g.n):
        for j in range(i + 1, g.n):
            for pi, ri in enumerate(values[i]):
                for pj, rj in enumerate(values[j]):
                    di, dj = ri.denominator, rj.denominator
                    if ri + rj != 1 - Fraction(1, di * dj):
                        continue
                    ids = frozenset(g.leg_ids(i)[:pi] + g.leg_ids(j)[:pj])
                    prefixes = tuple((leg, k) for leg, k in ((i, pi), (j, pj)) if k)
                    candidates[ids] = (max(di, dj), min(di, dj), prefixes)
    chain = sorted(candidates, key=len)
    for small, big in zip(chain, chain[1:]):
        if not small <= big:
            raise AmbiguousGammaPrime(
                f"incomparable blow-down subgraphs {sorted(small)} and {sorted(big)}")
    best = chain[-1]
    d1, d2, prefixes = candidates[best]
    if d1 == 1:
        kind = GammaType.CENTER_ONLY
    elif d2 == 1:
        kind = GammaType.PARTIAL_LEG
    else:
        kind = GammaType.TWO_LEGS
    return TwistingData(kind, d1, d2, best | {0}, -d1 - d2, prefixes)
