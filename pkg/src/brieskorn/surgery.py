"""Complete blow-down of a standard graph and the fillable contact structures.

The blow-down is carried out on the intersection form only. Each surviving
vertex becomes a Legendrian knot: an unknot (max tb = -1), or, when the
blown-down subgraph is the fibration of ``T(d2, d1)``, a copy of that torus
knot (max tb = d1 d2 - d1 - d2) for the vertices that were adjacent to the
center. Rotation numbers of a knot stabilized ``s`` times run over
``-s, -s+2, ..., s``; for positive torus knots this relies on their Legendrian
simplicity.

Convention: ``d3 = (v^T Q^{-1} v + m) / 4``. This is shifted by a constant from
the normalization ``d3(S^3, xi_std) = -1/2``; only comparisons with ``d(Y)``
matter here.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .arith import SymIntMatrix, integer_inverse, solve
from .errors import InternalTypingError, UnsupportedPresentation, ValidationError
from .plumbing import GammaType, PlumbingGraph, TwistingData, gamma_prime, intersection_matrix


@dataclass(frozen=True)
class Knot:
    """``Knot("Unknot")`` or ``Knot("Torus", d2, d1)``."""

    kind: str
    d2: int = 1
    d1: int = 1

    @property
    def tb_max(self) -> int:
        return self.d1 * self.d2 - self.d1 - self.d2

    def __str__(self):
        return "Unknot" if self.kind == "Unknot" else f"T({self.d2},{self.d1})"

    def to_json(self):
        if self.kind == "Unknot":
            return {"type": "Unknot"}
        return {"type": "Torus", "d2": self.d2, "d1": self.d1}


UNKNOT = Knot("Unknot")


@dataclass(frozen=True)
class Component:
    vertex: int
    knot: Knot
    framing: int
    tb_max: int
    budget: int

    def to_json(self):
        return {"vertex": self.vertex, "knot": self.knot.to_json(), "framing": self.framing,
                "tb_max": self.tb_max, "budget": self.budget}


@dataclass(frozen=True)
class SurgeryPresentation:
    q: SymIntMatrix
    components: tuple[Component, ...]

    @property
    def m(self) -> int:
        return self.q.n

    @property
    def budgets(self) -> tuple[int, ...]:
        return tuple(c.budget for c in self.components)

    def to_json(self):
        return {"m": self.m, "q": self.q.tolist(),
                "components": [c.to_json() for c in self.components],
                "budgets": list(self.budgets)}

    @classmethod
    def from_json(cls, data) -> "SurgeryPresentation":
        comps = []
        for c in data["components"]:
            k = c["knot"]
            knot = UNKNOT if k["type"] == "Unknot" else Knot("Torus", k["d2"], k["d1"])
            comps.append(Component(c["vertex"], knot, c["framing"], c["tb_max"], c["budget"]))
        return cls(SymIntMatrix(data["q"]), tuple(comps))


def blow_down_once(q: SymIntMatrix, v: int) -> SymIntMatrix:
    """Split off the ``<-1>`` summand spanned by vertex ``v``."""
    if q[v, v] != -1:
        raise ValidationError(f"cannot blow down vertex {v} with framing {q[v, v]}")
    keep = [i for i in range(q.n) if i != v]
    return SymIntMatrix([[q[i, j] + q[i, v] * q[j, v] for j in keep] for i in keep])


def _sparse_blow_down(entries: dict[int, dict[int, int]], v: int) -> None:
    nbrs = [(i, x) for i, x in entries[v].items() if i != v]
    for i, xi in nbrs:
        del entries[i][v]
    for i, xi in nbrs:
        for j, xj in nbrs:
            val = entries[i].get(j, 0) + xi * xj
            if val:
                entries[i][j] = val
            else:
                entries[i].pop(j, None)
    del entries[v]


def complete_blow_down(g: PlumbingGraph, t: Optional[TwistingData] = None, *,
                       rng: Optional[random.Random] = None, strict: bool = True) -> SurgeryPresentation:
    """Blow down every vertex of the maximal subgraph, keep the rest.

    Whenever several consumed vertices have framing -1 the lowest id goes
    first, or a random one when ``rng`` is given (the result is the same).
    Rows of the result follow the surviving vertex ids in increasing order.
    ``strict=False`` keeps negative budgets instead of raising, for formal
    bookkeeping on candidate graphs that are not standard.
    """
    if t is None:
        t = gamma_prime(g)
    q = intersection_matrix(g)
    entries = {i: dict(row) for i, row in enumerate(q.nonzeros())}
    pending = set(t.consumed)
    while pending:
        ready = sorted(v for v in pending if entries[v].get(v) == -1)
        if not ready:
            raise InternalTypingError(
                f"no consumed vertex has framing -1; remaining {sorted(pending)}")
        v = rng.choice(ready) if rng is not None else ready[0]
        _sparse_blow_down(entries, v)
        pending.discard(v)
    survivors = sorted(entries)
    index = {v: k for k, v in enumerate(survivors)}
    qq = SymIntMatrix.from_sparse(len(survivors), {(index[i], index[j]): x
                                                   for i in survivors for j, x in entries[i].items()})
    center_adjacent = {ids[0] for ids in (g.leg_ids(i) for i in range(g.n))}
    comps = []
    for k, v in enumerate(survivors):
        if t.gamma_type is GammaType.TWO_LEGS and v in center_adjacent:
            knot = Knot("Torus", t.d2, t.d1)
        else:
            knot = UNKNOT
        framing = qq[k, k]
        budget = knot.tb_max - 1 - framing
        if budget < 0 and strict:
            raise UnsupportedPresentation(
                f"component at vertex {v} ({knot}) has framing {framing} above tb_max - 1 = {knot.tb_max - 1}")
        comps.append(Component(v, knot, framing, knot.tb_max, budget))
    return SurgeryPresentation(qq, tuple(comps))


def fillable_count(p: SurgeryPresentation) -> int:
    out = 1
    for s in p.budgets:
        out *= s + 1
    return out


def enumerate_rotation_vectors(p: SurgeryPresentation) -> list[tuple[int, ...]]:
    ranges = [range(-s, s + 1, 2) for s in p.budgets]
    return [tuple(v) for v in itertools.product(*ranges)]


def canonical_vector(p: SurgeryPresentation) -> tuple[int, ...]:
    """The extreme rotation vector ``W = (s1, ..., sm)``."""
    return p.budgets


def check_rotation_vector(p: SurgeryPresentation, v: Sequence[int]) -> None:
    if len(v) != p.m:
        raise ValidationError(f"rotation vector has length {len(v)}, expected {p.m}")
    for vi, s in zip(v, p.budgets):
        if abs(vi) > s or (vi - s) % 2:
            raise ValidationError(f"rotation number {vi} not in {{-{s}, ..., {s}}} step 2")


def d3(p: SurgeryPresentation, v: Sequence[int]) -> Fraction:
    check_rotation_vector(p, v)
    if p.m == 0:
        return Fraction(0)
    x = solve(p.q, v)
    return (sum((a * b for a, b in zip(v, x)), Fraction(0)) + p.m) / 4


def d3_canonical(p: SurgeryPresentation) -> Fraction:
    return d3(p, canonical_vector(p))


def d3_table(p: SurgeryPresentation, vectors: Optional[Sequence[Sequence[int]]] = None):
    """``(vectors, values)`` for all (or the given) rotation vectors, vectorized.

    Values are exact Fractions; the quadratic form is evaluated with integers
    ``v^T N v / D`` where ``Q^{-1} = N / D``.
    """
    if vectors is None:
        vectors = enumerate_rotation_vectors(p)
    if p.m == 0:
        return list(vectors), [Fraction(0)] * len(vectors)
    n_mat, den = integer_inverse(p.q)
    vmax = max((abs(x) for v in vectors for x in v), default=0)
    nmax = max(abs(x) for row in n_mat for x in row)
    dtype = np.int64 if p.m * p.m * vmax * vmax * nmax < 2 ** 62 else object
    V = np.array(vectors, dtype=dtype).reshape(len(vectors), p.m)
    N = np.array(n_mat, dtype=dtype)
    quad = ((V @ N) * V).sum(axis=1)
    values = [(Fraction(int(x), den) + p.m) / 4 for x in quad]
    return list(vectors), values


def format_vector(v) -> str:
    return "(" + ",".join(f"{x:+d}" if x else "0" for x in v) + ")"


def describe(p: SurgeryPresentation) -> list[str]:
    return [f"v{c.vertex}: {c.knot} framing {c.framing} tb_max {c.tb_max} budget {c.budget}"
            for c in p.components]

