"""Correction term of a negative-definite plumbed integral homology sphere.

``d(Y) = (max K^2 + m) / 4`` over characteristic covectors ``K`` of the
intersection form (``K_i = q_ii mod 2``), valid when the graph has at most one
bad vertex. Two routes:

``box``
    Plain enumeration of ``q_ii <= k_i <= -q_ii``. Any maximizer lies in this
    box: if ``k_v > -q_vv`` then ``K + 2 Q e_v`` has larger square.
``tau``
    For star-shaped graphs, the same maximum via the Laufer-sequence function
    ``tau`` (``tau(0) = 0``, ``tau(i+1) = tau(i) + 1 - e0 i - sum ceil(i r_l)``):
    ``d = (K_can^2 + m) / 4 - 2 min tau`` with ``K_can = (-q_ii - 2)_i``.
    Linear in ``prod a_i`` instead of exponential in the rank, so it is the
    only option for long legs. It is cross-checked against ``box`` wherever
    the box is small enough.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .arith import SymIntMatrix, integer_inverse, quadratic_form, exact_inverse, solve
from .errors import UnsupportedGraph, ValidationError
from .plumbing import PlumbingGraph, intersection_matrix, validate_standard

BOX_LIMIT = 200_000
_CHUNK = 1 << 16


def check_characteristic(q: SymIntMatrix, k: Sequence[int]) -> None:
    if len(k) != q.n:
        raise ValidationError(f"covector has length {len(k)}, expected {q.n}")
    for i, ki in enumerate(k):
        if (ki - q[i, i]) % 2:
            raise ValidationError(f"covector entry {ki} at {i} has the wrong parity for framing {q[i, i]}")


def square(q: SymIntMatrix, k: Sequence[int]) -> Fraction:
    """``K^T Q^{-1} K``, exact."""
    check_characteristic(q, k)
    return quadratic_form(exact_inverse(q), k)


def box_ranges(q: SymIntMatrix, scale: int = 1) -> list[range]:
    out = []
    for i in range(q.n):
        lo = scale * q[i, i]
        if (lo - q[i, i]) % 2:
            lo -= 1
        out.append(range(lo, -lo + 1, 2))
    return out


def box_size(q: SymIntMatrix, scale: int = 1) -> int:
    return math.prod(len(r) for r in box_ranges(q, scale))


def max_square_box(q: SymIntMatrix, scale: int = 1, limit: int = BOX_LIMIT) -> tuple[Fraction, tuple[int, ...]]:
    """Maximum of ``K^2`` over characteristic ``K`` in the (scaled) box, and a maximizer."""
    ranges = box_ranges(q, scale)
    total = math.prod(len(r) for r in ranges)
    if total > limit:
        raise UnsupportedGraph(f"box has {total} covectors, above the limit {limit}")
    n_mat, den = integer_inverse(q)
    kmax = max(abs(r.start) for r in ranges)
    nmax = max(abs(x) for row in n_mat for x in row)
    dtype = np.int64 if q.n * q.n * kmax * kmax * nmax < 2 ** 62 else object
    N = np.array(n_mat, dtype=dtype)
    starts = np.array([r.start for r in ranges], dtype=np.int64)
    radix = np.array([len(r) for r in ranges], dtype=np.int64)
    best, best_k = None, None
    for lo in range(0, total, _CHUNK):
        idx = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        digits = np.empty((idx.size, q.n), dtype=np.int64)
        rem = idx
        for i in range(q.n - 1, -1, -1):
            digits[:, i] = rem % radix[i]
            rem = rem // radix[i]
        K = (starts + 2 * digits).astype(dtype)
        vals = ((K @ N) * K).sum(axis=1)
        j = int(np.argmax(vals))
        if best is None or vals[j] > best:
            best, best_k = vals[j], tuple(int(x) for x in K[j])
    return Fraction(int(best), den), best_k


def canonical_covector(q: SymIntMatrix) -> tuple[int, ...]:
    return tuple(-q[i, i] - 2 for i in range(q.n))


def tau_minimum(g: PlumbingGraph) -> int:
    """``min tau`` over the Laufer sequence of a star-shaped graph."""
    s = g.seifert_data()
    e = s.e0 + sum(s.multipliers, Fraction(0))
    if e >= 0:
        raise UnsupportedGraph("tau is defined for negative-definite star-shaped graphs only")
    # past this index every increment is >= 0
    slack = s.n - 1 - sum(Fraction(1, r.denominator) for r in s.multipliers)
    stop = max(1, math.ceil(slack / -e) + 1)
    i = np.arange(stop, dtype=np.int64)
    delta = 1 - s.e0 * i
    for r in s.multipliers:
        delta = delta + (-i * r.numerator) // r.denominator  # -ceil(i r)
    tau = np.concatenate(([0], np.cumsum(delta)))
    return int(tau.min())


def _check_supported(g: PlumbingGraph) -> SymIntMatrix:
    rep = validate_standard(g, expect_homology_sphere=True)
    if not rep.leg_framings_ok or not rep.negative_definite:
        raise UnsupportedGraph("; ".join(rep.problems()))
    if rep.bad_vertex_count > 1:
        raise UnsupportedGraph(f"{rep.bad_vertex_count} bad vertices; the maximization needs at most one")
    if rep.unimodular is False:
        raise UnsupportedGraph(f"|det| = {abs(rep.det)}: only integral homology spheres are supported")
    return intersection_matrix(g)


def correction_term(g: PlumbingGraph, method: str = "auto") -> Fraction:
    """``d(Y)`` for the negative-definite plumbing ``g``.

    ``method`` is ``"box"``, ``"tau"`` or ``"auto"`` (box when it has at most
    ``BOX_LIMIT`` covectors, tau otherwise).
    """
    q = _check_supported(g)
    if method == "auto":
        method = "box" if box_size(q) <= BOX_LIMIT else "tau"
    if method == "box":
        k2, _ = max_square_box(q)
    elif method == "tau":
        k = canonical_covector(q)
        x = solve(q, k)
        k2 = sum((a * b for a, b in zip(k, x)), Fraction(0)) - 8 * tau_minimum(g)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return (k2 + q.n) / 4


def e0_obstruction_check(g: PlumbingGraph) -> bool:
    """Necessary condition for bounding a rational homology ball: ``e0 = -1``."""
    return g.center == -1
