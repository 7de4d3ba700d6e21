"""Box minimization of ``F(V) = V^T Q^{-1} V`` for negative-definite M-matrices.

For ``Q`` irreducible, negative definite, with non-negative off-diagonal
entries, every entry of ``A = Q^{-1}`` is negative, and the minimum of ``F``
over ``{|v_i| <= w_i}`` is attained exactly at ``V = +W`` and ``V = -W``.
``F`` is concave, so the minimum sits at a corner and enumerating the
``2^m`` sign patterns is exhaustive.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .arith import SymIntMatrix, as_rational, exact_inverse, is_irreducible, is_negative_definite, quadratic_form
from .errors import ValidationError

MAX_RANK = 24


@dataclass(frozen=True)
class MMatrixReport:
    negative_definite: bool
    irreducible: bool
    offdiag_nonnegative: bool
    inverse_negative: Optional[bool]
    violations: tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.violations


def validate_m_matrix(q: SymIntMatrix) -> MMatrixReport:
    neg = is_negative_definite(q)
    irr = is_irreducible(q)
    off = all(q[i, j] >= 0 for i in range(q.n) for j in range(q.n) if i != j)
    violations = []
    if not neg:
        violations.append("not negative definite")
    if not irr:
        violations.append("reducible")
    if not off:
        violations.append("negative off-diagonal entry")
    inv_neg = None
    if neg:
        a = exact_inverse(q)
        bad = [(i, j) for i in range(q.n) for j in range(q.n) if a[i][j] >= 0]
        inv_neg = not bad
        if bad:
            violations.append(f"inverse has non-negative entries at {bad[:5]}")
    return MMatrixReport(neg, irr, off, inv_neg, tuple(violations))


@dataclass(frozen=True)
class BoxProblem:
    q: SymIntMatrix
    w: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(as_rational(x) for x in self.w)
        if len(w) != self.q.n:
            raise ValidationError("w has the wrong length")
        if any(x < 0 for x in w):
            raise ValidationError("box half-widths must be non-negative")
        rep = validate_m_matrix(self.q)
        bad = [v for v in rep.violations if not v.startswith("inverse")]
        if bad:
            raise ValidationError("not a valid box problem: " + "; ".join(bad))
        object.__setattr__(self, "w", w)

    @property
    def m(self) -> int:
        return self.q.n


def box_min(p: BoxProblem) -> tuple[Fraction, list[tuple[Fraction, ...]]]:
    """Minimum of ``F`` on the box and every corner attaining it."""
    if p.m > MAX_RANK:
        raise ValidationError(f"rank {p.m} exceeds the corner-enumeration limit {MAX_RANK}")
    a = exact_inverse(p.q)
    corners = {tuple(s * x for s, x in zip(signs, p.w))
               for signs in itertools.product((1, -1), repeat=p.m)}
    values = {c: quadratic_form(a, c) for c in corners}
    best = min(values.values())
    return best, sorted(c for c, v in values.items() if v == best)


def grid_min(p: BoxProblem, steps: int = 4) -> Fraction:
    """Minimum of ``F`` over the grid with spacing ``w_i / steps`` (concavity witness)."""
    a = exact_inverse(p.q)
    axes = [sorted({x * Fraction(k, steps) for k in range(-steps, steps + 1)}) for x in p.w]
    return min(quadratic_form(a, v) for v in itertools.product(*axes))


def random_m_matrix(rng: random.Random, m: int) -> SymIntMatrix:
    """Random connected M-matrix of rank ``m``: a random tree plus extra
    edges, off-diagonals in {0, 1, 2}, and a strictly dominant diagonal."""
    while True:
        off = [[0] * m for _ in range(m)]
        for v in range(1, m):
            u = rng.randrange(v)
            off[u][v] = off[v][u] = rng.choice((1, 2))
        for u, v in itertools.combinations(range(m), 2):
            if off[u][v] == 0 and rng.random() < 0.3:
                off[u][v] = off[v][u] = rng.choice((0, 1, 2))
        rows = []
        for i in range(m):
            row = list(off[i])
            row[i] = -(1 + sum(off[i]) + rng.randrange(3))
            rows.append(row)
        q = SymIntMatrix(rows)
        if is_negative_definite(q) and is_irreducible(q):
            return q


def random_box_problem(rng: random.Random, max_rank: int = 6, w_max: int = 3,
                       positive: bool = True) -> BoxProblem:
    m = rng.randint(1, max_rank)
    q = random_m_matrix(rng, m)
    lo = 1 if positive else 0
    return BoxProblem(q, tuple(Fraction(rng.randint(lo, w_max)) for _ in range(m)))


@dataclass(frozen=True)
class LemmaCheckResult:
    trials: int
    hits: int
    failures: tuple[BoxProblem, ...]

    def summary(self) -> str:
        return f"{self.hits}/{self.trials} minima at ±W"


def expected_argmins(w: Sequence[Fraction]) -> list[tuple[Fraction, ...]]:
    w = tuple(w)
    return sorted({w, tuple(-x for x in w)})


def lemma_check(trials: int = 500, seed: int = 1, max_rank: int = 6) -> LemmaCheckResult:
    rng = random.Random(seed)
    hits, failures = 0, []
    for _ in range(trials):
        p = random_box_problem(rng, max_rank)
        _, argmins = box_min(p)
        if argmins == expected_argmins(p.w):
            hits += 1
        else:
            failures.append(p)
    return LemmaCheckResult(trials, hits, tuple(failures))
