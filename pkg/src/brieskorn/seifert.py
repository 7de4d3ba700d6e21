"""Normalized Seifert invariants, Brieskorn spheres and the named families."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, prod
from typing import Iterable, Optional

from .arith import as_rational, format_rational
from .errors import ValidationError


@dataclass(frozen=True)
class BrieskornData:
    """Exponents of a Brieskorn sphere; stored sorted ascending."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(sorted(int(x) for x in self.a))
        if len(a) < 3:
            raise ValidationError(f"a Brieskorn sphere needs at least 3 exponents, got {len(a)}")
        if any(x < 2 for x in a):
            raise ValidationError(f"Brieskorn exponents must be >= 2, got {a}")
        for x, y in combinations(a, 2):
            if gcd(x, y) != 1:
                raise ValidationError(f"Brieskorn exponents must be pairwise coprime: gcd({x}, {y}) = {gcd(x, y)}")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self):
        return "Sigma(" + ",".join(map(str, self.a)) + ")"


@dataclass(frozen=True)
class SeifertData:
    """``M(e0; r1, ..., rn)`` with every ``0 < ri < 1``."""

    e0: int
    multipliers: tuple[Fraction, ...]

    def __post_init__(self):
        if isinstance(self.e0, bool) or int(self.e0) != self.e0:
            raise ValidationError(f"central framing must be an integer, got {self.e0!r}")
        rs = tuple(as_rational(r) for r in self.multipliers)
        for r in rs:
            if not 0 < r < 1:
                raise ValidationError(f"Seifert multiplier {format_rational(r)} is not in (0, 1)")
        object.__setattr__(self, "e0", int(self.e0))
        object.__setattr__(self, "multipliers", rs)

    @property
    def n(self) -> int:
        return len(self.multipliers)

    @property
    def denominators(self) -> tuple[int, ...]:
        return tuple(r.denominator for r in self.multipliers)

    def sorted(self) -> "SeifertData":
        return SeifertData(self.e0, tuple(sorted(self.multipliers)))

    def __str__(self):
        return f"M({self.e0}; " + ", ".join(format_rational(r) for r in self.multipliers) + ")"


def brieskorn_to_seifert(b: BrieskornData | Iterable[int]) -> SeifertData:
    if not isinstance(b, BrieskornData):
        b = BrieskornData(tuple(b))
    a = prod(b.a)
    bs = []
    for ai in b.a:
        bs.append((-pow(a // ai, -1, ai)) % ai)
    num = -1 - sum(bi * (a // ai) for bi, ai in zip(bs, b.a))
    assert num % a == 0
    return SeifertData(num // a, tuple(Fraction(bi, ai) for bi, ai in zip(bs, b.a)))


def euler_number(s: SeifertData) -> Fraction:
    return s.e0 + sum(s.multipliers, Fraction(0))


def reverse_orientation(s: SeifertData) -> SeifertData:
    return SeifertData(-s.e0 - s.n, tuple(1 - r for r in s.multipliers))


def recognize_brieskorn(s: SeifertData) -> Optional[BrieskornData]:
    """The Brieskorn sphere with these normalized invariants, if there is one."""
    dens = s.denominators
    if s.n < 3 or any(d < 2 for d in dens):
        return None
    if any(gcd(x, y) != 1 for x, y in combinations(dens, 2)):
        return None
    if euler_number(s) != Fraction(-1, prod(dens)):
        return None
    b = BrieskornData(dens)
    assert brieskorn_to_seifert(b).sorted() == s.sorted()
    return b


@dataclass(frozen=True, order=True)
class Family:
    """A named family tag such as ``IssaMcCoyExtremal(n=3, a=2)``."""

    name: str
    params: tuple[tuple[str, object], ...] = field(default=())

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.params)
        return f"{self.name}({inner})"

    def to_json(self):
        return {"name": self.name, **{k: str(v) if not isinstance(v, int) else v for k, v in self.params}}


def _alternating_pattern(s: SeifertData) -> Optional[int]:
    """``a`` if the multipliers are ``(n+1)/2`` copies of ``1-1/a`` and ``(n-1)/2`` of ``1/a``."""
    n = s.n
    if n < 3 or n % 2 == 0:
        return None
    a = s.multipliers[0].denominator
    if a < 2:
        return None
    want = Counter([1 - Fraction(1, a)] * ((n + 1) // 2) + [Fraction(1, a)] * ((n - 1) // 2))
    return a if Counter(s.multipliers) == want else None


def _two_fillable_exception(b: BrieskornData) -> Optional[Family]:
    if b.a == (3, 4, 5):
        return Family("TwoFillableException", (("which", "Sigma(3,4,5)"),))
    if b.a == (2, 5, 7):
        return Family("TwoFillableException", (("which", "Sigma(2,5,7)"),))
    if b.n == 3 and b.a[:2] == (2, 3) and b.a[2] % 6 == 1:
        return Family("TwoFillableException", (("which", "Sigma(2,3,6k+1)"), ("k", (b.a[2] - 1) // 6)))
    return None


def family_membership(s: SeifertData) -> set[Family]:
    """Named families containing ``s`` (which must already be normalized)."""
    out = set()
    n = s.n
    a = _alternating_pattern(s)
    if a is not None and 2 * s.e0 == -(n + 1):
        out.add(Family("IssaMcCoyExtremal", (("n", n), ("a", a))))
        if n == 3:
            out.add(Family("PseudoconvexFamily", (("a", a),)))
    b = recognize_brieskorn(s)
    if b is not None:
        tag = _two_fillable_exception(b)
        if tag is not None:
            out.add(tag)
    return out


def pseudoconvex_family_manifold(a: int) -> SeifertData:
    """``M(-2; 1-1/a, 1/a, 1-1/a)``."""
    if a < 2:
        raise ValidationError("family parameter a must be >= 2")
    return SeifertData(-2, (1 - Fraction(1, a), Fraction(1, a), 1 - Fraction(1, a)))


def issa_mccoy_extremal(n: int, a: int) -> SeifertData:
    """``M(-(n+1)/2; 1-1/a, 1/a, ..., 1-1/a)`` for odd ``n``."""
    if n < 3 or n % 2 == 0 or a < 2:
        raise ValidationError("need odd n >= 3 and a >= 2")
    rs = tuple(1 - Fraction(1, a) if i % 2 == 0 else Fraction(1, a) for i in range(n))
    return SeifertData(-(n + 1) // 2, rs)
