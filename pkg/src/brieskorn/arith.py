"""Exact rational arithmetic and symmetric integer matrices.

Everything here is exact. Rationals are :class:`fractions.Fraction`; matrices
are immutable :class:`SymIntMatrix` instances.

Plumbing forms are sparse (trees, or trees after a few blow-downs), so the
workhorse is a symmetric elimination that always pivots on the remaining index
of smallest degree. On a tree this never creates fill-in and runs in linear
time; a dense Bareiss elimination is kept for determinants as an independent
route.
"""
from __future__ import annotations

from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

from .errors import SingularMatrixError, ValidationError

Rational = Fraction


def as_rational(x) -> Fraction:
    """Parse ``x`` (int, Fraction or a ``"p/q"`` string) into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise ValidationError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValidationError(f"malformed fraction {x!r}") from exc
    raise ValidationError(f"not a rational: {x!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# negative continued fractions


def neg_cont_frac(x) -> list[int]:
    """Expand ``x > 1`` as ``c1 - 1/(c2 - 1/(... - 1/cl))`` with every ``cj >= 2``.

    >>> neg_cont_frac(Fraction(7, 2))
    [4, 2]
    """
    x = as_rational(x)
    if x <= 1:
        raise ValidationError(f"negative continued fraction needs x > 1, got {format_rational(x)}")
    out = []
    while True:
        c = ceil(x)
        out.append(c)
        if c == x:
            return out
        x = 1 / (c - x)


def eval_neg_cont_frac(cs: Sequence[int]) -> Fraction:
    if not cs:
        raise ValidationError("empty continued fraction")
    val = Fraction(cs[-1])
    for c in reversed(cs[:-1]):
        if val == 0:
            raise ValidationError(f"continued fraction {list(cs)} hits a zero denominator")
        val = c - 1 / val
    return val


# ---------------------------------------------------------------------------
# matrices


class SymIntMatrix:
    """Immutable symmetric square matrix with integer entries."""

    __slots__ = ("_rows", "_nz")

    def __init__(self, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        for r in rows:
            if len(r) != n:
                raise ValidationError("matrix is not square")
            for x in r:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise ValidationError(f"non-integer matrix entry {x!r}")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValidationError(f"matrix not symmetric at ({i}, {j})")
        self._rows = rows
        self._nz = None

    @classmethod
    def _unchecked(cls, rows: tuple[tuple[int, ...], ...]) -> "SymIntMatrix":
        out = cls.__new__(cls)
        out._rows = rows
        out._nz = None
        return out

    @classmethod
    def from_sparse(cls, n: int, entries: dict[tuple[int, int], int]) -> "SymIntMatrix":
        """Build from ``{(i, j): x}``; each pair sets both ``(i, j)`` and ``(j, i)``."""
        rows = [[0] * n for _ in range(n)]
        for (i, j), x in entries.items():
            if isinstance(x, bool) or not isinstance(x, int):
                raise ValidationError(f"non-integer matrix entry {x!r}")
            rows[i][j] = x
            rows[j][i] = x
        return cls._unchecked(tuple(tuple(r) for r in rows))

    def nonzeros(self) -> tuple[dict[int, int], ...]:
        """Row-wise ``{column: entry}`` of the non-zero entries (cached)."""
        if self._nz is None:
            self._nz = tuple({j: x for j, x in enumerate(r) if x} for r in self._rows)
        return self._nz

    @property
    def n(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self._rows

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self._rows[i][i] for i in range(self.n))

    def principal(self, idx: Sequence[int]) -> "SymIntMatrix":
        return SymIntMatrix._unchecked(tuple(tuple(self._rows[i][j] for j in idx) for i in idx))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    def __eq__(self, other):
        return isinstance(other, SymIntMatrix) and self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"SymIntMatrix({self.tolist()!r})"


def _as_matrix(q) -> SymIntMatrix:
    return q if isinstance(q, SymIntMatrix) else SymIntMatrix(q)


class _Elimination:
    """Symmetric LDL^T elimination with minimum-degree pivoting.

    ``steps`` holds ``(pivot index, pivot value, {j: a_jp / a_pp})`` in order.
    ``zero_pivot`` is set when the elimination stalls on a zero diagonal, in
    which case ``steps`` is a prefix.
    """

    def __init__(self, q: SymIntMatrix, stop_unless_negative: bool = False):
        n = q.n
        a = [{j: Fraction(x) for j, x in row.items()} for row in q.nonzeros()]
        diag = [Fraction(q.rows[i][i]) for i in range(n)]
        for i in range(n):
            a[i].pop(i, None)
        alive = set(range(n))
        self.steps: list[tuple[int, Fraction, dict[int, Fraction]]] = []
        self.zero_pivot = False
        self.nonnegative_pivot = False
        while alive:
            p = min(alive, key=lambda i: (len(a[i]), i))
            d = diag[p]
            if d == 0:
                self.zero_pivot = True
                return
            if stop_unless_negative and d > 0:
                self.nonnegative_pivot = True
                self.steps.append((p, d, {}))
                return
            col = {j: x / d for j, x in a[p].items()}
            for j, lj in col.items():
                row_j = a[j]
                del row_j[p]
                diag[j] -= lj * a[p][j]
                for k, xk in a[p].items():
                    if k == j:
                        continue
                    v = row_j.get(k, 0) - lj * xk
                    if v:
                        row_j[k] = v
                    else:
                        row_j.pop(k, None)
            alive.discard(p)
            self.steps.append((p, d, col))

    def pivots(self) -> list[Fraction]:
        return [d for _, d, _ in self.steps]

    def solve(self, b: Sequence) -> list[Fraction]:
        y = [Fraction(x) for x in b]
        for p, _, col in self.steps:
            yp = y[p]
            if yp:
                for j, lj in col.items():
                    y[j] -= lj * yp
        for p, d, _ in self.steps:
            y[p] /= d
        for p, _, col in reversed(self.steps):
            s = y[p]
            for j, lj in col.items():
                s -= lj * y[j]
            y[p] = s
        return y


def determinant(q) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    m = [list(r) for r in _as_matrix(q).rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            mik = ri[k]
            for j in range(k + 1, n):
                ri[j] = (pk * ri[j] - mik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * m[n - 1][n - 1]


def sparse_determinant(q) -> int:
    """Determinant as the product of elimination pivots (fast on trees)."""
    q = _as_matrix(q)
    el = _Elimination(q)
    if el.zero_pivot:
        return determinant(q)
    out = Fraction(1)
    for d in el.pivots():
        out *= d
    assert out.denominator == 1
    return int(out)


def is_negative_definite(q) -> bool:
    """True iff every leading principal minor has sign ``(-1)^k``.

    The minors are taken in the elimination order; ``d_k = M_k / M_{k-1}`` is
    the k-th pivot, so alternating minors is the same as all pivots negative.
    Definiteness is invariant under the symmetric permutation.
    """
    q = _as_matrix(q)
    if q.n == 0:
        return True
    el = _Elimination(q, stop_unless_negative=True)
    return not el.zero_pivot and not el.nonnegative_pivot and all(d < 0 for d in el.pivots())


def leading_minors(q) -> list[int]:
    """Leading principal minors in the natural index order (dense, Bareiss)."""
    q = _as_matrix(q)
    return [determinant(q.principal(range(k))) for k in range(1, q.n + 1)]


def is_irreducible(q) -> bool:
    q = _as_matrix(q)
    n = q.n
    if n <= 1:
        return True
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j not in seen and j != i and q.rows[i][j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _dense_inverse(q: SymIntMatrix) -> list[list[Fraction]]:
    n = q.n
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(q.rows)]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular")
        m[k], m[piv] = m[piv], m[k]
        inv = 1 / m[k][k]
        m[k] = [x * inv for x in m[k]]
        for i in range(n):
            if i != k and m[i][k] != 0:
                f = m[i][k]
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return [row[n:] for row in m]


def exact_inverse(q) -> tuple[tuple[Fraction, ...], ...]:
    """Exact rational inverse; raises :class:`SingularMatrixError` if det = 0."""
    q = _as_matrix(q)
    n = q.n
    el = _Elimination(q)
    if el.zero_pivot:
        cols = _dense_inverse(q)
        return tuple(tuple(r) for r in cols)
    cols = []
    for j in range(n):
        e = [0] * n
        e[j] = 1
        cols.append(el.solve(e))
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def solve(q, b: Sequence) -> list[Fraction]:
    """Solve ``q x = b`` exactly."""
    q = _as_matrix(q)
    if len(b) != q.n:
        raise ValidationError("right-hand side has the wrong length")
    el = _Elimination(q)
    if el.zero_pivot:
        inv = _dense_inverse(q)
        return [sum((inv[i][j] * b[j] for j in range(q.n)), Fraction(0)) for i in range(q.n)]
    return el.solve(b)


def integer_inverse(q) -> tuple[list[list[int]], int]:
    """Return ``(N, D)`` with ``q^{-1} = N / D`` and ``N`` integral, ``D > 0``."""
    inv = exact_inverse(q)
    from math import lcm

    den = 1
    for row in inv:
        for x in row:
            den = lcm(den, x.denominator)
    return [[int(x * den) for x in row] for row in inv], den


def quadratic_form(a: Sequence[Sequence], v: Sequence) -> Fraction:
    """``v^T a v`` exactly."""
    total = Fraction(0)
    for i, vi in enumerate(v):
        if vi:
            row = a[i]
            total += vi * sum((row[j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
    return total


def matmul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]
