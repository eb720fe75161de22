"""Dense square matrices over an exact scalar ring.

Entries are either Fractions or :class:`~affinetrees.scalars.ExpSum`
values (ints are coerced to Fractions at construction).  Matrices are
immutable; all arithmetic is exact.  The exponential and logarithm are
the finite sums valid for strictly-upper / unitriangular matrices, where
nilpotency truncates both series at the dimension.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .errors import (
    DimensionMismatch,
    NotStrictUpper,
    NotUnitriangular,
    NotUpperTriangular,
)
from .scalars import ExpSum, scalar_sign


def _coerce_entry(v):
    if isinstance(v, ExpSum):
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Fraction(v)
    raise TypeError(f"unsupported matrix entry: {v!r}")


class TriMat:
    """Immutable n x n matrix; n >= 1."""

    __slots__ = ("n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(_coerce_entry(v) for v in row) for row in rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionMismatch("matrix must be square and non-empty")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def zeros(cls, n, zero=Fraction(0)):
        return cls([[zero] * n for _ in range(n)])

    @classmethod
    def identity(cls, n, one=Fraction(1)):
        zero = one - one
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, entries):
        entries = [_coerce_entry(v) for v in entries]
        zero = entries[0] - entries[0]
        n = len(entries)
        return cls(
            [[entries[i] if i == j else zero for j in range(n)] for i in range(n)]
        )

    # -- ring helpers ------------------------------------------------------

    def ring_one(self):
        """Multiplicative unit of the entry ring."""
        if any(isinstance(v, ExpSum) for row in self.rows for v in row):
            return ExpSum.one()
        return Fraction(1)

    def ring_zero(self):
        one = self.ring_one()
        return one - one

    def to_expsum(self) -> "TriMat":
        """Same matrix with every entry coerced into the ExpSum ring."""
        return TriMat(
            [
                [v if isinstance(v, ExpSum) else ExpSum.constant(v) for v in row]
                for row in self.rows
            ]
        )

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TriMat):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        return TriMat(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, TriMat):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        return TriMat(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ]
        )

    def __neg__(self):
        return TriMat([[-v for v in row] for row in self.rows])

    def scale(self, c):
        return TriMat([[v * c for v in row] for row in self.rows])

    def __mul__(self, other):
        if not isinstance(other, TriMat):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(f"{self.n} vs {other.n}")
        n = self.n
        zero = self.ring_zero() + other.ring_zero()
        brows = other.rows
        out = []
        for i in range(n):
            arow = self.rows[i]
            orow = [zero] * n
            for k in range(n):
                a = arow[k]
                if not a:
                    continue
                brow = brows[k]
                for j in range(n):
                    b = brow[j]
                    if b:
                        orow[j] = orow[j] + a * b
            out.append(orow)
        return TriMat(out)

    def __pow__(self, k):
        if not isinstance(k, int):
            raise TypeError("matrix power must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        out = TriMat.identity(self.n, self.ring_one())
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if not isinstance(other, TriMat):
            return NotImplemented
        return self.n == other.n and all(
            a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)
        )

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(v) for v in row) for row in self.rows
        )
        return f"TriMat[{body}]"

    # -- shape predicates (checked on demand, not stored) --------------------

    def is_upper_triangular(self) -> bool:
        return all(
            not self.rows[i][j] for i in range(self.n) for j in range(i)
        )

    def is_strict_upper(self) -> bool:
        return all(
            not self.rows[i][j] for i in range(self.n) for j in range(i + 1)
        )

    def is_unitriangular(self) -> bool:
        return self.is_upper_triangular() and all(
            self.rows[i][i] == 1 for i in range(self.n)
        )

    def has_positive_diagonal(self) -> bool:
        return all(scalar_sign(self.rows[i][i]) > 0 for i in range(self.n))

    # -- inversion -----------------------------------------------------------

    def inverse(self) -> "TriMat":
        """Inverse of an upper-triangular matrix via back-substitution.

        Diagonal entries must be invertible in the entry ring (always the
        case for Fractions; for ExpSum entries they must be monomials).
        """
        if not self.is_upper_triangular():
            raise NotUpperTriangular("inverse implemented for upper triangular only")
        n = self.n
        zero = self.ring_zero()
        one = self.ring_one()
        inv = [[zero] * n for _ in range(n)]
        for j in range(n - 1, -1, -1):
            inv[j][j] = one / self.rows[j][j]
            for i in range(j - 1, -1, -1):
                acc = zero
                for k in range(i + 1, j + 1):
                    if self.rows[i][k] and inv[k][j]:
                        acc = acc + self.rows[i][k] * inv[k][j]
                inv[i][j] = -acc / self.rows[i][i]
        return TriMat(inv)


def nilpotent_exp(mat: TriMat) -> TriMat:
    """exp(N) = sum_{k<n} N**k / k! for strictly upper triangular N."""
    if not mat.is_strict_upper():
        raise NotStrictUpper("exponential defined for strictly upper matrices")
    out = TriMat.identity(mat.n, mat.ring_one())
    term = out
    for k in range(1, mat.n):
        term = term * mat
        out = out + term.scale(Fraction(1, factorial(k)))
    return out


def unipotent_log(mat: TriMat) -> TriMat:
    """log(I + B) = sum_{1<=k<n} (-1)**(k+1)/k * B**k for unitriangular I + B."""
    if not mat.is_unitriangular():
        raise NotUnitriangular("logarithm defined for unitriangular matrices")
    strict = mat - TriMat.identity(mat.n, mat.ring_one())
    out = TriMat.zeros(mat.n, mat.ring_zero())
    term = TriMat.identity(mat.n, mat.ring_one())
    for k in range(1, mat.n):
        term = term * strict
        out = out + term.scale(Fraction((-1) ** (k + 1), k))
    return out
