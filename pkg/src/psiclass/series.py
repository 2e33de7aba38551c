"""Truncated power series with exact rational coefficients.

A SeriesInvX is a jet sum_{j=0}^K c_j u^j + O(u^{K+1}) in a single formal
variable u with rational coefficients.  Throughout this package u stands
for 1/g or 1/X, so these are expansions at infinity truncated at order K;
nothing in the arithmetic depends on that reading.

All operations truncate to the smaller operand order, so precision
bookkeeping is automatic: combining a K-jet with an M-jet yields a
min(K, M)-jet.
"""

from __future__ import annotations

from typing import Sequence

from .exact import ONE, Q, ZERO


class SeriesInvX:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence, order: int | None = None):
        cs = [Q(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("series order must be >= 0")
            cs = cs[: order + 1] + [ZERO] * (order + 1 - len(cs))
        elif not cs:
            raise ValueError("empty coefficient list and no order given")
        self.coeffs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def constant(cls, c, order: int) -> "SeriesInvX":
        return cls([c], order)

    @classmethod
    def one(cls, order: int) -> "SeriesInvX":
        return cls([ONE], order)

    @classmethod
    def zero(cls, order: int) -> "SeriesInvX":
        return cls([], order)

    @classmethod
    def monomial(cls, c, j: int, order: int) -> "SeriesInvX":
        if j < 0:
            raise ValueError("monomial exponent must be >= 0")
        return cls([ZERO] * j + [Q(c)], order)

    # -- basics -------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SeriesInvX) and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"SeriesInvX({list(self.coeffs)!r})"

    def truncate(self, order: int) -> "SeriesInvX":
        return SeriesInvX(self.coeffs, order)

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "SeriesInvX":
        if not isinstance(other, SeriesInvX):
            other = SeriesInvX.constant(other, self.order)
        K = min(self.order, other.order)
        return SeriesInvX(
            [self.coeffs[j] + other.coeffs[j] for j in range(K + 1)]
        )

    __radd__ = __add__

    def __neg__(self) -> "SeriesInvX":
        return SeriesInvX([-c for c in self.coeffs])

    def __sub__(self, other) -> "SeriesInvX":
        return self + (-other if isinstance(other, SeriesInvX) else SeriesInvX.constant(-Q(other), self.order))

    def __rsub__(self, other) -> "SeriesInvX":
        return SeriesInvX.constant(other, self.order) - self

    def __mul__(self, other) -> "SeriesInvX":
        if not isinstance(other, SeriesInvX):
            q = Q(other)
            return SeriesInvX([c * q for c in self.coeffs])
        K = min(self.order, other.order)
        out = [ZERO] * (K + 1)
        for i, a in enumerate(self.coeffs[: K + 1]):
            if not a:
                continue
            for j in range(K + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return SeriesInvX(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "SeriesInvX":
        if not isinstance(other, SeriesInvX):
            return self * (ONE / Q(other))
        return self * other.inverse()

    def inverse(self) -> "SeriesInvX":
        """Multiplicative inverse; requires a unit constant term."""
        if not self.coeffs[0]:
            raise ValueError("series with zero constant term has no inverse")
        K = self.order
        inv0 = ONE / self.coeffs[0]
        out = [inv0] + [ZERO] * K
        for m in range(1, K + 1):
            acc = ZERO
            for k in range(1, m + 1):
                if self.coeffs[k]:
                    acc += self.coeffs[k] * out[m - k]
            out[m] = -inv0 * acc
        return SeriesInvX(out)

    def pow_int(self, k: int) -> "SeriesInvX":
        if k < 0:
            return self.inverse().pow_int(-k)
        result = SeriesInvX.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- composition and transcendental jets ---------------------------

    def compose(self, inner: "SeriesInvX") -> "SeriesInvX":
        """self(inner(u)); the inner series must have zero constant term."""
        if inner.coeffs[0]:
            raise ValueError("composition needs inner constant term 0")
        K = min(self.order, inner.order)
        result = SeriesInvX.constant(self.coeffs[K], K)
        for j in range(K - 1, -1, -1):
            result = result * inner.truncate(K) + self.coeffs[j]
        return result

    def exp(self) -> "SeriesInvX":
        """exp of a series with zero constant term."""
        if self.coeffs[0]:
            raise ValueError("exp requires zero constant term")
        K = self.order
        out = [ONE] + [ZERO] * K
        for m in range(1, K + 1):
            acc = ZERO
            for k in range(1, m + 1):
                if self.coeffs[k]:
                    acc += k * self.coeffs[k] * out[m - k]
            out[m] = acc / m
        return SeriesInvX(out)

    def log(self) -> "SeriesInvX":
        """log of a series with constant term 1."""
        if self.coeffs[0] != ONE:
            raise ValueError("log requires constant term 1")
        K = self.order
        out = [ZERO] * (K + 1)
        for m in range(1, K + 1):
            acc = m * self.coeffs[m]
            for k in range(1, m):
                if out[k] and self.coeffs[m - k]:
                    acc -= k * out[k] * self.coeffs[m - k]
            out[m] = acc / m
        return SeriesInvX(out)


def geometric(c, order: int) -> SeriesInvX:
    """1/(1 - c u) = sum (c u)^j, handy as a composition building block."""
    q = Q(c)
    coeffs, cur = [], ONE
    for _ in range(order + 1):
        coeffs.append(cur)
        cur *= q
    return SeriesInvX(coeffs)


def shift_reciprocal(c, order: int) -> SeriesInvX:
    """The expansion of g/(g - c) in u = 1/g, i.e. 1/(1 - c u).

    Multiply by u to get 1/(g - c) as a 1/g-series shifted one slot.
    """
    return geometric(c, order)
