"""Exact rational arithmetic kernel and shared combinatorial conventions.

Everything downstream (the recursion engine, the closed formulas, the series
machinery) computes with exact rationals.  gmpy2.mpq is used when available,
being several times faster than fractions.Fraction on the hot recursion
paths; set PSICLASS_NOGMPY=1 to force the pure-stdlib fallback.

Negative-argument conventions live here and nowhere else:

* ``(-1)!! = 1`` (empty product); even or smaller arguments are an error,
* ``1/n! = 0`` for ``n < 0``,

because the coefficient tables of the two-point formulas silently rely on
out-of-range terms vanishing, and one convention point prevents scattered
bugs.
"""

from __future__ import annotations

import math
import os
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple, Union

if os.environ.get("PSICLASS_NOGMPY"):
    Q = Fraction
else:
    try:
        from gmpy2 import mpq as Q  # type: ignore[no-redef]
    except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
        Q = Fraction

Rational = Union[Fraction, int]  # any exact rational-like value, incl. Q
ZERO = Q(0)
ONE = Q(1)

# pi, truncated (not rounded) after 104 significant digits.  pi_value() caps
# requests at 100 digits; the spare digits make rounding at the cap exact and
# give honest enclosing intervals for comparison work.
_PI_DIGITS = (
    "3."
    "1415926535897932384626433832795028841971693993751"
    "0582097494459230781640628620899862803482534211706798214"
)
PI_PRECISION_CAP = 100


class HPDecimal(NamedTuple):
    """A decimal snapshot of an exact value, tagged with its digit count.

    ``value`` is correctly rounded to ``precision`` significant digits, so
    conversion from an exact rational has relative error below
    ``10**(1 - precision)``.
    """

    value: Decimal
    precision: int

    def __str__(self) -> str:
        return str(self.value)


def to_decimal(q, precision: int) -> HPDecimal:
    """Round the exact rational ``q`` to ``precision`` significant digits."""
    if precision < 1:
        raise ValueError("precision must be positive")
    num, den = int(q.numerator), int(q.denominator)
    with localcontext() as ctx:
        ctx.prec = precision
        val = Decimal(num) / Decimal(den)
    return HPDecimal(val, precision)


def pi_value(precision: int) -> HPDecimal:
    """pi to ``precision`` significant digits, from the stored constant.

    >>> str(pi_value(5).value)
    '3.1416'
    """
    if precision < 1:
        raise ValueError("precision must be positive")
    if precision > PI_PRECISION_CAP:
        raise ValueError(
            f"precision {precision} exceeds the stored constant's cap of "
            f"{PI_PRECISION_CAP} digits"
        )
    with localcontext() as ctx:
        ctx.prec = precision
        val = +Decimal(_PI_DIGITS)
    return HPDecimal(val, precision)


def pi_interval(digits: int = 50):
    """Exact rationals (lo, hi) with lo < pi < hi, sharp to ``digits`` digits.

    The stored constant is a truncation of pi, so taking its first ``digits``
    significant digits as a rational gives a strict lower bound and one ulp
    up a strict upper bound.  Used for comparisons against exact rationals
    that must not silently depend on floating point.
    """
    if not 1 <= digits <= len(_PI_DIGITS) - 2:
        raise ValueError("digits out of range for the stored constant")
    mantissa = int(_PI_DIGITS.replace(".", "")[:digits])
    scale = 10 ** (digits - 1)
    return Q(mantissa, scale), Q(mantissa + 1, scale)


def odd_double_factorial(m: int):
    """m!! for odd m >= -1, with (-1)!! = 1 (empty product).

    >>> int(odd_double_factorial(9))
    945
    """
    if m % 2 == 0 or m < -1:
        raise ValueError(f"undefined double factorial: {m}!!")
    if m == -1:
        return ONE
    return Q(math.prod(range(m, 0, -2)))


def reciprocal_factorial(n: int):
    """1/n! for n >= 0, and 0 for negative n (the 1/Gamma(0) = 0 convention)."""
    if n < 0:
        return ZERO
    return Q(1, math.factorial(n))


def pochhammer(a, b: int):
    """Rising factorial a(a+1)...(a+b-1); empty product 1 for b = 0."""
    if b < 0:
        raise ValueError("pochhammer length must be >= 0")
    out = ONE
    for i in range(b):
        out *= a + i
    return out


_BERNOULLI: list = [ONE, Q(-1, 2)]


def _extend_bernoulli(k: int) -> None:
    # Defining recurrence: sum_{j=0}^{k} binom(k+1, j) B_j = 0.
    while len(_BERNOULLI) <= k:
        m = len(_BERNOULLI)
        if m % 2 == 1:
            _BERNOULLI.append(ZERO)
            continue
        acc = ZERO
        for j in range(m):
            bj = _BERNOULLI[j]
            if bj:
                acc += math.comb(m + 1, j) * bj
        _BERNOULLI.append(Q(-1, m + 1) * acc)


def bernoulli(k: int):
    """The k-th Bernoulli number for even k >= 2 (B_1 convention -1/2).

    >>> bernoulli(2) == Q(1, 6)
    True
    """
    if k % 2 != 0 or k < 2:
        raise ValueError(f"bernoulli is defined here for even k >= 2, got {k}")
    _extend_bernoulli(k)
    return _BERNOULLI[k]


def rat_str(q) -> str:
    """Serialize an exact rational as "p/q" (denominator kept even when 1)."""
    return f"{int(q.numerator)}/{int(q.denominator)}"


def parse_rat(text: str):
    """Parse "p/q" back to an exact rational, insisting on reduced form."""
    num_s, sep, den_s = text.partition("/")
    if not sep:
        raise ValueError(f"expected p/q, got {text!r}")
    num, den = int(num_s), int(den_s)
    if den < 1:
        raise ValueError(f"denominator must be positive in {text!r}")
    if math.gcd(num, den) != 1:
        raise ValueError(f"rational {text!r} is not in reduced form")
    return Q(num, den)


def exp_decimal(q, precision: int) -> HPDecimal:
    """exp(q) for exact rational q, to ``precision`` significant digits."""
    num, den = int(q.numerator), int(q.denominator)
    with localcontext() as ctx:
        ctx.prec = precision + 5
        x = Decimal(num) / Decimal(den)
        val = x.exp()
    with localcontext() as ctx:
        ctx.prec = precision
        val = +val
    return HPDecimal(val, precision)
