"""The Painleve I side: coefficients c_g, the bridge to C(2,...,2), and
the large-g law c_g ~ A 50^g Gamma(g)^2 (1 + sum_j b_j g^-j).

The c_g satisfy the quadratic recursion

    c_g = 50 (g-1)^2 c_{g-1} + (1/2) sum_{h=2}^{g-2} c_h c_{g-h},
    c_0 = -1, c_1 = 2, c_2 = 98,

and are tied to intersection numbers through the bridge (g >= 2)

    c_g = 2^g 3^(3g-2) 5^(3-3g) (5g-5)! (5g-3) / (3g-3)! * C(2^(3g-3)).

A structurally different consequence of the same differential equation is
the residual identity (with e_g = (1-5g)/2)

    c_g e_g (e_g - 1) + (1/16) sum_{g1+g2=g+1} c_{g1} c_{g2} = 0,

which p1_residual exposes; tests use it as an independent consistency
check on the recursion.

For the subleading corrections b_j, substitute c_g = 50^g Gamma(g)^2 A
S(1/g) into the recursion.  The leading term cancels exactly, leaving

    S(1/g) - S(1/(g-1)) =
        sum_{h>=2} c_h 50^-h S(1/(g-h)) / prod_{i=1}^h (g-i)^2,

where each fixed-h term starts at order g^(-2h) and the large-h half of
the original convolution is exponentially small, hence invisible at any
polynomial order.  Matching coefficients of x = 1/g order by order
determines the b_j; only h <= (K+1)/2 matter for b_1..b_K.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from math import factorial
from typing import List, Optional

from .dvv import MemoCache, c_value
from .exact import HPDecimal, ONE, Q, ZERO, pi_value, to_decimal
from .series import SeriesInvX

_CG: List = [Q(-1), Q(2), Q(98)]


def painleve_coeff(g: int):
    """c_g, exactly.

    >>> painleve_coeff(3) == Q(19600)
    True
    """
    if g < 0:
        raise ValueError("painleve_coeff needs g >= 0")
    while len(_CG) <= g:
        m = len(_CG)
        acc = 50 * (m - 1) ** 2 * _CG[m - 1]
        conv = ZERO
        for h in range(2, m - 1):
            conv += _CG[h] * _CG[m - h]
        _CG.append(acc + conv / 2)
    return _CG[g]


def p1_residual(g: int):
    """c_g e_g (e_g - 1) + (1/16) sum_{g1+g2=g+1} c_{g1} c_{g2}, e_g=(1-5g)/2.

    Identically zero; a nonzero value would flag a defect in the recursion.
    """
    e = Q(1 - 5 * g, 2)
    acc = painleve_coeff(g) * e * (e - 1)
    conv = ZERO
    for g1 in range(0, g + 2):
        conv += painleve_coeff(g1) * painleve_coeff(g + 1 - g1)
    return acc + conv / 16


def painleve_from_intersections(g: int, cache: Optional[MemoCache] = None):
    """c_g recovered from C(2, ..., 2) with 3g-3 twos, for g >= 2."""
    if g < 2:
        raise ValueError("the intersection bridge needs g >= 2")
    val = c_value((2,) * (3 * g - 3), cache)
    return (
        Q(2**g * 3 ** (3 * g - 2) * (5 * g - 3), 5 ** (3 * g - 3))
        * factorial(5 * g - 5)
        / factorial(3 * g - 3)
        * val
    )


def cg_asymptotic_series(K: int) -> List:
    """[b_1, ..., b_K] with c_g ~ A 50^g Gamma(g)^2 (1 + sum b_j g^-j).

    Solved order by order from the functional equation in the module
    docstring: with b_1..b_{J-1} known and b_J trialled as 0, the residual's
    x^(J+1) coefficient equals J * b_J (b_J enters the left side at that
    order through the 1/(g-1) substitution only, and the right side not
    before x^(J+4)).

    >>> cg_asymptotic_series(3)[2] == Q(-49, 3750)
    True
    """
    if not 1 <= K <= 12:
        raise ValueError("cg_asymptotic_series supports 1 <= K <= 12")
    N = K + 1
    b = [ONE] + [ZERO] * K
    H = (K + 1) // 2
    # Fixed ingredients: x/(1-cx) composition inners and the h-term prefactors.
    inner_1 = SeriesInvX([ZERO] + [ONE] * N, N)  # x/(1-x)
    h_parts = []
    for h in range(2, H + 1):
        pref = SeriesInvX.monomial(painleve_coeff(h) * Q(1, 50**h), 2 * h, N)
        for i in range(1, h + 1):
            # 1/(1 - i x)^2 = sum (m+1) i^m x^m
            pref = pref * SeriesInvX(
                [(m + 1) * Q(i) ** m for m in range(N + 1)], N
            )
        inner_h = SeriesInvX(
            [ZERO] + [Q(h) ** m for m in range(N)], N
        )  # x/(1-hx)
        h_parts.append((pref, inner_h))
    for J in range(1, K + 1):
        S = SeriesInvX(b, N)
        resid = S - S.compose(inner_1)
        for pref, inner_h in h_parts:
            resid = resid - pref * S.compose(inner_h)
        b[J] = resid.coeffs[J + 1] / J
    return b[1:]


def theorem_a_constant(precision: int = 30) -> HPDecimal:
    """A = sqrt(3/5) / (2 pi^2) to the requested number of digits."""
    pi = pi_value(precision + 10)
    with localcontext() as ctx:
        ctx.prec = precision + 10
        val = Decimal(3).sqrt() / Decimal(5).sqrt() / (2 * pi.value**2)
    with localcontext() as ctx:
        ctx.prec = precision
        val = +val
    return HPDecimal(val, precision)


def theorem_a_estimate(
    g: int, precision: int = 30, correction_order: int = 0
) -> HPDecimal:
    """A estimated from c_g: c_g / (50^g Gamma(g)^2 (1 + sum_{j<=J} b_j g^-j)).

    With correction_order 0 the deviation from A is of order g^-3 (the
    first nonzero correction is b_3).
    """
    if g < 1:
        raise ValueError("theorem_a_estimate needs g >= 1")
    ratio = painleve_coeff(g) / Q(50**g * factorial(g - 1) ** 2)
    if correction_order:
        corr = ONE
        for j, bj in enumerate(cg_asymptotic_series(correction_order), start=1):
            corr += bj / Q(g) ** j
        ratio = ratio / corr
    return to_decimal(ratio, precision)
