"""Closed formulas for psi-class intersection numbers via 2x2 matrix traces.

Everything here evaluates the same normalized quantity C(d) as the recursion
in dvv.py, but along a completely different route: finitely many terms built
from traces of products of explicit 2x2 matrices A_k with rational entries.
The test suite pins the two routes against each other; neither module
imports the other.

The matrices are the coefficients of a formal series M(lambda) =
sum_k A_k lambda^{-k}; writing k in residue classes mod 3 (k >= -1, zero
matrix below that):

    k = 3g - 2 (g >= 1):  diag(-x_g, x_g),  x_g = (6g-5)!!/(2*24^(g-1)*(g-1)!)
    k = 3g     (g >= 0):  upper entry -q_g, q_g = (6g-1)!!/(24^g*g!)
    k = 3g - 1 (g >= 0):  lower entry  r_g = ((6g+1)/(6g-1))*q_g

The trace-normalized numbers

    a(k_1..k_n) = 2^(2g) tr(A_{k_1}...A_{k_n}) / (3^(2g+n-2)*(2g+n-3)!),

with g = g(k) = 1 + (sum k - n)/3, are the universal coefficients of the
n-point closed formulas: the two-point sum, the three- and four-point
formulas with floor weights M(e) = max(0, min e), and the general n-point
sum over permutations with partial-sum weights (n_point below).

Enumeration windows: every formula's floor/weight structure forces the
k-slot paired with the largest d-entry to exceed that entry, so the
remaining k's have bounded sum and the term count depends only on the
smaller entries of d, not on the genus.  Inputs are sorted so the largest
entry sits in that slot; the values are symmetric (tests check this), only
the work depends on the ordering.
"""

from __future__ import annotations

from itertools import permutations, product as _iproduct
from math import comb, factorial
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .exact import (
    ONE,
    Q,
    ZERO,
    odd_double_factorial,
    reciprocal_factorial,
)

Mat = Tuple  # (a, b, c, d) for [[a, b], [c, d]]

_ZMAT: Mat = (ZERO, ZERO, ZERO, ZERO)
_IDENT: Mat = (ONE, ZERO, ZERO, ONE)

_MAT_CACHE: Dict[int, Mat] = {}
_TRACE_CACHE: Dict[tuple, object] = {}


def matrix_coeff(k: int) -> Mat:
    """The 2x2 matrix A_k, as a flat (a, b, c, d) tuple; zero for k <= -2."""
    if k <= -2:
        return _ZMAT
    hit = _MAT_CACHE.get(k)
    if hit is not None:
        return hit
    r = k % 3
    if r == 1:
        g = (k + 2) // 3
        x = Q(
            odd_double_factorial(6 * g - 5),
            2 * 24 ** (g - 1) * factorial(g - 1),
        )
        m: Mat = (-x, ZERO, ZERO, x)
    elif r == 0:
        g = k // 3
        q = Q(odd_double_factorial(6 * g - 1), 24**g * factorial(g))
        m = (ZERO, -q, ZERO, ZERO)
    else:
        g = (k + 1) // 3
        q = Q(odd_double_factorial(6 * g - 1), 24**g * factorial(g))
        m = (ZERO, ZERO, q * Q(6 * g + 1, 6 * g - 1), ZERO)
    _MAT_CACHE[k] = m
    return m


def mat_mul(m1: Mat, m2: Mat) -> Mat:
    a, b, c, d = m1
    e, f, g, h = m2
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _reversal_sign(ks: Sequence[int]) -> int:
    """tr of the reversed product differs by (-1)^#{k_i = 1 mod 3}."""
    return -1 if sum(1 for v in ks if v % 3 == 1) % 2 else 1


def _trace_key(ks: tuple) -> Tuple[tuple, int]:
    """Canonical key under cyclic rotation and (signed) reversal."""
    n = len(ks)
    best = min(ks[i:] + ks[:i] for i in range(n))
    rev = ks[::-1]
    best_r = min(rev[i:] + rev[:i] for i in range(n))
    if best_r < best:
        return best_r, _reversal_sign(ks)
    return best, 1


def trace_product(ks: Sequence[int]):
    """tr(A_{k_1} ... A_{k_n}), cached up to rotation and reversal."""
    ks = tuple(ks)
    if any(v <= -2 for v in ks):
        return ZERO
    # A nonzero trace needs as many upper-type as lower-type factors.
    if sum(1 for v in ks if v % 3 == 0) != sum(1 for v in ks if v % 3 == 2):
        return ZERO
    key, sign = _trace_key(ks)
    val = _TRACE_CACHE.get(key)
    if val is None:
        m = matrix_coeff(key[0])
        for k in key[1:]:
            m = mat_mul(m, matrix_coeff(k))
            if not (m[0] or m[1] or m[2] or m[3]):
                break
        val = m[0] + m[3]
        _TRACE_CACHE[key] = val
    return val if sign == 1 else -val


def _c_prefactor(g: int, n: int):
    return Q(4**g, 3 ** (2 * g + n - 2) * factorial(2 * g + n - 3))


def a_value(ks: Sequence[int]):
    """a(k) = 2^(2g) tr(A_{k_1}..A_{k_n}) / (3^(2g+n-2) (2g+n-3)!).

    Zero when any k_i <= -2, when g(k) is not a non-negative integer, or
    when 2g + n - 3 < 0.

    >>> a_value((0, 2)) == Q(-7, 18)
    True
    """
    ks = tuple(ks)
    n = len(ks)
    if any(v <= -2 for v in ks):
        return ZERO
    t = sum(ks) - n
    if t % 3:
        return ZERO
    g = 1 + t // 3
    if g < 0 or 2 * g + n - 3 < 0:
        return ZERO
    tr = trace_product(ks)
    if not tr:
        return ZERO
    return tr * _c_prefactor(g, n)


def xi_pair(k1: int, k2: int):
    """tr(A_{k1} A_{k2}) by the closed two-index table (no matrices).

    Nonzero only for (1,1), (0,2) and (2,0) residue patterns mod 3; the
    latter two carry the factor (6g+1)/(6g-1), which at g = 0 contributes
    -1 (and (-1)!! = 1 throughout).
    """
    if k1 <= -2 or k2 <= -2:
        return ZERO
    r1, r2 = k1 % 3, k2 % 3
    if r1 == 1 and r2 == 1:
        g1, g2 = (k1 + 2) // 3, (k2 + 2) // 3
        return Q(
            odd_double_factorial(6 * g1 - 5) * odd_double_factorial(6 * g2 - 5),
            2 * 24 ** (g1 + g2 - 2) * factorial(g1 - 1) * factorial(g2 - 1),
        )
    if r1 == 0 and r2 == 2:
        g1, g2 = k1 // 3, (k2 + 1) // 3
        return -Q(
            odd_double_factorial(6 * g1 - 1) * odd_double_factorial(6 * g2 - 1),
            24 ** (g1 + g2) * factorial(g1) * factorial(g2),
        ) * Q(6 * g2 + 1, 6 * g2 - 1)
    if r1 == 2 and r2 == 0:
        g1, g2 = (k1 + 1) // 3, k2 // 3
        return -Q(
            odd_double_factorial(6 * g1 - 1) * odd_double_factorial(6 * g2 - 1),
            24 ** (g1 + g2) * factorial(g1) * factorial(g2),
        ) * Q(6 * g1 + 1, 6 * g1 - 1)
    return ZERO


def one_point_c(m: int):
    """C(m) for a single marking: 3 (6g-3)!! / (54^g g! (2g-2)!) at m = 3g-2.

    >>> one_point_c(4) == Q(35, 144)
    True
    """
    if m < 0 or m % 3 != 1:
        return ZERO
    g = (m + 2) // 3
    return Q(
        3 * odd_double_factorial(6 * g - 3),
        54**g * factorial(g) * factorial(2 * g - 2),
    )


def two_point_bdy(d1: int, d2: int):
    """The intersection number <psi_1^{d1} psi_2^{d2}> by the two-point sum

        sum_{l=0}^{d1} (d1 + 1 - l) xi(l-1, 3g-l) / ((2d1+1)!! (2d2+1)!!)

    with d1 + d2 = 3g - 1.  Zero when d1 + d2 is not 2 mod 3.
    """
    if d1 < 0 or d2 < 0:
        return ZERO
    s = d1 + d2
    if s % 3 != 2:
        return ZERO
    g = (s + 1) // 3
    acc = ZERO
    for l in range(d1 + 1):
        xi = xi_pair(l - 1, 3 * g - l)
        if xi:
            acc += (d1 + 1 - l) * xi
    return acc / (
        odd_double_factorial(2 * d1 + 1) * odd_double_factorial(2 * d2 + 1)
    )


def two_point_zograf(d1: int, d2: int):
    """C(d1, d2) by Zograf's two-point formula, d1 + d2 = 3g - 1:

        C = (1/(54^g (2g-1)! g)) sum_{d=-1}^{d1-1} eta_{g,d},

    eta_{g,d} = (6g-3-2d)!! (2d+1)!! w(g,d) with w depending on d mod 3 and
    out-of-range factorial reciprocals contributing zero.
    """
    if d1 < 0 or d2 < 0:
        return ZERO
    s = d1 + d2
    if s % 3 != 2:
        return ZERO
    g = (s + 1) // 3
    acc = ZERO
    for d in range(-1, d1):
        if (d + 1) % 3 == 0:
            j = (d + 1) // 3
            w = (g - 2 * j) * reciprocal_factorial(j) * reciprocal_factorial(g - j)
        elif d % 3 == 0:
            j = d // 3
            w = -2 * reciprocal_factorial(j) * reciprocal_factorial(g - 1 - j)
        else:
            j = (d - 1) // 3
            w = 2 * reciprocal_factorial(j) * reciprocal_factorial(g - 1 - j)
        if w:
            acc += (
                odd_double_factorial(6 * g - 3 - 2 * d)
                * odd_double_factorial(2 * d + 1)
                * w
            )
    return acc / (54**g * factorial(2 * g - 1) * g)


def m_floor(*entries: int) -> int:
    """M(e_1, ..., e_r) = max(0, min e_i)."""
    return max(0, min(entries))


def three_point(d: Sequence[int]):
    """C(d1, d2, d3) = 2 sum_k a(k) M(d1-k1, d1+d2-k1-k2) over sum k = sum d.

    Both floor arguments must be positive, so k1 <= d1 - 1 and
    k1 + k2 <= d1 + d2 - 1; sorting d ascending puts the largest entry in
    the k3 slot and the work is O(d1 (d1 + d2)) trace lookups.
    """
    if len(d) != 3:
        raise ValueError("three_point takes exactly three exponents")
    if min(d) < 0:
        return ZERO
    d1, d2, d3 = sorted(d)
    s = d1 + d2 + d3
    if s % 3:
        return ZERO
    g = s // 3
    acc = ZERO
    for k1 in range(-1, d1):
        m1 = d1 - k1
        for k2 in range(-1, d1 + d2 - k1):
            tr = trace_product((k1, k2, s - k1 - k2))
            if tr:
                acc += min(m1, d1 + d2 - k1 - k2) * tr
    return 2 * acc * _c_prefactor(g, 3)


def four_point(d: Sequence[int]):
    """C(d1..d4) by the four-point closed formula

        2 sum_k a(k) [ M(d1-k1, d1+d2-k1-k2, k4-d4)
                       - M(d1-k2, d1+d2-k2-k3, d1+d3-k1-k2, k4-d4)
                       - M(d1-k1, d2-k3, k2-d3, k4-d4) ]

    over k_i >= -1 with sum k = sum d.  Every bracket needs k4 >= d4 + 1,
    so k1+k2+k3 <= d1+d2+d3-1; d is sorted ascending to make that window
    as small as possible.
    """
    if len(d) != 4:
        raise ValueError("four_point takes exactly four exponents")
    if min(d) < 0:
        return ZERO
    d1, d2, d3, d4 = sorted(d)
    s = d1 + d2 + d3 + d4
    if (s - 4) % 3:
        return ZERO
    g = 1 + (s - 4) // 3
    if g < 0:
        return ZERO
    budget = d1 + d2 + d3 - 1
    acc = ZERO
    for k1 in range(-1, budget + 3):
        for k2 in range(-1, budget - k1 + 2):
            for k3 in range(-1, budget - k1 - k2 + 1):
                k4 = s - k1 - k2 - k3
                e4 = k4 - d4
                if e4 < 1:
                    continue
                br = (
                    m_floor(d1 - k1, d1 + d2 - k1 - k2, e4)
                    - m_floor(d1 - k2, d1 + d2 - k2 - k3, d1 + d3 - k1 - k2, e4)
                    - m_floor(d1 - k1, d2 - k3, k2 - d3, e4)
                )
                if not br:
                    continue
                tr = trace_product((k1, k2, k3, k4))
                if tr:
                    acc += br * tr
    return 2 * acc * _c_prefactor(g, 4)


def _perm_data(n: int):
    """(sigma, sign, S+ mask) for all permutations of 0..n-1 fixing n-1.

    S+ holds the positions q with sigma(q+1 cyc) > sigma(q); the sign is
    (-1)^(|S-| + 1).
    """
    out = []
    for perm in permutations(range(n - 1)):
        sigma = perm + (n - 1,)
        mask = []
        minus = 0
        for q in range(n):
            up = sigma[(q + 1) % n] > sigma[q]
            mask.append(up)
            if not up:
                minus += 1
        sign = 1 if (minus + 1) % 2 == 0 else -1
        out.append((sigma, sign, tuple(mask)))
    return out


def _omega(ds: tuple, sigma: tuple, mask: tuple, ks: tuple) -> int:
    """The partial-sum weight: max(0, min over S+ of PS - max over S- of PS)."""
    ps = 0
    lo = None
    hi = None
    for q in range(len(ds)):
        ps += ds[sigma[q]] - ks[q]
        if mask[q]:
            if lo is None or ps < lo:
                lo = ps
        else:
            if hi is None or ps > hi:
                hi = ps
    if lo is None:
        return 0
    w = lo - hi
    return w if w > 0 else 0


def n_point(d: Sequence[int]):
    """C(d) for any n >= 1 by the general trace formula

        C(d) = sum_{sigma(n)=n} (-1)^(|S-|+1) sum_k a(k) omega(d, sigma, k),

    k_i >= -1, sum k = sum d, with omega the partial-sum weight of _omega.
    Position n always lies in S- with partial sum 0 and position n-1 in S+,
    which forces k_n >= d_n + 1 for a nonzero weight; d is sorted ascending
    so the remaining k's range over sum <= d_1 + .. + d_{n-1} - 1.

    n = 1 falls back to the one-point closed form.
    """
    n = len(d)
    if n == 0:
        raise ValueError("n_point needs at least one exponent")
    if min(d) < 0:
        return ZERO
    if n == 1:
        return one_point_c(d[0])
    ds = tuple(sorted(d))
    s = sum(ds)
    if (s - n) % 3:
        return ZERO
    g = 1 + (s - n) // 3
    if g < 0:
        return ZERO
    budget = s - ds[-1] - 1

    traces: Dict[tuple, object] = {}

    def dfs(pos: int, ssum: int, prefix: tuple, mat: Mat) -> None:
        if pos == n - 1:
            kn = s - ssum
            e, f, gg, h = matrix_coeff(kn)
            tr = mat[0] * e + mat[1] * gg + mat[2] * f + mat[3] * h
            if tr:
                traces[prefix + (kn,)] = tr
            return
        hi = budget - ssum + (n - 2 - pos)
        for kq in range(-1, hi + 1):
            nm = mat_mul(mat, matrix_coeff(kq))
            if nm[0] or nm[1] or nm[2] or nm[3]:
                dfs(pos + 1, ssum + kq, prefix + (kq,), nm)

    dfs(0, 0, (), _IDENT)

    total = ZERO
    perms = _perm_data(n)
    for ks, tr in traces.items():
        w = 0
        for sigma, sign, mask in perms:
            om = _omega(ds, sigma, mask, ks)
            if om:
                w += sign * om
        if w:
            total += w * tr
    return total * _c_prefactor(g, n)


def n_point_reference(d: Sequence[int]):
    """Unpruned n_point over the full window k_i in [-1, sum d + n].

    Exponentially slower; exists so tests can confirm that the pruned
    enumeration drops only zero-weight terms.
    """
    n = len(d)
    ds = tuple(sorted(d))
    s = sum(ds)
    if (s - n) % 3:
        return ZERO
    g = 1 + (s - n) // 3
    if g < 0:
        return ZERO
    total = ZERO
    perms = _perm_data(n)
    window = range(-1, s + n + 1)
    for head in _iproduct(window, repeat=n - 1):
        kn = s - sum(head)
        if kn < -1 or kn > s + n:
            continue
        ks = head + (kn,)
        tr = trace_product(ks)
        if not tr:
            continue
        w = 0
        for sigma, sign, mask in perms:
            om = _omega(ds, sigma, mask, ks)
            if om:
                w += sign * om
        if w:
            total += w * tr
    return total * _c_prefactor(g, n)
