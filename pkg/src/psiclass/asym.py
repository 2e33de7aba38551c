"""Large-genus asymptotics: Stirling jets, series fitting, the universal
polynomial table, deviation bounds and the recursive majorant f(X, n).

The centerpiece is the expansion machinery for pi*C along one-parameter
families.  Two closed families are expanded symbolically:

  * one_point_series:  pi*C(3g-2)     as a series in 1/g,
  * largest_series:    pi*C(2^(3g-3)) as a series in 1/g (via Painleve I).

Both work by assembling log C from Gamma factors: each lnGamma(a g + b) is
expanded with Stirling's series into (g ln g, ln g, g, 1) parts with exact
coefficients over the Q-span of {1, ln2, ln3, ln5, ln pi} plus a pure
1/g-tail.  All non-tail parts must cancel except a single -ln pi; the code
verifies that cancellation exactly rather than assuming it, then
exponentiates the tail.

For mixed families (a fixed pattern of small exponents plus one growing
entry) the ratio C(pattern, d_n)/C(3g-2) is an honest rational function of
g; fit_rational recovers it exactly from samples with surplus validation
points, and the resulting series, reindexed from 1/g to 1/X via
g = (X + 2 - n)/2, yields the coefficients c~_k (of pi*C) and
c^_k (of C/gamma(X)).  Solving the pattern grid against the allowed
monomials in the multiplicities p_2..p_5 gives the universal polynomials;
the linear system is overdetermined by at least three rows and must be
satisfied exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import localcontext
from math import comb
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .closed import four_point, one_point_c, three_point, two_point_zograf
from .exact import (
    HPDecimal,
    ONE,
    Q,
    ZERO,
    bernoulli,
    exp_decimal,
    pi_interval,
    pi_value,
    rat_str,
    to_decimal,
)
from .painleve import cg_asymptotic_series
from .series import SeriesInvX

# ----------------------------------------------------------------------
# Stirling machinery.
# ----------------------------------------------------------------------

STIRLING_CAP = 20


def stirling_log_gamma(K: int) -> SeriesInvX:
    """The 1/z-tail of ln Gamma(z): sum_k B_2k / (2k(2k-1)) z^(1-2k).

    Returned as a SeriesInvX in u = 1/z up to order K (so the coefficient
    at index 2k-1 is B_2k/(2k(2k-1))); the (z-1/2)ln z - z + ln(2pi)/2
    front matter is handled by log_gamma_expansion.
    """
    if not 1 <= K <= STIRLING_CAP:
        raise ValueError(f"stirling_log_gamma supports 1 <= K <= {STIRLING_CAP}")
    coeffs = [ZERO] * (K + 1)
    k = 1
    while 2 * k - 1 <= K:
        coeffs[2 * k - 1] = bernoulli(2 * k) / (2 * k * (2 * k - 1))
        k += 1
    return SeriesInvX(coeffs)


_BASIS = ("1", "ln2", "ln3", "ln5", "lnpi")


def _ln_basis(value) -> Dict[str, object]:
    """ln(value) over {ln2, ln3, ln5} for a positive 2-3-5-smooth rational."""
    q = Q(value)
    num, den = int(q.numerator), int(q.denominator)
    if num <= 0:
        raise ValueError("logarithm of a non-positive value")
    out: Dict[str, int] = {}
    for n, sign in ((num, 1), (den, -1)):
        for p, label in ((2, "ln2"), (3, "ln3"), (5, "ln5")):
            while n % p == 0:
                out[label] = out.get(label, 0) + sign
                n //= p
        if n != 1:
            raise ValueError(f"{value} is not 2-3-5-smooth")
    return {lab: Q(v) for lab, v in out.items() if v}


def _dict_add(a: Dict, b: Dict, scale=ONE) -> Dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, ZERO) + scale * v
        if w:
            out[k] = w
        elif k in out:
            del out[k]
    return out


def _dict_scale(a: Dict, scale) -> Dict:
    return {k: scale * v for k, v in a.items() if scale * v}


@dataclass
class LogExpansion:
    """An expansion  glng*(g ln g) + lng*(ln g) + <lin>*g + <const> + tail(1/g)

    with <.> ranging over the Q-span of {1, ln2, ln3, ln5, ln pi}.  This is
    exactly the shape of ln Gamma(a g + b) and hence of log C along closed
    families; sums of these stay in the class.
    """

    glng: object
    lng: object
    lin: Dict[str, object]
    const: Dict[str, object]
    tail: SeriesInvX

    def __add__(self, other: "LogExpansion") -> "LogExpansion":
        return LogExpansion(
            self.glng + other.glng,
            self.lng + other.lng,
            _dict_add(self.lin, other.lin),
            _dict_add(self.const, other.const),
            self.tail + other.tail,
        )

    def __sub__(self, other: "LogExpansion") -> "LogExpansion":
        return self + other.scale(-ONE)

    def scale(self, c) -> "LogExpansion":
        return LogExpansion(
            c * self.glng,
            c * self.lng,
            _dict_scale(self.lin, c),
            _dict_scale(self.const, c),
            self.tail * c,
        )

    def pure_tail_or_raise(self, allow_const: Optional[Dict] = None) -> SeriesInvX:
        """Verify everything but the tail cancels (up to ``allow_const``)."""
        leftover = _dict_add(self.const, allow_const or {}, -ONE)
        if self.glng or self.lng or self.lin or leftover:
            raise ArithmeticError(
                "expected cancellation failed: "
                f"g*lng={self.glng} lng={self.lng} lin={self.lin} "
                f"const_leftover={leftover}"
            )
        return self.tail


def _zero_expansion(K: int) -> LogExpansion:
    return LogExpansion(ZERO, ZERO, {}, {}, SeriesInvX.zero(K))


def _const_expansion(d: Dict, K: int) -> LogExpansion:
    return LogExpansion(ZERO, ZERO, {}, dict(d), SeriesInvX.zero(K))


def _linear_expansion(d: Dict, K: int) -> LogExpansion:
    return LogExpansion(ZERO, ZERO, dict(d), {}, SeriesInvX.zero(K))


def log_gamma_expansion(a: int, b, K: int) -> LogExpansion:
    """ln Gamma(a g + b) as a LogExpansion with tail order K (a >= 1 integer,
    2-3-5-smooth; b rational)."""
    if a < 1:
        raise ValueError("log_gamma_expansion needs a >= 1")
    b = Q(b)
    tail = [ZERO] * (K + 1)
    # (a g + b - 1/2) * ln(a g + b) - (a g + b) + ln(2 pi)/2, with
    # ln(ag+b) = ln a + ln g + L,  L = sum_{m>=1} (-1)^(m+1) (b/a)^m g^-m / m.
    for m in range(2, K + 2):
        # from (a g) * L
        tail[m - 1] += (-ONE) ** (m + 1) * b**m / (a ** (m - 1) * m)
    for m in range(1, K + 1):
        # from (b - 1/2) * L
        tail[m] += (b - Q(1, 2)) * (-ONE) ** (m + 1) * (b / a) ** m / m
    # Bernoulli tail in z = a g + b, re-expanded in 1/g.
    k = 1
    while 2 * k - 1 <= K:
        t_k = bernoulli(2 * k) / (2 * k * (2 * k - 1))
        j = 0
        while 2 * k - 1 + j <= K:
            tail[2 * k - 1 + j] += (
                t_k
                * (-ONE) ** j
                * comb(2 * k - 2 + j, j)
                * b**j
                / Q(a) ** (2 * k - 1 + j)
            )
            j += 1
        k += 1
    lin = _dict_add({"1": -Q(a)}, _ln_basis(a), Q(a)) if a > 1 else {"1": -Q(a)}
    const = _dict_add(
        {"ln2": Q(1, 2), "lnpi": Q(1, 2)},
        _ln_basis(a) if a > 1 else {},
        b - Q(1, 2),
    )
    return LogExpansion(Q(a), b - Q(1, 2), lin, const, SeriesInvX(tail))


def log_linear_expansion(a: int, b, K: int) -> LogExpansion:
    """ln(a g + b) as a LogExpansion (a >= 1 integer, 2-3-5-smooth)."""
    if a < 1:
        raise ValueError("log_linear_expansion needs a >= 1")
    b = Q(b)
    tail = [ZERO] + [
        (-ONE) ** (m + 1) * (b / a) ** m / m for m in range(1, K + 1)
    ]
    const = _ln_basis(a) if a > 1 else {}
    return LogExpansion(ZERO, ONE, {}, const, SeriesInvX(tail))


# ----------------------------------------------------------------------
# The two closed one-parameter families.
# ----------------------------------------------------------------------

ONE_POINT_CAP = 10
LARGEST_CAP = 6


def one_point_series(K: int) -> SeriesInvX:
    """pi * C(3g-2) as a 1/g-series with exact rational coefficients.

    From C(3g-2) = 3 (6g-2)! / (2^(3g-1) (3g-1)! 54^g g! (2g-2)!); the
    g ln g, ln g, g and constant parts must cancel to exactly -ln pi.

    >>> one_point_series(1).coeffs[1] == Q(-17, 36)
    True
    """
    if not 1 <= K <= ONE_POINT_CAP:
        raise ValueError(f"one_point_series supports 1 <= K <= {ONE_POINT_CAP}")
    E = (
        log_gamma_expansion(6, -1, K)
        - log_gamma_expansion(3, 0, K)
        - log_gamma_expansion(1, 1, K)
        - log_gamma_expansion(2, -1, K)
        + _const_expansion(_dict_add({"ln2": ONE}, {"ln3": ONE}), K)
        + _linear_expansion({"ln2": Q(-3)}, K)
        + _linear_expansion({"ln2": -ONE, "ln3": Q(-3)}, K)
    )
    tail = E.pure_tail_or_raise(allow_const={"lnpi": -ONE})
    return tail.exp()


def one_point_series_by_ratio(K: int) -> SeriesInvX:
    """The same series recovered without any Stirling machinery.

    The exact ratio R(g) = C(3g+1)/C(3g-2) = (6g+3)(6g+1)(6g-1) /
    (54 (g+1) 2g (2g-1)) forces s(1/(g+1)) = s(1/g) R(g); matching
    coefficients with s(0) = 1 determines every s_j.  Serves as an
    independent oracle for one_point_series.
    """
    Kp = K + 1
    num = SeriesInvX([Q(216), Q(108), Q(-6), Q(-3)], Kp)
    den = SeriesInvX([Q(216), Q(108), Q(-108)], Kp)
    R = num / den
    inner = SeriesInvX([ZERO] + [(-ONE) ** j for j in range(Kp)], Kp)  # x/(1+x)
    s = [ONE] + [ZERO] * K
    for J in range(1, K + 1):
        ser = SeriesInvX(s, Kp)
        resid = ser.compose(inner) - ser * R
        s[J] = resid.coeffs[J + 1] / J
    return SeriesInvX(s, K)


def largest_series(K: int) -> SeriesInvX:
    """pi * C(2, ..., 2) with 3g-3 twos, as a 1/g-series.

    Combines the Painleve bridge with c_g ~ A 50^g Gamma(g)^2 (1 + sum b_j
    g^-j), A = sqrt(3/5)/(2 pi^2); all non-tail parts must cancel exactly.

    >>> largest_series(1).coeffs[1] == Q(-2, 9)
    True
    """
    if not 1 <= K <= LARGEST_CAP:
        raise ValueError(f"largest_series supports 1 <= K <= {LARGEST_CAP}")
    ln_a = {"ln3": Q(1, 2), "ln5": Q(-1, 2), "ln2": -ONE, "lnpi": Q(-2)}
    b_series = SeriesInvX([ONE] + list(cg_asymptotic_series(K)), K)
    E = (
        _const_expansion({"lnpi": ONE}, K)
        + _const_expansion(ln_a, K)
        + _linear_expansion({"ln2": ONE, "ln5": Q(2)}, K)
        + log_gamma_expansion(1, 0, K).scale(Q(2))
        + _linear_expansion({"ln5": Q(3)}, K)
        + _const_expansion({"ln5": Q(-3)}, K)
        + log_gamma_expansion(3, -2, K)
        - _linear_expansion({"ln2": ONE}, K)
        - _linear_expansion({"ln3": Q(3)}, K)
        - _const_expansion({"ln3": Q(-2)}, K)
        - log_gamma_expansion(5, -4, K)
        - log_linear_expansion(5, -3, K)
    )
    E = E + LogExpansion(ZERO, ZERO, {}, {}, b_series.log())
    tail = E.pure_tail_or_raise()
    return tail.exp()


# ----------------------------------------------------------------------
# Exact rational-function fitting.
# ----------------------------------------------------------------------


def _rref(rows: List[List]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form over exact rationals; returns pivot columns."""
    rows = [list(r) for r in rows]
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pick = None
        for i in range(r, m):
            if rows[i][c]:
                pick = i
                break
        if pick is None:
            continue
        rows[r], rows[pick] = rows[pick], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return rows, pivots


def solve_linear_exact(matrix: Sequence[Sequence], rhs: Sequence) -> List:
    """Solve A x = b exactly; A may be overdetermined but must be consistent
    with a unique solution."""
    aug = [list(map(Q, row)) + [Q(b)] for row, b in zip(matrix, rhs)]
    red, pivots = _rref(aug)
    ncols = len(aug[0]) - 1
    if ncols in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) != ncols:
        raise ValueError("underdetermined linear system")
    sol = [ZERO] * ncols
    for r, c in enumerate(pivots):
        sol[c] = red[r][ncols]
    return sol


def _poly_eval(coeffs: Sequence, x):
    acc = ZERO
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_normalize(coeffs: List) -> List:
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _poly_divmod(a: List, b: List) -> Tuple[List, List]:
    a = list(a)
    out = [ZERO] * max(1, len(a) - len(b) + 1)
    inv = ONE / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        f = a[i + len(b) - 1] * inv
        out[i] = f
        if f:
            for j, bv in enumerate(b):
                a[i + j] -= f * bv
    return _poly_normalize(out), _poly_normalize(a)


def _poly_gcd(a: List, b: List) -> List:
    a, b = _poly_normalize(list(a)), _poly_normalize(list(b))
    while b != [ZERO] and any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, _poly_normalize(r)
    inv = ONE / a[-1]
    return [c * inv for c in a]


@dataclass
class RationalFunctionOfG:
    """P(g)/Q(g) with exact rational coefficients, stored lowest-terms with
    monic denominator."""

    num: Tuple
    den: Tuple

    def __call__(self, g):
        dv = _poly_eval(self.den, Q(g))
        if not dv:
            raise ZeroDivisionError(f"denominator vanishes at g={g}")
        return _poly_eval(self.num, Q(g)) / dv

    @property
    def degrees(self) -> Tuple[int, int]:
        return len(self.num) - 1, len(self.den) - 1

    def series_at_infinity(self, K: int) -> SeriesInvX:
        dp, dq = self.degrees
        if dp > dq:
            raise ValueError("series at infinity needs deg num <= deg den")
        nh = [ZERO] * (dq - dp) + list(reversed(self.num))
        dh = list(reversed(self.den))
        return SeriesInvX(nh, K) / SeriesInvX(dh, K)


def fit_rational(
    samples: Sequence[Tuple[int, object]], max_degree: int = 40
) -> RationalFunctionOfG:
    """Recover the exact rational function through (g_i, q_i) samples.

    Climbs degrees d = 0, 1, ...: solves the homogeneous linear system
    P(g_i) - q_i Q(g_i) = 0 (deg P = deg Q = d) on 2d+1 samples and accepts
    only if the result reproduces every remaining sample as well.  Raises
    once d exceeds max_degree or the sample budget.
    """
    samples = [(int(g), Q(v)) for g, v in samples]
    if len(set(g for g, _ in samples)) != len(samples):
        raise ValueError("duplicate sample points")
    for d in range(0, max_degree + 1):
        need = 2 * d + 1
        if need + 1 > len(samples):
            break
        rows = []
        for g, v in samples[:need]:
            gq = Q(g)
            pows = [gq**j for j in range(d + 1)]
            rows.append(pows + [-v * p for p in pows])
        red, pivots = _rref(rows)
        ncols = 2 * d + 2
        free = next(c for c in range(ncols) if c not in pivots)
        vec = [ZERO] * ncols
        vec[free] = ONE
        for r, c in enumerate(pivots):
            vec[c] = -red[r][free]
        num = _poly_normalize(vec[: d + 1])
        den = _poly_normalize(vec[d + 1 :])
        if not any(den):
            continue
        ok = True
        for g, v in samples:
            dv = _poly_eval(den, Q(g))
            if not dv or _poly_eval(num, Q(g)) != v * dv:
                ok = False
                break
        if not ok:
            continue
        gcd = _poly_gcd(num, den)
        if len(gcd) > 1:
            num, _ = _poly_divmod(num, gcd)
            den, _ = _poly_divmod(den, gcd)
        inv = ONE / den[-1]
        return RationalFunctionOfG(
            tuple(c * inv for c in num), tuple(c * inv for c in den)
        )
    raise ValueError(f"not rational within cap (degree {max_degree})")


# ----------------------------------------------------------------------
# Universal polynomials in the multiplicities p_2..p_5 (the table fit).
# ----------------------------------------------------------------------

TABLE2_CAP = 4

PATTERNS: Tuple[tuple, ...] = (
    (),
    (2,),
    (2, 2),
    (3,),
    (4,),
    (5,),
    (2, 3),
    (2, 2, 2),
    (2, 2, 3),
)

_PVALS = (2, 3, 4, 5)
_PWEIGHTS = tuple(2 * d + 1 for d in _PVALS)

MultPoly = Dict[Tuple[int, int, int, int], object]


def table2_monomials(k: int) -> List[Tuple[int, int, int, int]]:
    """Exponent tuples (e_2, e_3, e_4, e_5) with sum e_d (2d+1) <= max(0, 3k-1)."""
    bound = max(0, 3 * k - 1)
    out: List[Tuple[int, int, int, int]] = []

    def rec(idx: int, rem: int, cur: Tuple[int, ...]) -> None:
        if idx == len(_PVALS):
            out.append(cur)
            return
        w = _PWEIGHTS[idx]
        for e in range(rem // w + 1):
            rec(idx + 1, rem - e * w, cur + (e,))

    rec(0, bound, ())
    out.sort(key=lambda t: (sum(e * w for e, w in zip(t, _PWEIGHTS)), t))
    return out


def _pattern_pvec(pattern: tuple) -> Tuple[int, int, int, int]:
    return tuple(sum(1 for v in pattern if v == d) for d in _PVALS)


def _mono_value(exps: Tuple[int, ...], pvec: Tuple[int, ...]):
    acc = ONE
    for e, p in zip(exps, pvec):
        if e:
            acc *= Q(p) ** e
    return acc


def _pattern_c(pattern: tuple, dn: int):
    d = pattern + (dn,)
    n = len(d)
    if n == 1:
        return one_point_c(dn)
    if n == 2:
        return two_point_zograf(pattern[0], dn)
    if n == 3:
        return three_point(d)
    if n == 4:
        return four_point(d)
    raise ValueError("patterns with more than three fixed entries unsupported")


def _pattern_ctilde_series(pattern: tuple, K: int) -> SeriesInvX:
    """pi*C(pattern, d_n) as a 1/X-series for the family d_n = 3g-3+n-|pattern|."""
    n = len(pattern) + 1
    if n == 1:
        ser_g = SeriesInvX.one(K)
    else:
        gmax = 40 if n <= 3 else 25
        samples = []
        for g in range(4, gmax + 1):
            dn = 3 * g - 3 + n - sum(pattern)
            samples.append((g, _pattern_c(pattern, dn) / one_point_c(3 * g - 2)))
        ser_g = fit_rational(samples).series_at_infinity(K)
    pc_g = ser_g * one_point_series(K)
    # reindex 1/g -> 1/X via g = (X + 2 - n)/2, i.e. 1/g = 2x/(1 + (2-n)x)
    inner = SeriesInvX([ZERO] + [2 * Q(n - 2) ** j for j in range(K)], K)
    return pc_g.compose(inner)


def pi_gamma_series(K: int) -> SeriesInvX:
    """pi * gamma(X) as a 1/X-series: the one-point series at g = (X+1)/2."""
    inner = SeriesInvX([ZERO] + [2 * (-ONE) ** j for j in range(K)], K)
    return one_point_series(K).compose(inner)


_TABLE2_CACHE: Dict[int, Dict[str, Dict[int, MultPoly]]] = {}


def table2_fit(K: int = TABLE2_CAP) -> Dict[str, Dict[int, MultPoly]]:
    """Fit the universal polynomials for orders 1..K (K <= 4).

    Returns {"ctilde": {k: MultPoly}, "chat": {k: MultPoly}} where ctilde_k
    are the 1/X^k coefficients of pi*C(d) and chat_k those of C(d)/gamma(X).
    Every fit is overdetermined by >= 3 pattern rows and must hold exactly.
    """
    if not 1 <= K <= TABLE2_CAP:
        raise ValueError(f"table2_fit supports 1 <= K <= {TABLE2_CAP}")
    hit = _TABLE2_CACHE.get(K)
    if hit is not None:
        return hit
    ctilde_rows = {p: _pattern_ctilde_series(p, K) for p in PATTERNS}
    pg = pi_gamma_series(K)
    chat_rows = {p: ser / pg for p, ser in ctilde_rows.items()}
    result: Dict[str, Dict[int, MultPoly]] = {"ctilde": {}, "chat": {}}
    for name, rows in (("ctilde", ctilde_rows), ("chat", chat_rows)):
        for k in range(1, K + 1):
            monos = table2_monomials(k)
            if len(PATTERNS) - len(monos) < 3:
                raise ArithmeticError(
                    f"fit for k={k} lacks the required 3 surplus rows"
                )
            matrix = [
                [_mono_value(m, _pattern_pvec(p)) for m in monos]
                for p in PATTERNS
            ]
            rhs = [rows[p].coeffs[k] for p in PATTERNS]
            sol = solve_linear_exact(matrix, rhs)
            result[name][k] = {
                m: c for m, c in zip(monos, sol) if c
            }
    _TABLE2_CACHE[K] = result
    return result


def ctilde_poly(k: int) -> MultPoly:
    """The universal polynomial c~_k (coefficient of X^-k in pi*C)."""
    if not 0 <= k <= TABLE2_CAP:
        raise ValueError(f"ctilde_poly supports 0 <= k <= {TABLE2_CAP}")
    if k == 0:
        return {(0, 0, 0, 0): ONE}
    return table2_fit(TABLE2_CAP)["ctilde"][k]


def chat_poly(k: int) -> MultPoly:
    """The universal polynomial c^_k (coefficient of X^-k in C/gamma)."""
    if not 0 <= k <= TABLE2_CAP:
        raise ValueError(f"chat_poly supports 0 <= k <= {TABLE2_CAP}")
    if k == 0:
        return {(0, 0, 0, 0): ONE}
    return table2_fit(TABLE2_CAP)["chat"][k]


def mult_poly_json(k: int, poly: MultPoly) -> dict:
    """JSON-ready form: exponents mapped by name, coefficients as "p/q"."""
    monos = []
    for exps in sorted(poly, key=lambda t: (sum(e * w for e, w in zip(t, _PWEIGHTS)), t)):
        named = {
            f"p{d}": e for d, e in zip(_PVALS, exps) if e
        }
        monos.append({"exponents": named, "coefficient": rat_str(poly[exps])})
    return {"k": k, "monomials": monos}


def mult_poly_eval(poly: MultPoly, pvec: Tuple[int, int, int, int]):
    acc = ZERO
    for exps, c in poly.items():
        acc += c * _mono_value(exps, pvec)
    return acc


# ----------------------------------------------------------------------
# Pointwise bounds and deviations.
# ----------------------------------------------------------------------


def theorem2_product(d: Sequence[int]):
    """prod_{j=1}^{p0} (1 + (2 + j - p0)/(3X - 3 p1 - 3 j)) for the vector d,

    where p0 and p1 count 0- and 1-entries and X = X(d); the uniform
    approximation pi*C(d) ~ product at large X.  A vanishing denominator
    raises (degenerate product).
    """
    p0 = sum(1 for v in d if v == 0)
    p1 = sum(1 for v in d if v == 1)
    threeX = 2 * sum(d) + len(d)
    acc = ONE
    for j in range(1, p0 + 1):
        den = threeX - 3 * p1 - 3 * j
        if den == 0:
            raise ValueError("degenerate product")
        acc *= ONE + Q(2 + j - p0, den)
    return acc


def corollary1_deviation(g: int, k: int, precision: int = 50) -> HPDecimal:
    """| pi C(0^k, 2^(3g-3+k)) e^(k^2/(30g)) - 1 | at the given precision."""
    from .dvv import c_value  # local import keeps module layering acyclic

    if g < 2 or k < 0:
        raise ValueError("corollary1_deviation needs g >= 2, k >= 0")
    d = (0,) * k + (2,) * (3 * g - 3 + k)
    c = c_value(d)
    pi = pi_value(precision + 10)
    ek = exp_decimal(Q(k * k, 30 * g), precision + 10)
    cd = to_decimal(c, precision + 10)
    with localcontext() as ctx:
        ctx.prec = precision + 10
        val = abs(pi.value * cd.value * ek.value - 1)
    with localcontext() as ctx:
        ctx.prec = precision
        val = +val
    return HPDecimal(val, precision)


class PiLinear(NamedTuple):
    """A number of the form r/pi + s with exact rational r, s."""

    r: object
    s: object

    def bounds(self, pi_lo, pi_hi) -> Tuple[object, object]:
        if self.r >= 0:
            return self.r / pi_hi + self.s, self.r / pi_lo + self.s
        return self.r / pi_lo + self.s, self.r / pi_hi + self.s

    def __str__(self) -> str:
        def plain(q) -> str:
            return str(int(q.numerator)) if q.denominator == 1 else rat_str(q)

        return f"{plain(self.r)}/pi + {plain(self.s)}"


_FB_CACHE: Dict[Tuple[int, int], PiLinear] = {}
_FB_BASE = PiLinear(ONE, ZERO)


def f_bound(X: int, n: int) -> PiLinear:
    """The recursive majorant: f = 1/pi on the strata X <= 7 or n <= 2, else

        f(X, n) = (2/3) f(X-1, n-1) + (1/3) f(X-1, n+1) + 4/((X-1)(X-2)).
    """
    if X < 1 or n < 1:
        raise ValueError("f_bound needs X >= 1 and n >= 1")
    if X <= 7 or n <= 2:
        return _FB_BASE
    hit = _FB_CACHE.get((X, n))
    if hit is not None:
        return hit
    a = f_bound(X - 1, n - 1)
    b = f_bound(X - 1, n + 1)
    val = PiLinear(
        Q(2, 3) * a.r + Q(1, 3) * b.r,
        Q(2, 3) * a.s + Q(1, 3) * b.s + Q(4, (X - 1) * (X - 2)),
    )
    _FB_CACHE[(X, n)] = val
    return val


def lemma6_check(
    xmax: int = 200, nmax: int = 120, digits: int = 50
) -> Tuple[bool, object]:
    """Interval-verify the majorant's three properties up to (xmax, nmax):

    (1) 1/pi <= f(X, n) <= 1, (2) f(X, n) nondecreasing in n, and (3) the
    scaled excess X (f(X, n) - 1/pi) over n <= X/5, 50 <= X, stays bounded.
    Returns (all checks passed, certified upper bound for the excess).
    """
    lo, hi = pi_interval(digits)
    ok = True
    excess = ZERO
    for X in range(1, xmax + 1):
        prev: Optional[PiLinear] = None
        for n in range(1, nmax + 2):
            f = f_bound(X, n)
            low1 = (
                (f.r - 1) / hi + f.s if f.r >= 1 else (f.r - 1) / lo + f.s
            )
            if low1 < 0:
                ok = False
            if f.r / lo + f.s > 1:
                ok = False
            if prev is not None and n <= nmax + 1:
                d_r, d_s = f.r - prev.r, f.s - prev.s
                dl = d_r / hi + d_s if d_r >= 0 else d_r / lo + d_s
                if dl < 0:
                    ok = False
            prev = f
            if X >= 50 and n <= X // 5:
                scaled = PiLinear(X * (f.r - 1), X * f.s)
                up = scaled.bounds(lo, hi)[1]
                if up > excess:
                    excess = up
    return ok, excess
