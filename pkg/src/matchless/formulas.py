"""Closed-form sizes and exact-rational certification of inequalities.

Every verdict is computed in exact integer/rational arithmetic; no floating
point enters any comparison.  Binomials use the convention C(n,k) = 0 for
k < 0 or k > n; a few formula windows also need C(x,k) = 0 for negative x,
which the internal helper provides (the public binom rejects negative n).
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .setfam import Params


class OutOfRegimeError(ValueError):
    """A check was requested outside the hypothesis regime of its inequality."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of one exact inequality check.

    `margin` is oriented so that it is nonnegative exactly when the verdict
    holds (for strict inequalities, positive).  `regime_note` flags verdicts
    that are only meaningful modulo an unspecified absolute constant.
    """

    holds: bool
    lhs: Fraction
    rhs: Fraction
    margin: Fraction
    regime_note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "lhs": _frac(self.lhs),
            "rhs": _frac(self.rhs),
            "margin": _frac(self.margin),
            "regime_note": self.regime_note,
        }


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _verdict_le(lhs, rhs, note: Optional[str] = None) -> Verdict:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Verdict(lhs <= rhs, lhs, rhs, rhs - lhs, note)


def _verdict_ge(lhs, rhs, note: Optional[str] = None) -> Verdict:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Verdict(lhs >= rhs, lhs, rhs, lhs - rhs, note)


def _verdict_gt(lhs, rhs, note: Optional[str] = None) -> Verdict:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    return Verdict(lhs > rhs, lhs, rhs, lhs - rhs, note)


def binom(n: int, k: int) -> int:
    """Exact C(n,k); out-of-range k gives 0, negative n is an error."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def _choose0(n: int, k: int) -> int:
    """C(n,k) with the zero convention extended to negative n.

    Formula windows like C(n-l-t, m) legitimately slide past zero; they count
    sets, so the value there is 0, not the generalized binomial.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def size_A1(n: int, k: int, s: int) -> int:
    """Size of the prefix family: C(n,k) - C(n-s+1,k)."""
    if s < 1:
        raise ValueError(f"need s >= 1, got {s}")
    if n < s - 1:
        raise ValueError(f"need n >= s-1, got n={n}, s={s}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    return binom(n, k) - binom(n - s + 1, k)


def size_P(m: int, s: int, l: int) -> int:
    """Size of the family {P : |P| + |P meet [l-1]| >= m+1} on [s*m+s-l]."""
    return size_P_upto(m, s, l, s * m + s - l)


def size_P_upto(m: int, s: int, l: int, kmax: int) -> int:
    """Members of size at most kmax, via the double sum over (size, prefix hits)."""
    params = Params.from_msl(m, s, l)
    n = params.n
    if not 0 <= kmax <= n:
        raise ValueError(f"layer bound {kmax} outside 0..{n}")
    total = 0
    for p in range(kmax + 1):
        for x in range(min(p, l - 1) + 1):
            if p + x >= m + 1:
                total += binom(l - 1, x) * binom(n - l + 1, p - x)
    return total


def size_H(n: int, k: int, s: int) -> int:
    """Size of the Hilton-Milner-type family: |A_1| - C(n-k-s+1, k-1) + 1."""
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if s + k - 1 > n:
        raise ValueError(f"need s + k - 1 <= n, got {s + k - 1} > {n}")
    return size_A1(n, k, s) - binom(n - k - s + 1, k - 1) + 1


def kleitman_value(n: int, s: int) -> int:
    """Maximum family size on [n] with no s pairwise disjoint members, for the
    two solved residues of n mod s.

    With q = ceil((n+1)/s): for n = s*q - 1 the value is the tail
    sum_{t=q}^{n} C(n,t); for n = s*q it is C(n-1,q) plus the tail from q+1.
    The second is exactly twice the first at the preceding n.
    """
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    r = n % s
    if r == s - 1:
        q = (n + 1) // s
        return sum(math.comb(n, t) for t in range(q, n + 1))
    if r == 0:
        q = n // s
        return math.comb(n - 1, q) + sum(math.comb(n, t) for t in range(q + 1, n + 1))
    raise ValueError(f"n mod s must be 0 or s-1, got n={n}, s={s} (residue {r})")


def frankl_upper(n: int, k: int, s: int) -> int:
    """Universal bound (s-1)*C(n-1,k-1) on k-uniform families with nu < s."""
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    if n < k * s:
        raise ValueError(f"need n >= k*s, got n={n}, k*s={k * s}")
    return (s - 1) * math.comb(n - 1, k - 1)


def deficiency_lower(n: int, k: int, t: int) -> Fraction:
    """Exact lower bound (1 + t/k)*C(n-1,k-1) on the missing k-sets of any
    family with no s-matching, where n = k*s + t."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
    if (n - t) % k != 0 or (n - t) // k < 1:
        raise ValueError(f"n - t must be a positive multiple of k, got n={n}, t={t}")
    return Fraction(k + t, k) * math.comb(n - 1, k - 1)


def check_low_layers(n: int, k: int, s: int) -> Verdict:
    """sum_{i<=k} C(n,i) <= (s-1)/(s-2) * C(n,k), for n >= s*k - 1, s >= 3."""
    if s < 3:
        raise OutOfRegimeError(f"need s >= 3, got {s}")
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if n < s * k - 1:
        raise OutOfRegimeError(f"need n >= s*k - 1, got n={n}, s*k-1={s * k - 1}")
    lhs = sum(math.comb(n, i) for i in range(k + 1))
    rhs = Fraction(s - 1, s - 2) * math.comb(n, k)
    return _verdict_le(lhs, rhs)


def check_hm_calc(m: int, s: int, l: int) -> Verdict:
    """C(n-m-l+1, m-1) > (l/2) * sum_{i=1}^{m-1} C(n-1, i-1) on [s*m+s-l],
    in the regime l >= 2, s >= (3/2)l + m."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    if l < 2:
        raise OutOfRegimeError(f"need l >= 2, got {l}")
    if 2 * s < 3 * l + 2 * m:
        raise OutOfRegimeError(
            f"need s >= (3/2)l + m = {Fraction(3 * l, 2) + m}, got s={s}"
        )
    Params.from_msl(m, s, l)
    n = s * m + s - l
    lhs = _choose0(n - m - l + 1, m - 1)
    rhs = Fraction(l, 2) * sum(math.comb(n - 1, i - 1) for i in range(1, m))
    return _verdict_gt(lhs, rhs)


def check_condition_1(m: int, s: int, l: int, t: int) -> Verdict:
    """First matching-trade-off condition at shift t:
    C((m+1)(s-l)-1, m) > (l+t-1)*sum_{i=1}^{m-1} C(n-1,i-1)
                         + C(n-l+1, m) - C(n-l-t, m)."""
    _check_params_t(m, s, l, t)
    n = s * m + s - l
    lhs = _choose0((m + 1) * (s - l) - 1, m)
    rhs = (
        (l + t - 1) * sum(math.comb(n - 1, i - 1) for i in range(1, m))
        + _choose0(n - l + 1, m)
        - _choose0(n - l - t, m)
    )
    return _verdict_gt(lhs, rhs)


def check_condition_2(m: int, s: int, l: int, t: int) -> Verdict:
    """Second matching-trade-off condition at shift t:
    (t/(m+1) + 1) * C(n-(l+t)m-1, m) > (s-1)*sum_{i=1}^{m} C(n-1,i-1)."""
    _check_params_t(m, s, l, t)
    n = s * m + s - l
    lhs = (Fraction(t, m + 1) + 1) * _choose0(n - (l + t) * m - 1, m)
    rhs = (s - 1) * sum(math.comb(n - 1, i - 1) for i in range(1, m + 1))
    return _verdict_gt(lhs, rhs)


def condition3_regime(m: int, l: int, t: int, n: int) -> Verdict:
    """Regime predicate under which the third condition's layer value
    C(n,m) - C(n-l-t+1, m) is justified: n >= (5/3)(l+t-1)m - (2/3)(l+t-1).

    Always carries a regime note: the backing statement needs an unspecified
    absolute constant s0, so a holding verdict is conditional, never proven.
    """
    if m < 1 or l < 1 or t < 0 or n < 1:
        raise ValueError("need m, l, n >= 1 and t >= 0")
    w = l + t - 1
    rhs = Fraction(5, 3) * w * m - Fraction(2, 3) * w
    return _verdict_ge(n, rhs, note="modulo unspecified s0")


def hm_stability_regime(n: int, k: int, s: int) -> Verdict:
    """Nominal surrogate n >= 2*s*k for the stability theorem's asymptotic
    hypothesis n >= 2*s*k*(1+o(1)); conditional by construction."""
    if k < 1 or s < 2 or n < 1:
        raise ValueError("need k >= 1, s >= 2, n >= 1")
    return _verdict_ge(n, 2 * s * k, note="asymptotic hypothesis; modulo unspecified s0")


def smallest_t(m: int) -> int:
    """Least t >= 0 with (1/m!)(t/(m+1)+1)(2m/5)^m > (m+1)^(m-1)/(m-1)!.

    Solved exactly: the inequality is linear in t, so t is one more than the
    floor of (Q-1)(m+1) where Q is the exact rational threshold.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    rhs = Fraction((m + 1) ** (m - 1), math.factorial(m - 1))
    coeff = Fraction(1, math.factorial(m)) * Fraction(2 * m, 5) ** m
    q = rhs / coeff
    if q <= 1:
        return 0
    return math.floor((q - 1) * (m + 1)) + 1


def find_valid_t(m: int, s: int, l: int, t_max: Optional[int] = None) -> Optional[int]:
    """Least t in [0, t_max] satisfying both trade-off conditions and the
    regime predicate; None when no such t exists.

    The default cap 10*smallest_t(m) + 10 is an order of magnitude above the
    asymptotically sufficient shift, which depends on m only.  Conditions 1
    and 3 only get harder as t grows, so the scan stops at their first
    failure; condition 2 needs a positive binomial, which bounds t as well.
    """
    Params.from_msl(m, s, l)
    if t_max is None:
        t_max = 10 * smallest_t(m) + 10
    n = s * m + s - l

    lhs1 = _choose0((m + 1) * (s - l) - 1, m)
    low_sum1 = sum(math.comb(n - 1, i - 1) for i in range(1, m))
    low_sum2 = sum(math.comb(n - 1, i - 1) for i in range(1, m + 1))
    rhs2_scaled = (m + 1) * (s - 1) * low_sum2
    c_window = _choose0(n - l + 1, m)
    w_coeff = 5 * m - 2  # condition 3 reads 3*n >= (l+t-1)*(5m-2)

    for t in range(t_max + 1):
        if 3 * n < (l + t - 1) * w_coeff:
            return None
        rhs1 = (l + t - 1) * low_sum1 + c_window - _choose0(n - l - t, m)
        if lhs1 <= rhs1:
            return None
        lhs2_scaled = (t + m + 1) * _choose0(n - (l + t) * m - 1, m)
        if lhs2_scaled > rhs2_scaled:
            return t
    return None


def cross_dep_bound(n: int, k: int, s: int) -> int:
    """Bound (s-1)*C(n,k) on the total size of s cross-dependent k-uniform
    families; attained by s-1 full layers plus one empty family."""
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    if n < s * k:
        raise ValueError(f"need n >= s*k, got n={n}, s*k={s * k}")
    return (s - 1) * math.comb(n, k)


def _check_params_t(m: int, s: int, l: int, t: int) -> None:
    Params.from_msl(m, s, l)
    if t < 0:
        raise ValueError(f"need t >= 0, got {t}")
