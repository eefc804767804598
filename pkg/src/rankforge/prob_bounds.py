"""Exact evaluation of the probability bounds for random systematic codes.

All bounds are exact rationals; float renderings are derived afterwards
and never enter a comparison.  A bound is flagged uninformative when a
lower bound fails to be positive or an upper bound fails to be below one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidParameterError
from .fq_linalg import gaussian_binomial


def euler_phi(m: int) -> int:
    """Count of s in [1, m] coprime to m, by trial factorization."""
    if m < 1:
        raise InvalidParameterError(f"m must be positive, got {m}")
    result = m
    v, f = m, 2
    while f * f <= v:
        if v % f == 0:
            result -= result // f
            while v % f == 0:
                v //= f
        f += 1
    if v > 1:
        result -= result // v
    return result


def _check_kn(q: int, k: int, n: int) -> None:
    if q < 2:
        raise InvalidParameterError(f"q must be at least 2, got {q}")
    if not 1 <= k < n:
        raise InvalidParameterError(f"need 1 <= k < n, got k={k}, n={n}")


def mrd_defect_coefficient(q: int, k: int, n: int) -> int:
    """Sum over r of r * (k choose k-r)_q * (n-k choose r)_q * q^(r^2).

    Upper bound on the total degree of the product of all determinant
    polynomials over the echelon test set.
    """
    _check_kn(q, k, n)
    return sum(
        r * gaussian_binomial(k, k - r, q) * gaussian_binomial(n - k, r, q) * q ** (r * r)
        for r in range(k + 1)
    )


def mrd_bound_rough(q: int, k: int, n: int, m: int) -> Fraction:
    """Lower bound 1 - k * prod_{i<k}(q^n - q^i) / q^m on the probability
    that a uniform systematic block generates a maximal code.

    The product form is sharper than the variant that replaces the product
    by q^(kn); either way the value may be negative for small m.
    """
    _check_kn(q, k, n)
    prod = 1
    for i in range(k):
        prod *= q ** n - q ** i
    return 1 - Fraction(k * prod, q ** m)


def mrd_bound(q: int, k: int, n: int, m: int) -> Fraction:
    """Lower bound 1 - a * q^(-m) with a = mrd_defect_coefficient(q, k, n)."""
    return 1 - Fraction(mrd_defect_coefficient(q, k, n), q ** m)


def gab_bound_rough(q: int, k: int, n: int, m: int) -> Fraction:
    """Upper bound phi(m) * (2 q^(1-m))^(floor(k/2) * floor((n-k)/2)) on the
    probability of drawing a generalized Gabidulin code."""
    _check_kn(q, k, n)
    if m < 2:
        raise InvalidParameterError(f"m must be at least 2, got {m}")
    exponent = (k // 2) * ((n - k) // 2)
    return euler_phi(m) * Fraction(2, q ** (m - 1)) ** exponent


def gab_bound(q: int, k: int, n: int, m: int) -> Fraction:
    """Upper bound phi(m) * q^(-(m-1)(n-k-1)(k-1)); informative only for
    1 < k < n - 1 where the exponent is positive."""
    _check_kn(q, k, n)
    if m < 2:
        raise InvalidParameterError(f"m must be at least 2, got {m}")
    c = (n - k - 1) * (k - 1)
    return Fraction(euler_phi(m), q ** ((m - 1) * c))


def min_extension_degree(q: int, k: int, n: int) -> int:
    """Smallest m >= 2 with 1 - a q^(-m) > (m-1) q^(-(m-1)(n-k-1)(k-1)).

    From that degree on, the lower bound for maximal codes exceeds the
    upper bound for Gabidulin codes, so non-Gabidulin maximal codes exist.
    Both sides are compared exactly; the left side minus the right is
    non-decreasing in m, so every larger m also satisfies the inequality.
    """
    _check_kn(q, k, n)
    if not 1 < k < n - 1:
        raise InvalidParameterError(
            f"need 1 < k < n - 1 for a positive exponent, got k={k}, n={n}")
    a = mrd_defect_coefficient(q, k, n)
    c = (n - k - 1) * (k - 1)
    m = 2
    while True:
        lhs = 1 - Fraction(a, q ** m)
        rhs = Fraction(m - 1, q ** ((m - 1) * c))
        if lhs > rhs:
            return m
        m += 1


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bounds for one (q, k, n, m); exact rationals plus floats."""

    q: int
    k: int
    n: int
    m: int
    mrd_rough: Fraction
    mrd_main: Fraction
    gab_rough: Fraction
    gab_main: Fraction

    @property
    def mrd_rough_valid(self) -> bool:
        return self.mrd_rough > 0

    @property
    def mrd_main_valid(self) -> bool:
        return self.mrd_main > 0

    @property
    def gab_rough_valid(self) -> bool:
        return self.gab_rough < 1

    @property
    def gab_main_valid(self) -> bool:
        return self.gab_main < 1

    def floats(self) -> dict:
        return {
            "mrd_rough": float(self.mrd_rough),
            "mrd_main": float(self.mrd_main),
            "gab_rough": float(self.gab_rough),
            "gab_main": float(self.gab_main),
        }

    def exact_strings(self) -> dict:
        return {
            "mrd_rough_exact": _frac_str(self.mrd_rough),
            "mrd_main_exact": _frac_str(self.mrd_main),
            "gab_rough_exact": _frac_str(self.gab_rough),
            "gab_main_exact": _frac_str(self.gab_main),
        }


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def bound_table(q: int, k: int, n: int, m_range) -> list[BoundReport]:
    """One report per extension degree in m_range."""
    return [
        BoundReport(q=q, k=k, n=n, m=m,
                    mrd_rough=mrd_bound_rough(q, k, n, m),
                    mrd_main=mrd_bound(q, k, n, m),
                    gab_rough=gab_bound_rough(q, k, n, m),
                    gab_main=gab_bound(q, k, n, m))
        for m in m_range
    ]


BOUNDS_CSV_FIELDS = ["q", "k", "n", "m",
                     "mrd_rough", "mrd_main", "gab_rough", "gab_main",
                     "mrd_rough_exact", "mrd_main_exact",
                     "gab_rough_exact", "gab_main_exact"]


def bound_report_row(report: BoundReport) -> dict:
    """CSV row: floats at 15 significant digits plus num/den strings."""
    row = {"q": report.q, "k": report.k, "n": report.n, "m": report.m}
    row.update({name: f"{value:.15g}" for name, value in report.floats().items()})
    row.update(report.exact_strings())
    return row
