"""Exact truncated q-series arithmetic over arbitrary-precision integers.

This module builds the q-expansions everything else consumes:

* ``partition_series`` -- 1/(q;q)_inf, whose coefficient of q^N is the
  partition count p(N), via the pentagonal-number recurrence.
* ``euler_function`` -- the sparse pentagonal expansion of (q;q)_inf.
* ``bivariate_series`` -- the two-variable crank and rank generating
  functions, stored per power of q as Laurent polynomials in the
  statistic marker w.
* ``appell_sum`` -- the one-sided Appell-type sums
  sum_{n>=1} (-1)^{n+1} q^{l*n^2/2 + (r/2+rho)n} / (1-q^n)^r,
  whose quotients by (q;q)_inf generate symmetrized positive moments.
* ``ospt_numerator`` -- the alternating sum
  sum_{n>=1} (-1)^{n+1} q^{n(n+1)/2} (1-q^{n^2}) / (1-q^n),
  whose quotient by (q;q)_inf generates the ospt sequence.

All series arithmetic is exact (Python integers) and silently truncated at
a fixed order ``nmax``.  Complex floating-point evaluation of the same
functions, with certified tail bounds, lives in the ``*_value`` functions;
those sum the defining series directly and never go through the truncated
integer expansions, so the two routes can be played against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import ConvergenceError

EVAL_MAX_TERMS = 10**6


class ExactSeries:
    """Power series in q with integer coefficients, truncated at q^nmax.

    ``coeffs[n]`` is the coefficient of q^n; the list always has exactly
    ``nmax + 1`` entries.  ``truncated`` records whether some operation has
    already discarded exponents beyond ``nmax``.
    """

    __slots__ = ("coeffs", "truncated")

    def __init__(self, coeffs, truncated: bool = False):
        self.coeffs = list(coeffs)
        if not self.coeffs:
            raise ValueError("need at least the constant coefficient")
        self.truncated = truncated

    @property
    def nmax(self) -> int:
        return len(self.coeffs) - 1

    def degree(self) -> int:
        """Largest exponent with a nonzero coefficient, or -1 for the zero series."""
        for n in range(self.nmax, -1, -1):
            if self.coeffs[n]:
                return n
        return -1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if self.nmax >= 6 else ""
        flag = ", truncated" if self.truncated else ""
        return f"ExactSeries([{head}{tail}], nmax={self.nmax}{flag})"

    def _check_order(self, other: "ExactSeries") -> None:
        if self.nmax != other.nmax:
            raise ValueError(
                f"truncation orders differ: {self.nmax} != {other.nmax}"
            )

    def __add__(self, other: "ExactSeries") -> "ExactSeries":
        self._check_order(other)
        return ExactSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            truncated=self.truncated or other.truncated,
        )

    def __sub__(self, other: "ExactSeries") -> "ExactSeries":
        self._check_order(other)
        return ExactSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            truncated=self.truncated or other.truncated,
        )

    def __neg__(self) -> "ExactSeries":
        return ExactSeries([-a for a in self.coeffs], truncated=self.truncated)

    def __mul__(self, other: "ExactSeries") -> "ExactSeries":
        """Exact Cauchy product, truncated at nmax."""
        self._check_order(other)
        nmax = self.nmax
        out = [0] * (nmax + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                bs = other.coeffs
                for j in range(nmax + 1 - i):
                    b = bs[j]
                    if b:
                        out[i + j] += a * b
        da, db = self.degree(), other.degree()
        overflow = da >= 0 and db >= 0 and da + db > nmax
        return ExactSeries(
            out, truncated=self.truncated or other.truncated or overflow
        )

    def partial_value(self, x: complex) -> complex:
        """Horner evaluation of the truncated polynomial at x."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def write_csv(self, fh) -> None:
        """Write rows ``n,coefficient`` in decimal."""
        fh.write("n,coefficient\n")
        for n, c in enumerate(self.coeffs):
            fh.write(f"{n},{c}\n")


class BivariateSeries:
    """Per-power-of-q Laurent polynomials in the statistic marker w.

    ``terms[n]`` is a dense list of 2n+1 integers: index m+n holds the
    coefficient of w^m q^n.  Every generating function stored here has its
    w-support inside [-n, n].
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        self.terms = terms
        for n, row in enumerate(terms):
            if len(row) != 2 * n + 1:
                raise ValueError(f"row {n} must have {2 * n + 1} entries")

    @property
    def nmax(self) -> int:
        return len(self.terms) - 1

    def coefficient(self, n: int, m: int) -> int:
        """Coefficient of w^m q^n (zero outside the stored support)."""
        if abs(m) > n:
            return 0
        return self.terms[n][m + n]

    def row(self, n: int) -> dict:
        """Nonzero entries of the q^n coefficient as a map m -> value."""
        return {
            m - n: c for m, c in enumerate(self.terms[n]) if c
        }

    def collapse_marker(self) -> ExactSeries:
        """Set w = 1, i.e. sum each Laurent row."""
        return ExactSeries([sum(row) for row in self.terms])

    def is_marker_symmetric(self) -> bool:
        """True if every row is invariant under m -> -m."""
        return all(row == row[::-1] for row in self.terms)

    def write_csv(self, fh) -> None:
        """Write rows ``n,m,coefficient`` sorted by (n, m)."""
        fh.write("n,m,coefficient\n")
        for n, row in enumerate(self.terms):
            for i, c in enumerate(row):
                if c:
                    fh.write(f"{n},{i - n},{c}\n")


def partition_series(nmax: int) -> ExactSeries:
    """Expand 1/(q;q)_inf through q^nmax; coefficient of q^N is p(N).

    Uses the pentagonal-number recurrence
    p(N) = sum_{k>=1} (-1)^{k+1} [p(N-k(3k-1)/2) + p(N-k(3k+1)/2)],
    which needs O(nmax^(3/2)) big-integer additions instead of the
    O(nmax^2) of repeated product inversion.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    p = [0] * (nmax + 1)
    p[0] = 1
    for n in range(1, nmax + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            term = p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                term += p[n - g2]
            total += term if k % 2 == 1 else -term
            k += 1
        p[n] = total
    return ExactSeries(p)


def euler_function(nmax: int) -> ExactSeries:
    """Expand (q;q)_inf = sum_{k in Z} (-1)^k q^{k(3k-1)/2} through q^nmax."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    coeffs = [0] * (nmax + 1)
    coeffs[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 > nmax:
            break
        sign = -1 if k % 2 == 1 else 1
        coeffs[g1] += sign
        g2 = k * (3 * k + 1) // 2
        if g2 <= nmax:
            coeffs[g2] += sign
        k += 1
    return ExactSeries(coeffs)


def _quadratic_exponent(kind: str, n: int) -> int:
    """Exponent of the bilateral theta-like sum: n(n+1)/2 or n(3n+1)/2."""
    if kind == "crank":
        return n * (n + 1) // 2
    if kind == "rank":
        return n * (3 * n + 1) // 2
    raise ValueError(f"kind must be 'crank' or 'rank', got {kind!r}")


def numerator_entries(kind: str, nmax: int):
    """Sparse monomials of (q;q)_inf times the crank/rank generating function.

    For n >= 1 the factor (1-w)/(1-w q^n) expands to
    1 + sum_{k>=1} w^k (q^{nk} - q^{n(k-1)}), and for n = -v <= -1 to
    sum_{k>=1} q^{vk} (w^{1-k} - w^{-k}), so each power of q receives only
    finitely many monomials.  Yields (q-exponent, w-exponent, +-1).
    """
    yield (0, 0, 1)
    n = 1
    while _quadratic_exponent(kind, n) <= nmax:
        base = _quadratic_exponent(kind, n)
        sign = 1 if n % 2 == 0 else -1
        yield (base, 0, sign)
        k = 1
        while base + n * (k - 1) <= nmax:
            if base + n * k <= nmax:
                yield (base + n * k, k, sign)
            yield (base + n * (k - 1), k, -sign)
            k += 1
        n += 1
    v = 1
    while _quadratic_exponent(kind, -v) + v <= nmax:
        base = _quadratic_exponent(kind, -v)
        sign = 1 if v % 2 == 0 else -1
        k = 1
        while base + v * k <= nmax:
            yield (base + v * k, 1 - k, sign)
            yield (base + v * k, -k, -sign)
            k += 1
        v += 1


def bivariate_series(kind: str, nmax: int) -> BivariateSeries:
    """Two-variable crank or rank generating function through q^nmax.

    The coefficient of w^m q^N counts partitions of N with crank (or rank)
    equal to m, in the raw generating-function normalization.  For the
    crank that means the q^1 row reads w^-1 - 1 + w rather than the
    combinatorial single partition; downstream consumers decide whether to
    patch that column.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    p = partition_series(nmax).coeffs
    rows = [[0] * (2 * N + 1) for N in range(nmax + 1)]
    for q0, m, sign in numerator_entries(kind, nmax):
        if sign == 1:
            for j in range(nmax + 1 - q0):
                N = q0 + j
                rows[N][m + N] += p[j]
        else:
            for j in range(nmax + 1 - q0):
                N = q0 + j
                rows[N][m + N] -= p[j]
    return BivariateSeries(rows)


def moment_weight(r: int) -> Fraction:
    """Half-integer shift rho(r): 0 for odd r, 1/2 for even r."""
    return Fraction(0) if r % 2 == 1 else Fraction(1, 2)


def _appell_exponent(ell: int, r: int, n: int) -> int:
    """Integer exponent l*n^2/2 + (r/2 + rho)*n, asserted integral."""
    rho = moment_weight(r)
    e = Fraction(ell * n * n, 2) + (Fraction(r, 2) + rho) * n
    if e.denominator != 1:
        raise AssertionError(f"non-integral exponent for ell={ell}, r={r}, n={n}")
    return e.numerator


def appell_sum(ell: int, r: int, nmax: int) -> ExactSeries:
    """One-sided Appell-type sum through q^nmax.

    Expands sum_{n>=1} (-1)^{n+1} q^{l n^2/2 + (r/2+rho)n} / (1-q^n)^r with
    rho = 0 (odd r) or 1/2 (even r); the exponents are integral exactly for
    l in {1, 3}, the two cases with partition-statistic meaning (l=1 gives
    crank-side, l=3 rank-side symmetrized moments after division by
    (q;q)_inf).  Each denominator is expanded by the negative binomial
    series; the outer sum stops once its minimal exponent passes nmax.
    """
    if ell not in (1, 3):
        raise ValueError(f"ell must be 1 or 3, got {ell}")
    if r < 1:
        raise ValueError("r must be >= 1")
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    coeffs = [0] * (nmax + 1)
    n = 1
    while True:
        base = _appell_exponent(ell, r, n)
        if base > nmax:
            break
        sign = 1 if n % 2 == 1 else -1
        k = 0
        while base + n * k <= nmax:
            coeffs[base + n * k] += sign * comb(k + r - 1, r - 1)
            k += 1
        n += 1
    return ExactSeries(coeffs)


def ospt_numerator(nmax: int) -> ExactSeries:
    """The alternating series whose quotient by (q;q)_inf generates ospt.

    Expands sum_{n>=1} (-1)^{n+1} q^{n(n+1)/2} (1-q^{n^2}) / (1-q^n)
    exactly: the factor (1-q^{n^2})/(1-q^n) is the geometric polynomial
    1 + q^n + ... + q^{n(n-1)}.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    coeffs = [0] * (nmax + 1)
    n = 1
    while n * (n + 1) // 2 <= nmax:
        base = n * (n + 1) // 2
        sign = 1 if n % 2 == 1 else -1
        for k in range(n):
            e = base + n * k
            if e > nmax:
                break
            coeffs[e] += sign
        n += 1
    return ExactSeries(coeffs)


def ospt_series(nmax: int) -> ExactSeries:
    """Generating series of ospt(N): ospt_numerator / (q;q)_inf."""
    return ospt_numerator(nmax) * partition_series(nmax)


# ---------------------------------------------------------------------------
# Direct complex evaluation with certified tail bounds.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesValue:
    """A floating-point evaluation together with its certified tail bound."""

    value: complex
    tail_bound: float
    terms: int


def _check_disk(q: complex) -> float:
    aq = abs(q)
    if aq >= 1.0:
        raise ValueError(f"|q| must be < 1, got |q| = {aq}")
    return aq


def euler_inverse_value(q: complex, tol: float = 1e-12,
                        max_terms: int = EVAL_MAX_TERMS) -> SeriesValue:
    """Evaluate 1/(q;q)_inf by direct products.

    Multiplies out (1 - q^j) until the remaining log-tail
    sum_{j>J} |q|^j / (1-|q|^j) certifies a relative error below tol.
    """
    aq = _check_disk(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if q == 0:
        return SeriesValue(1.0 + 0.0j, 0.0, 0)
    prod = 1.0 + 0.0j
    qpow = 1.0 + 0.0j
    for j in range(1, max_terms + 1):
        qpow *= q
        prod *= 1.0 - qpow
        apj = aq ** (j + 1)
        eps = apj / ((1.0 - apj) * (1.0 - aq))
        rel = math.expm1(eps) if eps < 1.0 else float("inf")
        if rel <= tol:
            value = 1.0 / prod
            return SeriesValue(value, rel * abs(value), j)
    raise ConvergenceError(
        f"euler_inverse did not converge in {max_terms} terms", achieved_bound=rel
    )


def appell_sum_value(ell: int, r: int, q: complex, tol: float = 1e-12,
                     max_terms: int = EVAL_MAX_TERMS) -> SeriesValue:
    """Evaluate the one-sided Appell-type sum directly at a complex point.

    The term bound |q|^{E(n)} / (1-|q|)^r decays like a Gaussian in n;
    summation stops when the geometric majorant of the tail drops below
    tol times the partial sum.
    """
    if ell not in (1, 3):
        raise ValueError(f"ell must be 1 or 3, got {ell}")
    if r < 1:
        raise ValueError("r must be >= 1")
    aq = _check_disk(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if q == 0:
        return SeriesValue(0.0 + 0.0j, 0.0, 0)
    acc = 0.0 + 0.0j
    one_minus = 1.0 - aq
    best = float("inf")
    for n in range(1, max_terms + 1):
        e = _appell_exponent(ell, r, n)
        qn = q ** n
        term = (q ** e) / (1.0 - qn) ** r
        acc += term if n % 2 == 1 else -term
        # tail <= bound(n+1) / (1 - |q|^{l(n+1)}): exponent gaps are >= l*n
        nb = n + 1
        head = aq ** _appell_exponent(ell, r, nb) / one_minus ** r
        ratio = aq ** (ell * nb)
        tail = head / (1.0 - ratio)
        best = min(best, tail)
        if tail <= tol * max(abs(acc), 1e-300):
            return SeriesValue(acc, tail, n)
    raise ConvergenceError(
        f"appell_sum did not converge in {max_terms} terms", achieved_bound=best
    )


def ospt_numerator_value(q: complex, tol: float = 1e-12,
                         max_terms: int = EVAL_MAX_TERMS) -> SeriesValue:
    """Evaluate the ospt numerator series directly at a complex point.

    Uses |(1-q^{n^2})/(1-q^n)| <= n, giving the term bound
    n |q|^{n(n+1)/2} and a geometric tail majorant.
    """
    aq = _check_disk(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    if q == 0:
        return SeriesValue(0.0 + 0.0j, 0.0, 0)
    acc = 0.0 + 0.0j
    best = float("inf")
    for n in range(1, max_terms + 1):
        qn = q ** n
        if qn == 1.0:  # numerically degenerate; cannot happen for |q|<1
            raise ArithmeticError("q^n == 1 inside the unit disk")
        term = q ** (n * (n + 1) // 2) * (1.0 - q ** (n * n)) / (1.0 - qn)
        acc += term if n % 2 == 1 else -term
        nb = n + 1
        head = nb * aq ** (nb * (nb + 1) // 2)
        # bound on b_{m+1}/b_m for m >= nb, decreasing in m
        ratio = (1.0 + 1.0 / nb) * aq ** (nb + 1)
        if ratio < 1.0:
            tail = head / (1.0 - ratio)
            best = min(best, tail)
            if tail <= tol * max(abs(acc), 1e-300):
                return SeriesValue(acc, tail, n)
    raise ConvergenceError(
        f"ospt_numerator did not converge in {max_terms} terms", achieved_bound=best
    )


def eval_complex(kind: str, q: complex, tol: float = 1e-12, *,
                 ell: int | None = None, r: int | None = None) -> SeriesValue:
    """Dispatch direct evaluation by series name.

    kind is one of "euler_inverse", "appell_sum" (needs ell and r), or
    "ospt_numerator".
    """
    if kind == "euler_inverse":
        return euler_inverse_value(q, tol)
    if kind == "appell_sum":
        if ell is None or r is None:
            raise ValueError("appell_sum evaluation needs ell and r")
        return appell_sum_value(ell, r, q, tol)
    if kind == "ospt_numerator":
        return ospt_numerator_value(q, tol)
    raise ValueError(f"unknown series kind {kind!r}")


def tau_to_q(tau: complex) -> complex:
    """Map a point in the upper half-plane to the unit disk, q = e^{2 pi i tau}."""
    if tau.imag <= 0:
        raise ValueError("tau must have positive imaginary part")
    return cmath.exp(2j * cmath.pi * tau)
