"""Invariant polynomials f_{n,m}(x, s), their weight parts, and closed forms.

The coefficient table ``a(n, m, 1..n)`` comes from the triangular recurrence
obtained by expanding ``f(x + 1, x) = 1``; no division ever occurs, so every
entry is an integer by construction.  The polynomial itself is then
``x^n + sum_j a(n, m, j) x^(k n - m j) s^j`` where ``k`` is the smallest
weight that keeps the x-exponent nonnegative.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactpoly import (
    ONE,
    InexactDivisionError,
    MPoly,
    S,
    X,
    ZPoly,
    ZSeries,
    binomial,
    series_inverse,
    weight_decompose,
)
from .report import VerifyReport


@dataclass(frozen=True)
class CoeffTable:
    n: int
    m: int
    a: tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        """``a(n, m, j)`` with the implicit ``a(n, m, 0) = 1``."""
        if j == 0:
            return 1
        return self.a[j - 1]

    def row(self) -> list[int]:
        """The table row including the leading 1."""
        return [1, *self.a]


@dataclass(frozen=True)
class InvariantPoly:
    n: int
    m: int
    poly: MPoly
    parts: dict

    def part(self, k: int) -> MPoly:
        return self.parts.get(k, MPoly())


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


def _check_nm(n, m, n_min=1):
    if n < n_min:
        raise ValueError(f"n must be >= {n_min}, got {n}")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")


@lru_cache(maxsize=None)
def _coeffs(n: int, m: int) -> tuple[int, ...]:
    residue = [(-m * j) % n for j in range(n + 1)]
    a = [1] + [0] * n
    for k in range(1, n + 1):
        acc = -binomial(n, k)
        for j in range(1, k):
            acc -= a[j] * binomial(residue[j], k - j)
        a[k] = acc
    return tuple(a[1:])


def coeff_table(n: int, m: int) -> CoeffTable:
    _check_nm(n, m)
    return CoeffTable(n, m, _coeffs(n, m))


def x_exponent(n: int, m: int, j: int) -> int:
    """x-exponent carried by ``s^j`` in ``f_{n,m}``: ``ceil(m j / n) n - m j``."""
    return -(m * j) % n


@lru_cache(maxsize=None)
def _invariant(n: int, m: int) -> InvariantPoly:
    a = _coeffs(n, m)
    terms = {(n, 0): 1}
    for j in range(1, n + 1):
        if a[j - 1]:
            terms[(x_exponent(n, m, j), j)] = a[j - 1]
    poly = MPoly(terms)
    return InvariantPoly(n, m, poly, weight_decompose(poly, n, m))


def invariant_poly(n: int, m: int) -> InvariantPoly:
    _check_nm(n, m)
    return _invariant(n, m)


def weight_part(n: int, m: int, k: int) -> MPoly:
    """``p_k(n, m, x, s)``; for ``n = 0`` the constant ``(-1)^(k-1) C(m, k)``."""
    _check_nm(n, m, n_min=0)
    if not 1 <= k <= m:
        raise ValueError(f"weight k must lie in 1..{m}, got {k}")
    if n == 0:
        return MPoly.const((-1) ** (k - 1) * binomial(m, k))
    return _invariant(n, m).part(k)


def _div_exact(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise InexactDivisionError(f"{num} / {den} is not an integer")
    return q


def p1_explicit(n: int, m: int) -> MPoly:
    """Closed form of ``p_1`` as a signed sum of ``C(n-(m-1)j, j) n/(n-(m-1)j)``."""
    _check_nm(n, m)
    terms = {}
    for j in range(n // m + 1):
        top = n - (m - 1) * j
        c = _div_exact(binomial(top, j) * n, top)
        terms[(n - m * j, j)] = (-1) ** j * c
    return MPoly(terms)


def pm1_explicit(n: int, m: int) -> MPoly:
    """Closed form of ``p_{m-1}(n, m, x, s)``.

    Built as ``(-1)^m S(x, (-1)^(m-1) s)`` with
    ``S = sum_j C(n-j, (m-1)n - mj) n/(n-j) x^((m-1)n - mj) s^j``.
    """
    _check_nm(n, m)
    if m < 2:
        raise ValueError("pm1_explicit needs m >= 2")
    terms = {}
    top_j = (m - 1) * n // m
    twist = (-1) ** (m - 1)
    for j in range(top_j + 1):
        e = (m - 1) * n - m * j
        b = binomial(n - j, e)
        if not b:
            continue
        c = _div_exact(b * n, n - j)
        terms[(e, j)] = (-1) ** m * c * twist**j
    return MPoly(terms)


def tilde_p1(n: int, m: int) -> MPoly:
    if n == 0:
        return ONE
    return p1_explicit(n, m)


@lru_cache(maxsize=None)
def lucas(n: int) -> MPoly:
    if n < 0:
        raise ValueError("Lucas index must be nonnegative")
    prev, cur = MPoly.const(2), X
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, X * cur + S * prev
    return cur


def _shift_line(f: MPoly) -> MPoly:
    return f.subs(X + 1, X)


def verify_lemma1(n: int, m: int) -> VerifyReport:
    if m < 2:
        raise ValueError("the weighted sum is empty for m = 1; use the (x - s)^n checks")
    _check_nm(n, m)
    lhs = sum((weight_part(n, m, k) for k in range(1, m)), MPoly())
    lhs = _shift_line(lhs)
    rhs = 1 + (-1) ** (m * (n - 1)) * X**n
    return VerifyReport.compare("lemma1", {"n": n, "m": m}, lhs, rhs)


def verify_convolution(n: int, m: int) -> VerifyReport:
    """``sum_k C(n, k) p~_1(n - m k, m) s^k = x^n``."""
    _check_nm(n, m, n_min=0)
    lhs = MPoly()
    for k in range(n // m + 1):
        lhs = lhs + tilde_p1(n - m * k, m) * S**k * binomial(n, k)
    return VerifyReport.compare("convolution", {"n": n, "m": m}, lhs, X**n)


def _series(polys, order):
    return ZSeries(polys, order)


def verify_genfun(m: int, N: int) -> VerifyReport:
    """Generating-function identities for m = 2 and m = 3, truncated at order N."""
    if m not in (2, 3):
        raise ValueError("generating functions are only tabulated for m in {2, 3}")
    if N < 1:
        raise ValueError("series order must be positive")
    params = {"m": m, "N": N}
    checks = []
    luc = _series([lucas(n) for n in range(N)], N)
    checks.append(VerifyReport.compare(
        "genfun.lucas", params,
        luc, ZSeries.from_poly(ZPoly([2, -X]), N) * series_inverse(ZPoly([1, -X, -S]), N),
    ))
    if m == 3:
        p1 = _series([weight_part(n, 3, 1) for n in range(N)], N)
        checks.append(VerifyReport.compare(
            "genfun.p1", params,
            ZSeries.from_poly(ZPoly([1, -X, 0, S]), N) * p1,
            ZSeries.from_poly(ZPoly([3, -2 * X]), N),
        ))
        p2 = _series([weight_part(n, 3, 2) for n in range(N)], N)
        checks.append(VerifyReport.compare(
            "genfun.p2", params,
            p2,
            ZSeries.from_poly(ZPoly([-3, 0, X * S]), N) * series_inverse(ZPoly([1, 0, -X * S, -S * S]), N),
        ))
        for n in range(N):
            luc_xx = lucas(n).subs(X, X)
            checks.append(VerifyReport.compare(
                "genfun.p1_line", {"n": n},
                _shift_line(weight_part(n, 3, 1)), 1 + luc_xx,
            ))
            checks.append(VerifyReport.compare(
                "genfun.p2_line", {"n": n},
                _shift_line(weight_part(n, 3, 2)), _sign(n - 1) * X**n - luc_xx,
            ))
    else:
        for n in range(N):
            checks.append(VerifyReport.compare(
                "genfun.p1_lucas", {"n": n}, weight_part(n, 2, 1), lucas(n).subs(X, -S),
            ))
    return VerifyReport.combine("genfun", params, checks)


def _p2_m3_closed(n: int) -> MPoly:
    terms = {}
    for j in range(2 * n // 3 + 1):
        b = binomial(n - j, 2 * n - 3 * j)
        if b:
            terms[(2 * n - 3 * j, j)] = -_div_exact(b * n, n - j)
    return MPoly(terms)


def verify_smallm(n: int) -> VerifyReport:
    """Closed forms for m = 1, 2, 3 at index n >= 1."""
    _check_nm(n, 1)
    checks = [
        VerifyReport.compare("smallm.m1", {"n": n}, weight_part(n, 1, 1), (X - S) ** n),
        VerifyReport.compare("smallm.lucas", {"n": n}, weight_part(n, 2, 1), lucas(n).subs(X, -S)),
        VerifyReport.compare("smallm.p1_m3", {"n": n}, weight_part(n, 3, 1), p1_explicit(n, 3)),
        VerifyReport.compare("smallm.p2_m3", {"n": n}, weight_part(n, 3, 2), _p2_m3_closed(n)),
        VerifyReport.compare(
            "smallm.m3_line", {"n": n},
            _shift_line(p1_explicit(n, 3) + _p2_m3_closed(n)),
            1 + _sign(n - 1) * X**n,
        ),
    ]
    return VerifyReport.combine("smallm", {"n": n}, checks)


def numeric_product_oracle(n: int, m: int, x0, s0, tol: float = 1e-9) -> VerifyReport:
    """Compare ``f_{n,m}(x0, s0)`` with ``1 - prod_j (1 - w^j x0 + w^(m j) s0)`` in floats."""
    if n > 12 or m > 12:
        raise ValueError("the floating-point product is only trusted for n, m <= 12")
    _check_nm(n, m)
    x0, s0 = Fraction(x0), Fraction(s0)
    exact = invariant_poly(n, m).poly.evaluate(x0, s0)
    xf, sf = float(x0), float(s0)
    prod = complex(1.0)
    for j in range(n):
        w = cmath.exp(2j * math.pi * j / n)
        prod *= 1 - w * xf + w**m * sf
    approx = 1 - prod
    scale = max(1.0, abs(float(exact)))
    rel = abs(approx.real - float(exact)) / scale
    imag = abs(approx.imag) / scale
    params = {"n": n, "m": m, "x0": str(x0), "s0": str(s0)}
    if rel <= tol and imag <= tol:
        return VerifyReport("oracle", params)
    return VerifyReport(
        "oracle", params, False,
        f"exact = {exact}\nfloat = {approx!r}\nrelative error = {rel:.3e}, imaginary residue = {imag:.3e}",
    )
