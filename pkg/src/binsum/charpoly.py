"""Characteristic polynomials of the weight-part recurrences.

The signed weight parts ``(-1)^(k-1) p_k(n, m, x, s)`` are the power sums of
the ``C(m, k)`` products of ``k`` distinct roots of ``1 - x z + s z^m``.
Newton's identities turn the first ``C(m, k)`` power sums into the
coefficients of ``prod (1 - alpha z)``; reflecting gives the monic
characteristic polynomial ``c(m, k, x, s, z)``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exactpoly import (
    ONE,
    ZERO,
    InexactDivisionError,
    MPoly,
    S,
    X,
    ZPoly,
    binomial,
)
from .invariant import weight_part
from .report import VerifyReport

MAX_DEGREE = 70


class ResourceLimitError(ValueError):
    """The requested characteristic polynomial exceeds the configured degree bound."""


def power_sums_from_coeffs(v: Sequence[MPoly], N: int) -> list[MPoly]:
    """Power sums ``pot(1..N)`` of the reciprocal roots of ``sum v(j) z^j``.

    Solves ``sum_{j<n} v(j) pot(n - j) + n v(n) = 0`` for each ``n``; ``v`` is
    zero beyond its last entry and must start with 1.
    """
    v = [c if isinstance(c, MPoly) else MPoly.const(c) for c in v]
    if not v or v[0] != ONE:
        raise ValueError("v(0) must be 1")
    coef = lambda j: v[j] if j < len(v) else ZERO  # noqa: E731
    pot = [ZERO]  # pot[0] unused
    for n in range(1, N + 1):
        acc = coef(n) * (-n)
        for j in range(1, n):
            if not coef(j).is_zero():
                acc = acc - coef(j) * pot[n - j]
        pot.append(acc)
    return pot[1:]


def coeffs_from_power_sums(pot: Sequence[MPoly], d: int) -> list[MPoly]:
    """Invert Newton's identities: ``v(0..d)`` with ``v(0) = 1`` from ``pot(1..d)``."""
    if len(pot) < d:
        raise ValueError(f"need {d} power sums, got {len(pot)}")
    pot = [c if isinstance(c, MPoly) else MPoly.const(c) for c in pot]
    v = [ONE]
    for n in range(1, d + 1):
        acc = ZERO
        for j in range(n):
            acc = acc + v[j] * pot[n - j - 1]
        try:
            v.append((-acc).exact_div(n))
        except InexactDivisionError as exc:
            raise InexactDivisionError(
                f"power sums are not integral at n = {n}: {exc}"
            ) from None
    return v


def pot(n: int, m: int, k: int) -> MPoly:
    """``(-1)^(k-1) p_k(n, m)``, the n-th power sum of the k-fold root products."""
    p = weight_part(n, m, k)
    return -p if (k - 1) % 2 else p


def _check_mk(m, k, bound):
    if m < 2:
        raise ValueError("m must be >= 2")
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in 1..{m - 1}")
    d = binomial(m, k)
    if d > bound:
        raise ResourceLimitError(f"C({m}, {k}) = {d} exceeds the degree bound {bound}")
    return d


@lru_cache(maxsize=None)
def _char_poly(m: int, k: int) -> ZPoly:
    d = binomial(m, k)
    sums = [pot(n, m, k) for n in range(1, d + 1)]
    v = coeffs_from_power_sums(sums, d)
    return ZPoly(v).reflect()


def char_poly(m: int, k: int, bound: int = MAX_DEGREE) -> ZPoly:
    """Monic ``c(m, k, x, s, z)`` of degree ``C(m, k)``."""
    _check_mk(m, k, bound)
    c = _char_poly(m, k)
    assert c.degree == binomial(m, k) and c.leading() == ONE
    return c


def reflect_transform(c: ZPoly, b: MPoly, vd: MPoly) -> ZPoly:
    """``(-z)^d / vd * c(b / z)`` expanded as a z-polynomial.

    The ``z^(d-j)`` coefficient is ``(-1)^d c_j b^j / vd``; every division by
    ``vd`` must be exact.
    """
    d = c.degree
    sign = -1 if d % 2 else 1
    b = b if isinstance(b, MPoly) else MPoly.const(b)
    vd = vd if isinstance(vd, MPoly) else MPoly.const(vd)
    out = [ZERO] * (d + 1)
    bp = ONE
    for j in range(d + 1):
        out[d - j] = (c[j] * bp * sign).exact_div(vd)
        bp = bp * b
    return ZPoly(out)


def dual_scaled(c: ZPoly, b: MPoly, spow: int) -> ZPoly:
    """``z^d / s^spow * c(b / z)``, the right-hand side of the duality relation."""
    # (-z)^d / ((-1)^d s^spow) == z^d / s^spow
    d = c.degree
    sign = -1 if d % 2 else 1
    return reflect_transform(c, b, S**spow * sign)


def verify_duality(m: int, k: int) -> VerifyReport:
    """Check ``c(m, m-k) = z^C(m,k) / s^C(m-1,k-1) * c(m, k, (-1)^m s / z)`` up to sign.

    A characteristic polynomial is only determined up to a constant factor;
    the reference normalisation is off by ``(-1)^((k+1) C(m,k))``, which is
    recorded as ``unit`` in the report parameters.
    """
    _check_mk(m, k, MAX_DEGREE)
    lhs = char_poly(m, m - k)
    b = S * (-1 if m % 2 else 1)
    try:
        rhs = dual_scaled(char_poly(m, k), b, binomial(m - 1, k - 1))
    except InexactDivisionError as exc:
        return VerifyReport("duality", {"m": m, "k": k}, False, f"inexact division: {exc}")
    for unit in (1, -1):
        if lhs == rhs * unit:
            return VerifyReport("duality", {"m": m, "k": k, "unit": unit})
    return VerifyReport("duality", {"m": m, "k": k}, False, f"lhs = {lhs}\nrhs = {rhs}")


def verify_weight_law(m: int, k: int) -> VerifyReport:
    """Every ``x^a s^b`` in the ``z^n`` coefficient of the reflected c has ``a + m b = n k``."""
    c_star = char_poly(m, k).reflect()
    bad = []
    for n, coeff in enumerate(c_star.coeffs):
        for (a, b), c in coeff.terms.items():
            if a + m * b != n * k:
                bad.append(f"z^{n}: {c}*x^{a}*s^{b}")
    params = {"m": m, "k": k}
    if bad:
        return VerifyReport("weightlaw", params, False, "\n".join(bad))
    return VerifyReport("weightlaw", params)


def verify_pk_recurrence(m: int, k: int, N: int) -> VerifyReport:
    """``sum_j c_j pot(n + j) = 0`` for ``n = 0..N``, with ``pot(0) = C(m, k)``."""
    c = char_poly(m, k)
    d = c.degree
    seq = [pot(n, m, k) for n in range(N + d + 1)]
    bad = []
    for n in range(N + 1):
        total = ZERO
        for j, cj in enumerate(c.coeffs):
            total = total + cj * seq[n + j]
        if not total.is_zero():
            bad.append(f"n = {n}: residual {total}")
    params = {"m": m, "k": k, "N": N}
    if bad:
        return VerifyReport("pkrec", params, False, "\n".join(bad))
    return VerifyReport("pkrec", params)


def _rank(rows: list[list[Fraction]]) -> int:
    rows = [r[:] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][col]
        for r in range(rank + 1, len(rows)):
            f = rows[r][col] / p
            if f:
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


MINIMALITY_POINTS = ((3, 7), (5, -2), (-4, 11), (2, 13), (7, 3))


def verify_minimality(m: int, k: int) -> VerifyReport:
    """No recurrence of order below ``C(m, k)`` annihilates ``pot(n, m, k)``.

    A recurrence of order ``r < d`` makes the ``d x d`` Hankel matrix of
    ``pot(0..2d-2)`` singular over Q(x, s).  We certify nonsingularity by
    exhibiting an integer point where the specialised matrix has full rank.
    """
    d = _check_mk(m, k, 6)
    seq = [pot(n, m, k) for n in range(2 * d - 1)]
    params = {"m": m, "k": k, "d": d}
    ranks = []
    for x0, s0 in MINIMALITY_POINTS:
        vals = [p.evaluate(x0, s0) for p in seq]
        r = _rank([[vals[i + j] for j in range(d)] for i in range(d)])
        if r == d:
            return VerifyReport("minimal", {**params, "x0": x0, "s0": s0})
        ranks.append(r)
    return VerifyReport(
        "minimal", params, False,
        f"Hankel rank {ranks} < {d} at every sample point {list(MINIMALITY_POINTS)}",
    )


def split_factorization(m: int, bound: int = MAX_DEGREE) -> tuple[list[ZPoly], VerifyReport]:
    """The chain ``w_0 = z - 1``, ``w_k = c(m, k, x+1, x, z) / w_(k-1)``.

    Returns all of ``w_0 .. w_(m-1)`` and a report confirming every division
    was exact with an integer-polynomial quotient in ``x`` alone.
    """
    if m < 2:
        raise ValueError("m must be >= 2")
    chain = [ZPoly([-1, 1])]
    checks = []
    for k in range(1, m):
        _check_mk(m, k, bound)
        spec = char_poly(m, k).subs(X + 1, X)
        params = {"m": m, "k": k}
        try:
            w = spec.exact_div(chain[-1])
        except InexactDivisionError as exc:
            checks.append(VerifyReport("split", params, False, f"inexact division: {exc}"))
            break
        if any(e[1] for c in w.coeffs for e in c.terms):
            checks.append(VerifyReport("split", params, False, f"quotient involves s: {w}"))
        expected_degree = binomial(m - 1, k)
        if w.degree != expected_degree:
            checks.append(VerifyReport(
                "split", params, False, f"quotient degree {w.degree} != {expected_degree}",
            ))
        checks.append(VerifyReport.compare("split", params, chain[-1] * w, spec))
        chain.append(w)
    return chain, VerifyReport.combine("split", {"m": m}, checks)
