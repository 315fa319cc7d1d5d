"""Binomial-sum Laurent sequences and their order-i recurrence.

``A(n, m, i, l, z) = sum_h C(n, floor((n + i h + l) / m)) z^h`` is a finite
sum: only ``h`` with ``0 <= n + i h + l <= m n + m - 1`` contribute.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactpoly import LaurentZ, MPoly, ZPoly, binomial
from .invariant import weight_part
from .report import VerifyReport


@dataclass(frozen=True)
class ASeq:
    n: int
    m: int
    i: int
    l: int  # noqa: E741
    value: LaurentZ


@dataclass(frozen=True)
class OperatorCoeffs:
    i: int
    m: int
    k: int
    b: tuple[int, ...]

    def as_poly(self) -> MPoly:
        return MPoly({(d, 0): c for d, c in enumerate(self.b)})


def h_range(n: int, m: int, i: int, l: int) -> range:  # noqa: E741
    lo = -((n + l) // i)  # ceil(-(n + l) / i)
    hi = (m * n + m - 1 - n - l) // i
    return range(lo, hi + 1)


def _check(n, m, i):
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 2:
        raise ValueError("m must be >= 2")
    if i < 1:
        raise ValueError("i must be >= 1")


@lru_cache(maxsize=4096)
def _a_value(n: int, m: int, i: int, l: int) -> LaurentZ:  # noqa: E741
    return LaurentZ({h: binomial(n, (n + i * h + l) // m) for h in h_range(n, m, i, l)})


def a_seq(n: int, m: int, i: int, l: int) -> ASeq:  # noqa: E741
    _check(n, m, i)
    return ASeq(n, m, i, l, _a_value(n, m, i, l))


@lru_cache(maxsize=None)
def _operator_coeffs(i: int, m: int, k: int) -> tuple[int, ...]:
    p = weight_part(i, m, k).subs(MPoly.x(), 1)
    if any(j for _, j in p.terms):
        raise AssertionError("s survived the substitution s -> 1")
    top = max((e for e, _ in p.terms), default=-1)
    return tuple(p.coefficient(d, 0) for d in range(top + 1))


def operator_coeffs(i: int, m: int, k: int) -> OperatorCoeffs:
    """Integer coefficients ``b_d`` of ``x^d`` in ``p_k(i, m, x, 1)``."""
    _check(0, m, i)
    if not 1 <= k <= m - 1:
        raise ValueError(f"k must lie in 1..{m - 1}")
    return OperatorCoeffs(i, m, k, _operator_coeffs(i, m, k))


def verify_theorem1(n: int, m: int, i: int, l: int) -> VerifyReport:  # noqa: E741
    """``sum_k z^(k-1) p_k(i, m, E, 1) A(n) = (z^-1 + (-1)^(m(i-1)) z^(m-1)) A(n)``."""
    _check(n, m, i)
    parts = []
    for k in range(1, m):
        for d, b in enumerate(_operator_coeffs(i, m, k)):
            if b:
                parts.append((b, k - 1, _a_value(n + d, m, i, l)))
    lhs = LaurentZ.combine(parts)
    a = _a_value(n, m, i, l)
    sign = -1 if (m * (i - 1)) % 2 else 1
    rhs = LaurentZ.combine([(1, -1, a), (sign, m - 1, a)])
    return VerifyReport.compare("theorem1", {"n": n, "m": m, "i": i, "l": l}, lhs, rhs)


def fib(n: int) -> int:
    if n < 0:
        raise ValueError("Fibonacci index must be nonnegative")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def schur_point(n: int) -> VerifyReport:
    """``A(n, 2, 5, 0, -1) = F(n+1)`` and ``A(n, 2, 5, 2, -1) = F(n)``."""
    return VerifyReport.combine("schur", {"n": n}, [
        VerifyReport.compare("schur.shifted", {"n": n}, a_seq(n, 2, 5, 0).value.evaluate(-1), fib(n + 1)),
        VerifyReport.compare("schur.plain", {"n": n}, a_seq(n, 2, 5, 2).value.evaluate(-1), fib(n)),
    ])


def verify_schur(n_max: int) -> VerifyReport:
    return VerifyReport.combine("schur", {"n_max": n_max}, [schur_point(n) for n in range(n_max + 1)])


def recurrence_char_poly(m: int, i: int, z0: int) -> ZPoly:
    """Characteristic polynomial in ``E`` of the recurrence for A at ``z = z0``.

    Only meaningful for ``m = 2``, where the left side is the single operator
    ``p_1(i, 2, E, 1)``.
    """
    if m != 2:
        raise ValueError("the E-polynomial is a single z-free operator only for m = 2")
    b = _operator_coeffs(i, 2, 1)
    sign = -1 if (m * (i - 1)) % 2 else 1
    coeffs = list(b)
    coeffs[0] -= _z_scalar(z0, -1) + sign * _z_scalar(z0, m - 1)
    return ZPoly(coeffs)


def _z_scalar(z0: int, e: int) -> int:
    if z0 not in (1, -1):
        raise ValueError("integral only for z0 = +-1")
    return z0 ** (e % 2)

