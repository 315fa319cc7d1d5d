"""Exact arithmetic kernel.

Three immutable value types live here:

* :class:`MPoly` -- sparse polynomial in ``x`` and ``s`` with big-integer
  coefficients, keyed by exponent pairs ``(i, j)`` for ``x**i * s**j``;
* :class:`ZPoly` -- polynomial in ``z`` whose coefficients are :class:`MPoly`
  (with :class:`ZSeries` as its truncated power-series sibling);
* :class:`LaurentZ` -- finitely supported integer Laurent polynomial in ``z``.

Nothing here ever touches floating point.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union


class InexactDivisionError(ArithmeticError):
    """Raised when a division that must be exact leaves a remainder."""


class WeightError(ValueError):
    """Raised when a polynomial has a monomial outside every weight class."""


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative ``n``; zero outside ``0 <= k <= n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _grlex_key(e):
    # descending graded-lex with x > s
    return (-(e[0] + e[1]), -e[0])


def _pow_str(var, e):
    return var if e == 1 else f"{var}^{e}"


def _monomial_str(i, j):
    parts = []
    if i:
        parts.append(_pow_str("x", i))
    if j:
        parts.append(_pow_str("s", j))
    return "*".join(parts)


class MPoly:
    """Sparse bivariate integer polynomial in ``x`` and ``s``.

    Zero coefficients are never stored, so two values are equal exactly when
    their term maps are equal.  Instances are treated as immutable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                if i < 0 or j < 0:
                    raise ValueError(f"negative exponent in {(i, j)}")
                if c:
                    clean[(int(i), int(j))] = int(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        # trusted constructor: terms already canonical
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c: int) -> "MPoly":
        return cls._raw({(0, 0): int(c)} if c else {})

    @classmethod
    def monomial(cls, c: int, i: int, j: int) -> "MPoly":
        return cls({(i, j): c})

    @classmethod
    def x(cls) -> "MPoly":
        return cls._raw({(1, 0): 1})

    @classmethod
    def s(cls) -> "MPoly":
        return cls._raw({(0, 1): 1})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        """Terms as ``((i, j), c)`` pairs in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def coefficient(self, i: int, j: int) -> int:
        return self._terms.get((i, j), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_term(self) -> int:
        return self._terms.get((0, 0), 0)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(i + j for i, j in self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    # ring structure

    @staticmethod
    def _coerce(other):
        if isinstance(other, MPoly):
            return other
        if isinstance(other, int):
            return MPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return MPoly._raw({})
            return MPoly._raw({e: c * other for e, c in self._terms.items()})
        if not isinstance(other, MPoly):
            return NotImplemented
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self._terms.items():
            for (i2, j2), c2 in other._terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c: int) -> "MPoly":
        return self * c

    def exact_div(self, other: Union[int, "MPoly"]) -> "MPoly":
        """Quotient ``self / other``; raises if the division leaves a remainder."""
        if isinstance(other, int):
            if other == 0:
                raise ZeroDivisionError("division by zero polynomial")
            out = {}
            for e, c in self._terms.items():
                q, r = divmod(c, other)
                if r:
                    raise InexactDivisionError(f"{self} is not divisible by {other}")
                out[e] = q
            return MPoly._raw(out)
        if not other._terms:
            raise ZeroDivisionError("division by zero polynomial")
        if len(other._terms) == 1:
            ((gi, gj), gc), = other._terms.items()
            out = {}
            for (i, j), c in self._terms.items():
                q, r = divmod(c, gc)
                if r or i < gi or j < gj:
                    raise InexactDivisionError(f"{self} is not divisible by {other}")
                out[(i - gi, j - gj)] = q
            return MPoly._raw(out)
        # single-divisor division under grlex; remainder is zero iff divisible
        lead_e, lead_c = other.items()[0]
        rem = self
        quot: dict[tuple[int, int], int] = {}
        while rem._terms:
            (ri, rj), rc = rem.items()[0]
            q, r = divmod(rc, lead_c)
            di, dj = ri - lead_e[0], rj - lead_e[1]
            if r or di < 0 or dj < 0:
                raise InexactDivisionError(f"{self} is not divisible by {other}")
            quot[(di, dj)] = q
            rem = rem - other * MPoly._raw({(di, dj): q})
        return MPoly._raw(quot)

    # evaluation and substitution

    def subs(self, gx: Union[int, "MPoly"], gs: Union[int, "MPoly"]) -> "MPoly":
        """Replace ``x`` by ``gx`` and ``s`` by ``gs`` and expand."""
        gx = self._coerce(gx)
        gs = self._coerce(gs)
        xpow = _PowerCache(gx)
        spow = _PowerCache(gs)
        out = MPoly._raw({})
        for (i, j), c in self._terms.items():
            out = out + xpow[i] * spow[j] * c
        return out

    def evaluate(self, x0, s0) -> Fraction:
        """Exact value at rational ``(x0, s0)``."""
        x0 = Fraction(x0)
        s0 = Fraction(s0)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total += c * x0**i * s0**j
        return total

    # comparison and display

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for (i, j), c in self.items():
            mono = _monomial_str(i, j)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f" {sign} {body}")
        return "".join(pieces)

    def to_csv(self) -> str:
        """Render as ``c*x^i*s^j`` terms joined by their signs."""
        if not self._terms:
            return "0"
        out = []
        for n, ((i, j), c) in enumerate(self.items()):
            term = f"{abs(c)}*x^{i}*s^{j}"
            if c < 0:
                out.append("-" + term)
            else:
                out.append(("+" if n else "") + term)
        return "".join(out)

    def to_json(self) -> dict:
        return {
            "vars": ["x", "s"],
            "terms": [{"c": str(c), "e": [i, j]} for (i, j), c in self.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MPoly":
        if list(data.get("vars", ["x", "s"])) != ["x", "s"]:
            raise ValueError(f"unsupported variables {data.get('vars')}")
        return cls({tuple(t["e"]): int(t["c"]) for t in data["terms"]})


class _PowerCache:
    def __init__(self, base: MPoly):
        self.base = base
        self.powers = [MPoly.const(1)]

    def __getitem__(self, k):
        while len(self.powers) <= k:
            self.powers.append(self.powers[-1] * self.base)
        return self.powers[k]


X = MPoly.x()
S = MPoly.s()
ONE = MPoly.const(1)
ZERO = MPoly.const(0)


def weight_decompose(f: MPoly, n: int, m: int) -> dict[int, MPoly]:
    """Partition ``f`` by weight ``k = (i + m*j) / n`` of each monomial."""
    if n <= 0 or m <= 0:
        raise ValueError("n and m must be positive")
    parts: dict[int, dict] = {}
    for (i, j), c in f.terms.items():
        w, r = divmod(i + m * j, n)
        if r:
            raise WeightError(f"x^{i}*s^{j} has no integral weight for (n, m) = ({n}, {m})")
        parts.setdefault(w, {})[(i, j)] = c
    return {k: MPoly._raw(t) for k, t in sorted(parts.items())}


def _as_mpoly(c) -> MPoly:
    return c if isinstance(c, MPoly) else MPoly.const(c)


class ZPoly:
    """Polynomial in ``z`` with :class:`MPoly` coefficients, lowest power first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Union[int, MPoly]] = ()):
        cs = [_as_mpoly(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[MPoly, ...] = tuple(cs)

    @classmethod
    def z(cls) -> "ZPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> MPoly:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def leading(self) -> MPoly:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, (int, MPoly)):
            other = ZPoly([other])
        if not isinstance(other, ZPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, ZPoly):
            return other
        if isinstance(other, (int, MPoly)):
            return ZPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return ZPoly(self[k] + other[k] for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return ZPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return ZPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for a, ca in enumerate(self.coeffs):
            if ca.is_zero():
                continue
            for b, cb in enumerate(other.coeffs):
                if not cb.is_zero():
                    out[a + b] = out[a + b] + ca * cb
        return ZPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = ZPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, other: "ZPoly") -> tuple["ZPoly", "ZPoly"]:
        """Long division in ``z``; every leading-coefficient step must be exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero z-polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ZPoly(), self
        quot = [ZERO] * (dq + 1)
        lead = other.leading()
        for shift in range(dq, -1, -1):
            top = rem[shift + other.degree]
            if top.is_zero():
                continue
            q = top.exact_div(lead)
            quot[shift] = q
            for k, c in enumerate(other.coeffs):
                rem[shift + k] = rem[shift + k] - q * c
        return ZPoly(quot), ZPoly(rem)

    def exact_div(self, other: "ZPoly") -> "ZPoly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise InexactDivisionError(f"remainder {r} dividing {self} by {other}")
        return q

    def reflect(self) -> "ZPoly":
        """``sum v(j) z^j`` of degree ``d`` becomes ``sum v(d - j) z^j``."""
        return ZPoly(reversed(self.coeffs))

    def map_coeffs(self, fn) -> "ZPoly":
        return ZPoly(fn(c) for c in self.coeffs)

    def subs(self, gx, gs) -> "ZPoly":
        return self.map_coeffs(lambda c: c.subs(gx, gs))

    def evaluate(self, x0, s0, z0) -> Fraction:
        z0 = Fraction(z0)
        return sum((c.evaluate(x0, s0) * z0**k for k, c in enumerate(self.coeffs)), Fraction(0))

    def __repr__(self):
        return f"ZPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            zpart = "" if k == 0 else _pow_str("z", k)
            cs = str(c)
            negative = False
            if len(c) == 1:
                if cs.startswith("-"):
                    negative, cs = True, cs[1:]
                body = zpart if (cs == "1" and zpart) else (f"{cs}*{zpart}" if zpart else cs)
            else:
                body = f"({cs})*{zpart}" if zpart else f"({cs})"
            if not pieces:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f" {'-' if negative else '+'} {body}")
        return "".join(pieces)

    def to_json(self) -> list:
        return [c.to_json() for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> "ZPoly":
        return cls(MPoly.from_json(c) for c in data)


class ZSeries:
    """Power series in ``z`` over :class:`MPoly`, truncated at order ``N``."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Union[int, MPoly]], order: int):
        if order < 1:
            raise ValueError("truncation order must be positive")
        cs = [_as_mpoly(c) for c in coeffs][:order]
        cs.extend([ZERO] * (order - len(cs)))
        self.coeffs: tuple[MPoly, ...] = tuple(cs)
        self.order = order

    @classmethod
    def from_poly(cls, p: ZPoly, order: int) -> "ZSeries":
        return cls(p.coeffs, order)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __eq__(self, other):
        if isinstance(other, ZPoly):
            other = ZSeries.from_poly(other, self.order)
        if not isinstance(other, ZSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __mul__(self, other):
        if isinstance(other, ZPoly):
            other = ZSeries.from_poly(other, self.order)
        n = min(self.order, other.order)
        out = [ZERO] * n
        for a in range(n):
            ca = self.coeffs[a]
            if ca.is_zero():
                continue
            for b in range(n - a):
                cb = other.coeffs[b]
                if not cb.is_zero():
                    out[a + b] = out[a + b] + ca * cb
        return ZSeries(out, n)

    __rmul__ = __mul__

    def to_poly(self) -> ZPoly:
        return ZPoly(self.coeffs)

    def __repr__(self):
        return f"ZSeries({self.to_poly()} + O(z^{self.order}))"


def series_inverse(f: Union[ZPoly, ZSeries], order: int) -> ZSeries:
    """Reciprocal of ``f`` modulo ``z**order``; ``f`` must start with +1 or -1."""
    c0 = f[0]
    if c0 not in (ONE, -ONE):
        raise ValueError(f"constant term {c0} is not a unit")
    u = c0.constant_term()
    g = [ZERO] * order
    g[0] = MPoly.const(u)
    for n in range(1, order):
        acc = ZERO
        for j in range(1, n + 1):
            fj = f[j] if j < len(f.coeffs) else ZERO
            if not fj.is_zero():
                acc = acc + fj * g[n - j]
        g[n] = -acc * u
    return ZSeries(g, order)


class LaurentZ:
    """Integer Laurent polynomial in ``z`` with finite support."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(h): int(c) for h, c in (terms or {}).items() if c}

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def __getitem__(self, h):
        return self._terms.get(h, 0)

    def is_zero(self):
        return not self._terms

    def support(self) -> list[int]:
        return sorted(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentZ({0: other})
        if not isinstance(other, LaurentZ):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentZ({0: other})
        out = dict(self._terms)
        for h, c in other._terms.items():
            out[h] = out.get(h, 0) + c
        return LaurentZ(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentZ({h: -c for h, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentZ({h: c * other for h, c in self._terms.items()})
        if not isinstance(other, LaurentZ):
            return NotImplemented
        out: dict[int, int] = {}
        for h1, c1 in self._terms.items():
            for h2, c2 in other._terms.items():
                out[h1 + h2] = out.get(h1 + h2, 0) + c1 * c2
        return LaurentZ(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "LaurentZ":
        """Multiply by ``z**k``."""
        return LaurentZ({h + k: c for h, c in self._terms.items()})

    def evaluate(self, z0) -> Fraction:
        z0 = Fraction(z0)
        if z0 == 0 and any(h < 0 for h in self._terms):
            raise ZeroDivisionError("Laurent polynomial with negative powers evaluated at z = 0")
        return sum((c * z0**h for h, c in self._terms.items()), Fraction(0))

    @staticmethod
    def combine(parts: Iterable[tuple[int, int, "LaurentZ"]]) -> "LaurentZ":
        """``sum c * z**e * L`` over triples ``(c, e, L)``."""
        out: dict[int, int] = {}
        for c, e, lz in parts:
            if not c:
                continue
            for h, v in lz._terms.items():
                out[h + e] = out.get(h + e, 0) + c * v
        return LaurentZ(out)

    def __repr__(self):
        return f"LaurentZ({self})"

    def __str__(self):
        # constant first, then z^-1, z^-2, ..., then z, z^2, ...
        if not self._terms:
            return "0"
        order = sorted(self._terms, key=lambda h: (h != 0, h > 0, abs(h)))
        pieces = []
        for h in order:
            c = self._terms[h]
            mag = abs(c)
            if h == 0:
                body = str(mag)
            elif h > 0:
                zpart = _pow_str("z", h)
                body = zpart if mag == 1 else f"{mag}{zpart}"
            else:
                body = f"{mag}/{_pow_str('z', -h)}"
            if not pieces:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(pieces)

    def to_json(self) -> dict:
        if not self._terms:
            return {"minExp": 0, "coeffs": []}
        lo, hi = min(self._terms), max(self._terms)
        return {"minExp": lo, "coeffs": [str(self[h]) for h in range(lo, hi + 1)]}

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentZ":
        lo = int(data["minExp"])
        return cls({lo + k: int(c) for k, c in enumerate(data["coeffs"])})
