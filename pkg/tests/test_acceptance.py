"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py`` (or execute this file directly);
a PASS/FAIL line per criterion is printed in the terminal summary.
"""

import io
import json
import random
import time

import pytest

from binsum import charpoly, invariant, sums
from binsum.charpoly import char_poly, coeffs_from_power_sums, power_sums_from_coeffs
from binsum.cli import run
from binsum.exactpoly import ONE, MPoly, S, X, ZPoly, binomial

criterion = pytest.mark.criterion

# the two coefficient tables, transcribed as tab-separated rows
TABLE_M1 = ["1", "1\t-1", "1\t-2\t1", "1\t-3\t3\t-1", "1\t-4\t6\t-4\t1"]
TABLE_M2 = [
    "1", "1\t-1", "1\t-2\t-1", "1\t-3\t0\t-1", "1\t-4\t2\t0\t-1",
    "1\t-5\t5\t0\t0\t-1", "1\t-6\t9\t-2\t0\t0\t-1",
]

# reference values of A(n, 2, 5, 0, z) for n = 0..9 in plain-text form
SEQ_TABLE = [
    "1", "1", "2", "3", "6 + z", "10 + 1/z + z", "20 + 1/z + 6z",
    "35 + 7/z + 7z", "70 + 8/z + 28z", "126 + 36/z + 36z + z^2",
]


def _clear_caches():
    for fn in (
        invariant._coeffs, invariant._invariant, invariant.lucas,
        charpoly._char_poly, sums._a_value, sums._operator_coeffs,
    ):
        fn.cache_clear()


def cli(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, out.getvalue()


def cli_json(*argv):
    code, text = cli(*argv, "--format", "json")
    return code, json.loads(text)


def _all_pass(identity, *extra, count=None):
    code, data = cli_json("verify", identity, *extra)
    assert code == 0
    assert data["passed"] == data["total"] == len(data["reports"])
    if count is not None:
        assert data["total"] == count
    return data


class Timer:
    def __enter__(self):
        _clear_caches()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


@criterion(1, "coefficient tables m = 1 and m = 2, < 1 s")
def test_01_tables():
    with Timer() as t:
        rows1 = [cli("table", str(n), "1") for n in range(5)]
        rows2 = [cli("table", str(n), "2") for n in range(7)]
    assert rows1 == [(0, row + "\n") for row in TABLE_M1]
    assert rows2 == [(0, row + "\n") for row in TABLE_M2]
    assert t.seconds < 1.0


@criterion(2, "lemma1 sweep, 280 instances, < 2 min")
def test_02_lemma1():
    with Timer() as t:
        _all_pass("lemma1", "--n-max", "40", "--m-max", "8", count=280)
    assert t.seconds < 120


@criterion(3, "f_{6,4} and its line substitution")
def test_03_f64():
    f = invariant.invariant_poly(6, 4).poly
    assert f == X**6 - 6 * X**2 * S - 3 * X**4 * S**2 - 2 * S**3 + 3 * X**2 * S**4 - S**6
    assert f.subs(X + 1, X) == ONE
    code, data = cli_json("invariant", "6", "4")
    assert code == 0 and MPoly.from_json(data["poly"]) == f


@criterion(4, "small-m reference lists, Lucas, generating functions to order 12")
def test_04_small_m():
    from test_invariant import P1_M3, P2_M3

    assert [invariant.weight_part(n, 3, 1) for n in range(10)] == P1_M3
    assert [invariant.weight_part(n, 3, 2) for n in range(1, 10)] == P2_M3
    for n in range(21):
        assert invariant.weight_part(n, 2, 1) == invariant.lucas(n).subs(X, -S)
    assert invariant.verify_genfun(2, 12).passed
    assert invariant.verify_genfun(3, 12).passed
    _all_pass("genfun", "--n-max", "12", count=2)
    _all_pass("smallm", "--n-max", "20", count=20)


@criterion(5, "explicit p_1 and p_{m-1}, 2 <= m <= 8, n <= 30")
def test_05_explicit():
    # the closed forms divide exactly or raise InexactDivisionError
    for m in range(2, 9):
        for n in range(1, 31):
            assert invariant.p1_explicit(n, m) == invariant.weight_part(n, m, 1)
            assert invariant.pm1_explicit(n, m) == invariant.weight_part(n, m, m - 1)


@criterion(6, "convolution identity, 1 <= m <= 6, 0 <= n <= 40")
def test_06_convolution():
    _all_pass("convolution", "--n-max", "40", "--m-max", "6", count=41 * 6)


@criterion(7, "characteristic polynomial forms and Newton round trips")
def test_07_charpoly():
    for m in range(2, 9):
        assert char_poly(m, 1) == ZPoly([S] + [0] * (m - 2) + [-X, 1])
        if m >= 3:
            assert char_poly(m, m - 1) == ZPoly(
                [(-1) ** m * S ** (m - 1), -(S ** (m - 2)) * X] + [0] * (m - 2) + [1]
            )
    assert char_poly(4, 2) == ZPoly([S**3, 0, -(S**2), -S * X**2, -S, 0, 1])
    rng = random.Random(20261014)
    monos = [(i, j) for i in range(3) for j in range(3)]
    for _ in range(200):
        d = rng.randint(1, 8)
        v = [ONE] + [
            MPoly({e: rng.randint(-6, 6) for e in rng.sample(monos, rng.randint(0, 4))})
            for _ in range(d)
        ]
        assert coeffs_from_power_sums(power_sums_from_coeffs(v, d), d) == v


@criterion(8, "recurrence annihilation N = 15 and minimality")
def test_08_pkrec():
    _all_pass("pkrec", "--m-max", "6", "--n-max", "15", count=15)
    small = [(m, k) for m in range(2, 7) for k in range(1, m) if binomial(m, k) <= 6]
    _all_pass("minimal", "--m-max", "6", count=len(small))


@criterion(9, "duality (up to a unit) and weight law, 2 <= m <= 6")
def test_09_duality():
    _all_pass("duality", "--m-max", "6", count=15)
    _all_pass("weightlaw", "--m-max", "6", count=15)


@criterion(10, "split chain at (x + 1, x), 2 <= m <= 6")
def test_10_split():
    _all_pass("split", "--m-max", "6", count=5)
    for m in range(2, 7):
        chain, rep = charpoly.split_factorization(m)
        assert rep.passed
        for k in range(1, m):
            assert chain[k - 1] * chain[k] == char_poly(m, k).subs(X + 1, X)
            assert all(isinstance(c, int) for w in chain for p in w.coeffs for c in p.terms.values())


@criterion(11, "recurrence for A, 7320 instances, < 5 min")
def test_11_recurrence_sweep():
    with Timer() as t:
        _all_pass(
            "theorem1", "--n-max", "60", "--m-max", "5", "--i-max", "6", "--l-range", "-2:2",
            count=61 * 4 * 6 * 5,
        )
    assert t.seconds < 300


@criterion(12, "Schur identities, reference sequence, factorisation")
def test_12_schur():
    _all_pass("schur", "--n-max", "50", count=51)
    for n in range(51):
        assert sums.a_seq(n, 2, 5, 0).value.evaluate(-1) == sums.fib(n + 1)
    assert [cli("seq", str(n), "2", "5", "0") for n in range(10)] == [(0, v + "\n") for v in SEQ_TABLE]
    c = sums.recurrence_char_poly(2, 5, -1)
    assert c == ZPoly([2, 5, 0, -5, 0, 1])
    assert ZPoly([2, 1]) * ZPoly([-1, -1, 1]) ** 2 == c


@criterion(13, "numeric product oracle, 50 points, rel err < 1e-9")
def test_13_oracle():
    data = _all_pass("oracle", "--points", "50", "--n-max", "12", "--m-max", "12", count=50)
    assert all(r["params"]["n"] <= 12 and r["params"]["m"] <= 12 for r in data["reports"])


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
