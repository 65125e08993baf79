from fractions import Fraction

import mpmath as mp
import pytest

from pwlmelnikov.chebyshev.polynomials import NAMED
from pwlmelnikov.chebyshev.regions import KRegion, parse_interval, region_constants

EXPECTED = {
    "k0": 0.025476922710, "k1": 0.176376026889, "k2": 0.225728915811, "k3": 1.766341884849,
    "k4": 3.053684426190, "k5": 3.101761718854, "k6": 0.798136374473,
}


def _mp_root(poly, lo, hi):
    coeffs = [mp.mpf(Fraction(c).numerator) / Fraction(c).denominator for c in reversed(poly.coeffs)]
    with mp.workdps(40):
        return mp.findroot(lambda t: mp.polyval(coeffs, t), (mp.mpf(float(lo)), mp.mpf(float(hi))), solver="anderson")


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_breakpoints(name):
    c = region_constants()[name]
    assert c.width <= Fraction(1, 10**12)
    assert c.value == pytest.approx(EXPECTED[name], abs=1e-11)
    # independent root finder on the same polynomial
    assert float(_mp_root(c.poly, c.lo - Fraction(1, 10**6), c.hi + Fraction(1, 10**6))) == pytest.approx(
        c.value, abs=1e-12)


def test_breakpoint_ordering():
    v = region_constants().values()
    assert 0 < v["k0"] < v["k1"] < 0.2 < v["k2"] < 1 / 3
    assert 1.5 < v["k3"] < 2 and 3 < v["k4"] < v["k5"] < 4 and 0.75 < v["k6"] < 0.8


def test_compare_is_exact_near_root():
    c = region_constants()["k4"]
    assert c.compare(c.lo) == -1 and c.compare(c.hi) == 1
    assert c.compare(Fraction(3)) == -1 and c.compare(Fraction(4)) == 1
    assert c.compare(c.value - 1e-9) == -1 and c.compare(c.value + 1e-9) == 1


def test_named_polynomials_vanish_at_breakpoints():
    for name, poly in (("k1", "q1"), ("k0", "q2"), ("k2", "q2"), ("k3", "q2"), ("k5", "q2"), ("k4", "q3")):
        c = region_constants()[name]
        assert NAMED[poly](c.lo) * NAMED[poly](c.hi) < 0


@pytest.mark.parametrize("text,inside,outside", [
    ("(1/2,2/3]", [Fraction(2, 3), 0.6], [Fraction(1, 2), 0.7]),
    ("[1/5,1/3]", [Fraction(1, 5), Fraction(1, 3)], [0.19, 0.34]),
    ("{1}", [1, Fraction(1)], [Fraction(999, 1000)]),
    ("(k5,inf)", [3.2, 100], [3.1, 3]),
    ("(k4,k5)", [3.08], [3.05, 3.11]),
])
def test_interval_membership(text, inside, outside):
    iv = parse_interval(text)
    assert all(k in iv for k in inside)
    assert not any(k in iv for k in outside)


def test_region_union_and_exclusions():
    r = KRegion.parse("(1/5,1/3) U (4/5,4/3]", excluded=("k2", 1))
    assert Fraction(1, 4) in r and Fraction(4, 3) in r and Fraction(9, 10) in r
    assert 1 not in r and Fraction(1, 3) not in r and Fraction(1, 5) not in r
    # points straddling the excluded breakpoint stay inside
    k2 = region_constants()["k2"]
    assert k2.lo in r and k2.hi in r
    assert all(p in r for p in r.sample_points(3))


def test_region_printing_round_trips():
    text = "(0,k0) U (k0,k1)"
    r = KRegion.parse(text)
    assert str(r) == "(0,k0)∪(k0,k1)"
    assert Fraction(1, 50) in r and Fraction(1, 10) in r
    assert not any(e in r for e in (0, Fraction(1, 5)))
