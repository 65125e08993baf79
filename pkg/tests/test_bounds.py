from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pwlmelnikov.chebyshev.bounds import bound_from_nus, general_bound, zero_count_bound
from pwlmelnikov.chebyshev.families import family
from pwlmelnikov.chebyshev.realize import sign_change_zeros
from pwlmelnikov.errors import DegenerateK


def reference_bound(nus):
    """The general bound written out term by term."""
    n = len(nus) - 1
    if n == 0:
        return nus[0]
    mu = [min(2 * nus[i], sum(nus[j] for j in range(i - 2))) for i in range(n)]
    return n + nus[n] + nus[n - 1] + 2 * sum(nus[: n - 1]) + sum(mu[3:n])


@given(st.lists(st.integers(0, 5), min_size=1, max_size=9))
def test_general_bound_formula(nus):
    assert general_bound(nus) == reference_bound(nus)


def test_general_bound_small_cases():
    assert general_bound([0, 0, 0]) == 2
    assert general_bound([0, 0, 1]) == 3
    assert general_bound([0, 1, 0]) == 3
    assert general_bound([1, 0, 0]) == 4
    # mu_3 = min(2 nu_3, nu_0)
    assert general_bound([1, 0, 0, 1, 0]) == 4 + 2 + 1 + 1


@given(st.lists(st.integers(0, 3), min_size=2, max_size=8), st.booleans())
def test_rule_selection(nus, simple_last):
    lower, upper, rule = bound_from_nus(nus, simple_last)
    n = len(nus) - 1
    assert n <= lower <= upper
    if not any(nus):
        assert (lower, upper, rule) == (n, n, "ECT")
    elif not any(nus[:-1]) and nus[-1] == 1 and simple_last:
        assert (lower, upper, rule) == (n + 1, n + 1, "accuracy-one")
    else:
        assert rule == "general" and upper == general_bound(nus)


@pytest.mark.parametrize("name,k,lower,upper,rule", [
    ("G3", Fraction(3), 3, 3, "accuracy-one"),
    ("G3", Fraction(3, 2), 2, 2, "ECT"),
    ("G4", Fraction(1, 4), 4, 4, "accuracy-one"),
    ("G4", Fraction(1, 2), 3, 3, "ECT"),
    ("G2", Fraction(3), 2, 2, "ECT"),
    ("G5", Fraction(3), 7, 7, "ECT"),
    ("G5", Fraction(3, 5), 8, 8, "accuracy-one"),
    ("G5", Fraction(7, 10), 7, 7, "ECT"),
    ("F1", Fraction(5, 2), 5, 5, "accuracy-one"),
    ("F1", Fraction(3, 2), 4, 4, "ECT"),
    ("G6", None, 4, 4, "ECT"),
    ("G7", None, 5, 5, "ECT"),
    ("F2", Fraction(5, 2), 7, 8, "general"),
    ("G1", Fraction(1), 1, 1, "ECT"),
])
def test_family_bounds(name, k, lower, upper, rule):
    b = zero_count_bound(name, k)
    assert (b.lower, b.upper, b.rule) == (lower, upper, rule)
    assert b.exact == (lower == upper)


@pytest.mark.parametrize("name,k", [("G3", Fraction(3)), ("G4", Fraction(1, 4)), ("G5", Fraction(3, 5)),
                                    ("F1", Fraction(3, 2))])
def test_random_span_elements_respect_upper_bound(name, k, rng):
    fam = family(name, k)
    upper = zero_count_bound(fam).upper
    for _ in range(40):
        c = rng.normal(size=fam.size)
        zeros = sign_change_zeros(lambda x: fam.combination(c, x), (1e-3, 1e3), 3000)
        assert len(zeros) <= upper


def test_identically_vanishing_wronskian_is_degenerate():
    # at k = 1 the functions x and x + x^(2k-1) of G3 are dependent
    with pytest.raises(DegenerateK):
        zero_count_bound("G3", Fraction(1))


def test_bound_text():
    s = str(zero_count_bound("G3", Fraction(3)))
    assert "accuracy-one" in s and "nu=[0, 0, 1]" in s
