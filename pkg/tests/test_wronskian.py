from fractions import Fraction

import numpy as np
import pytest
import sympy as sp

from pwlmelnikov.chebyshev.families import family
from pwlmelnikov.chebyshev.wronskian import (
    CLOSED_FORMS, closed_form_key, closed_wronskian, tabulated, wronskian_closed, wronskian_numeric,
    wronskian_sequence,
)
from pwlmelnikov.errors import NotTabulated

from test_basis_families import X, sym_u

XS = (0.35, 1.0, 2.6)


def sym_wronskians(fam):
    """Leading minors of the symbolic derivative matrix, evaluated at 60 digits."""
    funcs = [sym_u(i, fam.k) for i in fam.basis]
    derivs = [[sp.diff(f, X, p) for f in funcs] for p in range(fam.size)]
    out = []
    for j in range(fam.size):
        row = []
        for x in XS:
            m = sp.Matrix(j + 1, j + 1, lambda p, i: sp.N(derivs[p][i].subs(X, sp.nsimplify(x)), 60))
            row.append(float(m.det(method="berkowitz")))
        out.append(row)
    return out


@pytest.mark.parametrize("name,k", [
    ("G1", Fraction(5, 2)), ("G3", Fraction(3, 2)), ("G3", Fraction(1, 3)),
    ("G4", Fraction(1, 4)), ("G2", Fraction(5, 2)), ("G11", Fraction(3)),
    ("G5", Fraction(3)), ("G6", Fraction(2)), ("F2", Fraction(5, 2)),
])
def test_against_symbolic_wronskian(name, k):
    fam = family(name, k)
    want = sym_wronskians(fam)
    got = wronskian_sequence(fam, np.array(XS))
    np.testing.assert_allclose(got, want, rtol=1e-12)
    for j in range(fam.size):
        np.testing.assert_allclose(wronskian_numeric(fam, j, np.array(XS)), want[j], rtol=1e-7)


@pytest.mark.parametrize("name,k", [("G5", Fraction(3)), ("G9", Fraction(5, 2)), ("F2", Fraction(3, 5))])
def test_double_precision_close_to_extended(name, k):
    fam = family(name, k)
    xs = np.array([0.5, 1.3, 3.0])
    hi = wronskian_sequence(fam, xs)
    for j in range(fam.size):
        np.testing.assert_allclose(wronskian_numeric(fam, j, xs), hi[j], rtol=1e-5)
        np.testing.assert_allclose(wronskian_numeric(fam, j, xs, digits=60), hi[j], rtol=1e-12)


@pytest.mark.parametrize("key", sorted(CLOSED_FORMS))
def test_closed_forms_match_numeric(key):
    name, _, case = key.partition(":")
    k = {"G6": Fraction(2), "G7": Fraction(2, 3)}.get(name)
    if k is None:
        k = _sample_k(name, case)
    fam = family(name, k)
    assert closed_form_key(fam) == key
    xs = np.geomspace(0.2, 5, 9)
    numeric = wronskian_sequence(fam, xs)
    for j in range(fam.size):
        closed = closed_wronskian(fam, j)(fam.k, xs, digits=40)
        np.testing.assert_allclose(closed, numeric[j], rtol=1e-8)


def _sample_k(name, case):
    if name == "F1":
        return {"1": Fraction(3), "2": Fraction(7)}[case]
    if name == "F2":
        return {"1": Fraction(31, 10), "2": Fraction(39, 50), "3": Fraction(3, 5), "4": Fraction(1, 4),
                "5": Fraction(5, 2), "6": Fraction(2, 5)}[case]
    return Fraction(5, 2)


def test_large_k_needs_extra_precision():
    # cancellation at large k: the fixed-precision result differs from the converged one
    fam = family("F1", Fraction(8))
    xs = np.array([0.3, 1.7])
    conv = wronskian_sequence(fam, xs)
    closed = closed_wronskian(fam, fam.n)(fam.k, xs, digits=60)
    np.testing.assert_allclose(conv[-1], closed, rtol=1e-10)


def test_closed_float_and_mp_paths_agree():
    fam = family("G5", Fraction(9, 5))
    xs = np.array([0.4, 1.1, 2.2])
    for j in range(fam.size):
        cw = closed_wronskian(fam, j)
        np.testing.assert_allclose(cw(fam.k, xs), cw(fam.k, xs, digits=40), rtol=1e-9)


def test_untabulated_family():
    assert tabulated(family("G8", Fraction(5, 2)))  # same ordering as F1 case 1
    fam = family("G8", Fraction(7))
    assert not tabulated(fam)
    with pytest.raises(NotTabulated):
        closed_wronskian(fam, 0)


def test_index_errors():
    with pytest.raises(IndexError):
        wronskian_numeric(family("G1", 2), 2, 1.0)
    assert wronskian_closed(family("G3", 2), 0, x=3.0) == pytest.approx(1.0)
    with pytest.raises(NotTabulated):
        wronskian_closed(family("G3", 2), 3)
