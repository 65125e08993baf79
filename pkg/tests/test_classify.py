import json
from fractions import Fraction

import pytest

from pwlmelnikov.classify import (
    KNOWN_N1, TABLES, classify, normalize, order1_span_bound, order2_family, reproduce_tables,
)
from pwlmelnikov.errors import InvalidExponent
from pwlmelnikov.model import ParityCase


@pytest.fixture(scope="module")
def report():
    return reproduce_tables(12)


def test_examples():
    r = classify(3, 3)
    assert (r.parity, r.k, r.table, r.m1, r.m2, r.m3, r.H_lower) == (ParityCase.ODD_ODD, 1, 2, 1, 1, 2, 2)
    r = classify(2, 2)
    assert (r.table, r.m1, r.m2, r.H_lower) == (3, 0, 1, 1)
    r = classify(12, 5)
    assert (r.m2, r.H_lower) == ((7, 8), 7)
    assert classify(2, 3).m2 == 5


def test_odd_even_pairs_are_normalized():
    r = classify(3, 2)
    assert r.swapped and r.k == Fraction(2, 3) and r.table == 4
    assert any("exchanging coordinates" in note for note in r.notes)
    assert normalize(1, 4) == (4, 1, True)
    assert normalize(4, 1) == (4, 1, False)


@pytest.mark.parametrize("bad", [(0, 1), (1, 0), (-2, 3), (1.5, 1)])
def test_invalid_exponents(bad):
    with pytest.raises(InvalidExponent):
        classify(*bad)


def test_swap_symmetry():
    for m in range(1, 13):
        for n in range(1, 13):
            a, b = classify(m, n), classify(n, m)
            assert (a.region, a.m1, a.m2, a.m3, a.H_lower) == (b.region, b.m1, b.m2, b.m3, b.H_lower)


def test_every_pair_lies_in_exactly_one_region():
    from pwlmelnikov.classify import _regions

    for m in range(1, 25):
        for n in range(1, 25):
            mm, nn, _ = normalize(m, n)
            k = Fraction(mm, nn)
            hits = [text for region, text, *_ in _regions(ParityCase.of(mm, nn)) if k in region]
            assert len(hits) == 1, (m, n, hits)


def test_n1_literature_values():
    for m in range(1, 13):
        r = classify(m, 1)
        key = m if m <= 3 else ("even>=4" if m % 2 == 0 else "odd>=5")
        m1, m2, m3 = KNOWN_N1[key][:3]
        assert (r.m2, r.m3) == (m2, m3)
        if key == "even>=4":
            # mixed-parity tables print 3 here; the order-1 span itself admits 4
            assert r.m1 == 3 and order1_span_bound(m, 1).value == m1
            assert any("admits 4 zeros" in note for note in r.notes)
        else:
            assert r.m1 == m1


def test_order1_span_bound():
    assert order1_span_bound(2, 1).value == 3
    assert order1_span_bound(1, 4).value == 4
    with pytest.raises(ValueError):
        order1_span_bound(3, 1)


def test_order2_family_choice():
    assert order2_family(ParityCase.ODD_ODD, Fraction(1)).name == "G1"
    assert order2_family(ParityCase.ODD_ODD, Fraction(3)).name == "G5"
    assert order2_family(ParityCase.EVEN_EVEN, Fraction(1, 3)).k == 3
    assert order2_family(ParityCase.EVEN_ODD, Fraction(2)).name == "G6"
    assert order2_family(ParityCase.EVEN_ODD, Fraction(6)).name == "G9"
    assert order2_family(ParityCase.EVEN_ODD, Fraction(5, 2)).name == "F2"


def test_counts_do_not_decrease_with_order():
    def lo(v):
        return v[0] if isinstance(v, tuple) else v

    for _, rows in TABLES.values():
        for _, m1, m2, m3 in rows:
            assert isinstance(m1, int) and m1 <= lo(m2)
            assert m3 is None or lo(m2) <= lo(m3)


def test_report_layout(report, tmp_path):
    assert len(report.rows) == 144
    assert sum(len(report.by_table(t)) for t in (2, 3, 4)) == 144
    text = report.to_text()
    assert "Table 2" in text and "m2 cross-check" in text
    assert report.to_csv(3).splitlines()[0].startswith("m,n,parity")
    data = json.loads(report.to_json())
    assert len(data["rows"]) == 144 and "m2_bound" in data["rows"][0]
    names = sorted(p.name for p in report.write(tmp_path))
    assert names == ["table2.csv", "table3.csv", "table4.csv", "tables.json", "tables.txt"]


def test_order2_entries_up_to_k5_match_wronskian_bounds(report):
    rows = [r for r in report.rows if r.result.k <= 5]
    assert rows and all(r.m2_matches for r in rows)


def test_report_rejects_bad_size():
    with pytest.raises(InvalidExponent):
        reproduce_tables(0)
