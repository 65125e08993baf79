"""Zero counts of the first Melnikov functions for every exponent pair
``(m, n)``, and the resulting lower bounds for the number of limit cycles.

The tabulated values are kept verbatim as data (endpoint brackets
included). ``reproduce_tables`` recomputes the order-2 entries from the
Wronskians of the family spanning the order-2 Melnikov function.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .chebyshev.bounds import ZeroCountBound, zero_count_bound
from .chebyshev.families import F2_CASES, family
from .chebyshev.regions import KRegion
from .errors import InvalidExponent, NotTabulated
from .model import ParityCase

# (region, m1, m2, m3); a tuple value is an inclusive range
ODD_ODD_TABLE = (
    ("(0,1/2) U (2,inf)", 3, 7, 7),
    ("(1/2,2/3) U (3/4,1) U (1,4/3) U (3/2,2)", 2, 8, 8),
    ("(2/3,3/4] U [4/3,3/2)", 2, 7, 7),
    ("{1}", 1, 1, 2),
)
EVEN_EVEN_TABLE = (
    ("(0,1/5) U (1/3,1/2) U (2,3) U (5,inf)", 2, 5, None),
    ("[1/5,1/3] U [1/2,1) U (1,2] U [3,5]", 2, 4, None),
    ("{1}", 0, 1, None),
)
EVEN_ODD_TABLE = (
    ("(0,k0) U (k0,k1)", 4, (6, 11), (6, 11)),
    ("(k1,1/5) U (1/3,1/2)", 4, 7, 7),
    ("(1/5,k2) U (3/2,k3)", 4, 6, 6),
    ("(k2,1/3) U (k3,2)", 4, (7, 8), (7, 8)),
    ("(1/2,2/3) U (3/4,4/5) U (4/3,3/2) U (k5,inf)", 3, 7, 7),
    ("{2/3}", 3, 5, 5),
    ("(2/3,3/4) U [4/5,1) U (1,4/3]", 3, 6, 6),
    ("{2}", 3, 4, 4),
    ("(2,3)", 3, (7, 8), (7, 8)),
    ("(3,k4)", 3, (6, 11), (6, 11)),
    ("(k4,k5)", 3, (7, 9), (7, 9)),
)

TABLES = {
    ParityCase.ODD_ODD: (2, ODD_ODD_TABLE),
    ParityCase.EVEN_EVEN: (3, EVEN_EVEN_TABLE),
    ParityCase.EVEN_ODD: (4, EVEN_ODD_TABLE),
}

# literature values for n = 1, orders 1..6
KNOWN_N1 = {
    1: (1, 1, 2, 3, 3, 3),
    2: (3, 4, 4, 4, 4, 4),
    3: (3, 7, 7, 7, 7, (8, 10)),
    "even>=4": (4, 7, 7, 7, 7, 7),
    "odd>=5": (3, 7, 7, 7, 7, (9, 14)),
}


def _lo(v):
    return v[0] if isinstance(v, tuple) else v


def _hi(v):
    return v[1] if isinstance(v, tuple) else v


def fmt_count(v) -> str:
    if v is None:
        return "-"
    return f"{v[0]}..{v[1]}" if isinstance(v, tuple) else str(v)


@lru_cache(maxsize=None)
def _regions(parity: ParityCase):
    return tuple((KRegion.parse(text), text, m1, m2, m3) for text, m1, m2, m3 in TABLES[parity][1])


@dataclass(frozen=True)
class ClassificationResult:
    m: int
    n: int
    parity: ParityCase  # after normalization
    k: Fraction  # m/n after normalization
    swapped: bool
    table: int
    region: str
    m1: object
    m2: object
    m3: object
    H_lower: int
    notes: tuple = field(default=())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["parity"] = self.parity.value
        d["k"] = str(self.k)
        d["notes"] = list(self.notes)
        for key in ("m1", "m2", "m3"):
            v = d[key]
            d[key] = list(v) if isinstance(v, tuple) else v
        return d

    def row(self) -> list[str]:
        return [str(self.m), str(self.n), self.parity.value, str(self.k), self.region,
                fmt_count(self.m1), fmt_count(self.m2), fmt_count(self.m3), str(self.H_lower)]


def normalize(m: int, n: int) -> tuple[int, int, bool]:
    """Exponents with the odd/even case exchanged to even/odd."""
    if m < 1 or n < 1 or int(m) != m or int(n) != n:
        raise InvalidExponent(f"exponents must be positive integers, got ({m}, {n})")
    if ParityCase.of(m, n) == ParityCase.ODD_EVEN:
        return n, m, True
    return m, n, False


def classify(m: int, n: int) -> ClassificationResult:
    """Tabulated zero counts ``m1, m2, m3`` and the cycle lower bound for ``(m, n)``."""
    mm, nn, swapped = normalize(m, n)
    parity = ParityCase.of(mm, nn)
    k = Fraction(mm, nn)
    table, _ = TABLES[parity]
    for region, text, m1, m2, m3 in _regions(parity):
        if k in region:
            break
    else:
        raise NotTabulated(f"k={k} lies in no tabulated region for {parity.value}")
    notes = []
    if parity == ParityCase.EVEN_EVEN:
        m3 = m2
        notes.append("order 3 is not tabulated for even/even exponents; m3 reported as m2")
    if parity == ParityCase.EVEN_ODD:
        own = order1_span_bound(mm, nn)
        if own.value != m1:
            notes.append(f"order-1 span evaluated at n/m={Fraction(nn, mm)} admits {fmt_count(own.value)} zeros "
                         f"(tabulated m1={m1})")
    H = max(_lo(v) for v in (m1, m2, m3))
    if swapped:
        notes.append(f"odd/even pair normalized to ({mm}, {nn}) by exchanging coordinates")
    return ClassificationResult(m, n, parity, k, swapped, table, text, m1, m2, m3, H, tuple(notes))


# ---------------------------------------------------------------------------
# recomputation of the order-2 column


def order2_family(parity: ParityCase, k: Fraction):
    """Ordered family whose span contains the order-2 Melnikov function at
    ``k``, reordered for the sharpest Wronskian bound."""
    if parity == ParityCase.ODD_ODD:
        return family("G1", k) if k == 1 else family("G5", k)
    if parity == ParityCase.EVEN_EVEN:
        if k == 1:
            return family("G11", k)
        # exchanging coordinates maps k to 1/k without changing zero counts
        kk = k if k > 1 else 1 / k
        return family("F1", kk)
    if k == 2:
        return family("G6")
    if k == Fraction(2, 3):
        return family("G7")
    if any(k in region for _, region, _ in F2_CASES):
        return family("F2", k)
    return family("G9", k)


def order1_span_bound(m: int, n: int) -> ZeroCountBound:
    """Bound for the order-1 span of the system itself in the mixed case.

    For ``m`` even and ``n`` odd, the order-1 Melnikov function is a
    combination of ``u2, u1, u8, u11`` at ``k' = n/m``, not at ``m/n``.
    """
    mm, nn, _ = normalize(m, n)
    if ParityCase.of(mm, nn) != ParityCase.EVEN_ODD:
        raise ValueError("only defined for mixed parity")
    return zero_count_bound("G4", Fraction(nn, mm))


@lru_cache(maxsize=None)
def _order2_bound(parity: ParityCase, k: Fraction) -> ZeroCountBound:
    return zero_count_bound(order2_family(parity, k))


@dataclass(frozen=True)
class TableRow:
    result: ClassificationResult
    bound: ZeroCountBound
    bound_family: str

    @property
    def m2_matches(self) -> bool:
        m2 = self.result.m2
        return (_lo(m2), _hi(m2)) == (self.bound.lower, self.bound.upper)

    def record(self) -> dict:
        d = self.result.to_dict()
        d["m2_bound"] = [self.bound.lower, self.bound.upper]
        d["m2_family"] = self.bound_family
        d["m2_rule"] = self.bound.rule
        d["m2_matches"] = self.m2_matches
        return d


@dataclass
class TablesReport:
    max_exponent: int
    rows: list

    def by_table(self, table: int) -> list[TableRow]:
        return [r for r in self.rows if r.result.table == table]

    def mismatches(self) -> list[TableRow]:
        return [r for r in self.rows if not r.m2_matches]

    @property
    def all_match(self) -> bool:
        return not self.mismatches()

    HEADER = ["m", "n", "parity", "k", "region", "m1", "m2", "m3", "H_lower", "m2_bound", "m2_family", "match"]

    def _line(self, r: TableRow) -> list[str]:
        b = r.bound
        bound = str(b.upper) if b.exact else f"{b.lower}..{b.upper}"
        return r.result.row() + [bound, r.bound_family, "yes" if r.m2_matches else "NO"]

    def to_text(self) -> str:
        out = []
        for table in (2, 3, 4):
            rows = self.by_table(table)
            out.append(f"Table {table} ({len(rows)} exponent pairs)")
            lines = [self.HEADER] + [self._line(r) for r in rows]
            widths = [max(len(line[i]) for line in lines) for i in range(len(self.HEADER))]
            for line in lines:
                out.append("  ".join(c.ljust(w) for c, w in zip(line, widths)))
            out.append("")
        bad = self.mismatches()
        out.append(f"m2 cross-check: {len(self.rows) - len(bad)}/{len(self.rows)} pairs agree")
        for r in bad:
            out.append(f"  mismatch ({r.result.m},{r.result.n}) k={r.result.k}: table {fmt_count(r.result.m2)}, "
                       f"{r.bound}")
        return "\n".join(out)

    def to_csv(self, table: int | None = None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(self.HEADER)
        for r in self.rows if table is None else self.by_table(table):
            w.writerow(self._line(r))
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"max_exponent": self.max_exponent, "rows": [r.record() for r in self.rows]}, indent=1)

    def write(self, out_dir) -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = []
        for table in (2, 3, 4):
            p = out / f"table{table}.csv"
            p.write_text(self.to_csv(table))
            paths.append(p)
        for name, text in (("tables.txt", self.to_text()), ("tables.json", self.to_json())):
            p = out / name
            p.write_text(text)
            paths.append(p)
        return paths


def reproduce_tables(max_exponent: int = 12) -> TablesReport:
    """Classify every pair up to ``max_exponent`` and recompute each order-2
    entry from the Wronskians of its family."""
    if max_exponent < 1:
        raise InvalidExponent("max_exponent must be at least 1")
    rows = []
    for m in range(1, max_exponent + 1):
        for n in range(1, max_exponent + 1):
            res = classify(m, n)
            fam = order2_family(res.parity, res.k)
            bound = _order2_bound(res.parity, res.k)
            rows.append(TableRow(res, bound, fam.label()))
    return TablesReport(max_exponent, rows)
