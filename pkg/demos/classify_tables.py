"""Zero counts and cycle lower bounds for a few exponent pairs, then the
order-2 cross-check over every pair up to 12.

    python demos/classify_tables.py [out_dir]
"""

import sys

from pwlmelnikov.classify import classify, fmt_count, reproduce_tables

for m, n in [(1, 1), (2, 1), (3, 1), (2, 2), (4, 2), (3, 2), (12, 5)]:
    r = classify(m, n)
    print(f"({m:2},{n:2}) {r.parity.value:9} k={str(r.k):5} m1={fmt_count(r.m1):5} m2={fmt_count(r.m2):5} "
          f"m3={fmt_count(r.m3):5} H>={r.H_lower}")

report = reproduce_tables(12)
bad = report.mismatches()
print(f"\norder-2 entries matching the Wronskian bound: {len(report.rows) - len(bad)}/{len(report.rows)}")
for row in bad:
    print(f"  ({row.result.m},{row.result.n}): tabulated {fmt_count(row.result.m2)}, {row.bound}")
if len(sys.argv) > 1:
    for path in report.write(sys.argv[1]):
        print("wrote", path)
