"""Build a (2,1) system whose first Melnikov function has simple zeros at
r = 0.8, 1.5, 2.4, then find the limit cycles of the perturbed system for
shrinking epsilon and show that they converge linearly onto those zeros.

    python demos/limit_cycles.py
"""

from pwlmelnikov.verify import realize_cycles_mixed

real = realize_cycles_mixed()
print("coefficients:", {k: round(v, 6) for k, v in real.system.coeffs.to_dict()["order1"].items() if v})
print("Melnikov zeros:", [round(float(z), 6) for z in real.melnikov_zeros])
for eps, cycles in sorted(real.cycles.items(), reverse=True):
    print(f"eps={eps:g}")
    for c in cycles:
        kind = "stable" if c.stable else "unstable"
        print(f"  r*={c.radius:.8f}  {kind:8}  |r* - zero| / eps = {c.distance / eps:.4f}")
print(f"fitted convergence order: {real.order():.3f}")
