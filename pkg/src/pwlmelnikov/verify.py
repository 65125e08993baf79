"""Cross-validation suite: each check recomputes one published quantity by
two independent routes and reports whether they agree."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .chebyshev.discriminant import (DEGENERATE_K, STATED_COUNTS, factored_discriminant, quartic_discriminant)
from .chebyshev.families import F1_CASES, F2_CASES, OrderedFamily, family
from .chebyshev.polynomials import NAMED, quartic, quartic_coefficients
from .chebyshev.realize import realize_in_span, realize_zeros, sign_change_zeros
from .chebyshev.regions import KRegion, region_constants
from .chebyshev.sturm import count_real_roots
from .chebyshev.wronskian import CLOSED_FORMS, closed_form_key, wronskian_sequence
from .classify import classify, reproduce_tables
from .closed_forms import coeffs_from_target_rho, coeffs_to_rho, delta1_vanishing
from .melnikov import melnikov_numeric
from .model import PerturbationCoeffs, PwlSystem, SwitchingCurve, r_of_x
from .poincare import TRANSVERSAL_TOL, ReturnMap, find_limit_cycles

ROOT_INTERVALS = (
    ("q1", Fraction(0), Fraction(1, 5)),
    ("q2", Fraction(0), Fraction(1, 5)),
    ("q2", Fraction(1, 5), Fraction(1, 3)),
    ("q2", Fraction(3, 2), Fraction(2)),
    ("q2", Fraction(3), Fraction(4)),
    ("q3", Fraction(3), Fraction(4)),
)
ROOT_WIDTH = 1e-12

WRONSKIAN_RTOL = 1e-8
WRONSKIAN_GRID = (0.1, 10.0, 50)
WRONSKIAN_DIGITS = 40

DISCRIMINANT_RTOL = 1e-10

MELNIKOV_CASES = ((3, 1), (2, 4), (2, 1), (1, 2))
MELNIKOV_GRID = (0.2, 5.0, 100)
MELNIKOV_ZERO_TOL = 1e-4
VANISHING_TOL = 1e-9

CYCLE_EPSILONS = (1e-2, 1e-3, 1e-4)
CYCLE_DISTANCE_FACTOR = 5.0
CYCLE_ORDER_TOL = 0.2

IDENTITY_TOL = 1e-10
LINEARITY_RTOL = 1e-9


@dataclass
class CheckResult:
    name: str
    passed: bool
    seconds: float
    details: list = field(default_factory=list)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.seconds:.1f}s)"


def _timed(name, fn, *args, **kwargs) -> CheckResult:
    t0 = time.perf_counter()
    passed, details = fn(*args, **kwargs)
    return CheckResult(name, bool(passed), time.perf_counter() - t0, details)


# ---------------------------------------------------------------------------


def _root_constants():
    ok, details = True, []
    for name, lo, hi in ROOT_INTERVALS:
        iso = count_real_roots(NAMED[name], (lo, hi), width=Fraction(ROOT_WIDTH))
        width = max((float(b - a) for a, b in iso.intervals), default=0.0)
        good = iso.count == 1 and width <= ROOT_WIDTH
        ok &= good
        mid = iso.midpoints()[0] if iso.count else float("nan")
        details.append(f"{name} on ({lo},{hi}): {iso.count} root(s), {mid:.12f}, width {width:.1e}")
    return ok, details


def representative_k(region: KRegion, n: int = 3) -> list[Fraction]:
    """``n`` non-special rationals inside each part of ``region``."""
    out = []
    for part in region.parts:
        if part.lo == part.hi:
            out.append(Fraction(part.lo))
            continue
        lo = _float(part.lo)
        hi = _float(part.hi)
        hi = lo + 3.0 if hi == float("inf") else hi
        for t in (0.23, 0.51, 0.79)[:n]:
            k = Fraction(lo + t * (hi - lo)).limit_denominator(10**6)
            if k in region:
                out.append(k)
    return out


def _float(e) -> float:
    if e == "inf":
        return float("inf")
    if isinstance(e, str):
        return region_constants()[e].value
    return float(e)


def wronskian_check_families(per_range: int = 3) -> list[OrderedFamily]:
    """One ordered family per (closed form, representative k)."""
    generic = KRegion.parse("(0,1) U (1,inf)")
    fams = []
    for name in ("G2", "G3", "G4", "G5", "G9"):
        fams += [family(name, k) for k in representative_k(generic, per_range)]
    fams += [family("G6"), family("G7")]
    for case, region, basis in F1_CASES:
        fams += [OrderedFamily("F1", k, basis, case) for k in representative_k(region, per_range)]
    for case, region, basis in F2_CASES:
        fams += [OrderedFamily("F2", k, basis, case) for k in representative_k(region, per_range)]
    return fams


def wronskian_agreement(fam: OrderedFamily, grid=WRONSKIAN_GRID, digits: int = WRONSKIAN_DIGITS):
    """Largest ``|closed - numeric| / |closed|`` per tabulated Wronskian."""
    xs = np.geomspace(*grid)
    numeric = wronskian_sequence(fam, xs, digits=digits)
    errs = []
    for j, cw in enumerate(CLOSED_FORMS[closed_form_key(fam)]):
        closed = cw(fam.k, xs, digits=digits)
        errs.append(float(np.max(np.abs(closed - numeric[j]) / np.abs(closed))))
    return errs


def _wronskians(per_range: int = 3):
    ok, details, count = True, [], 0
    for fam in wronskian_check_families(per_range):
        errs = wronskian_agreement(fam)
        count += len(errs)
        worst = max(errs)
        if worst > WRONSKIAN_RTOL:
            ok = False
            details.append(f"{fam.label()}: max rel err {worst:.2e}")
    details.insert(0, f"{count} closed-form evaluations compared")
    return ok, details


def _discriminant(samples: int = 100, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in rng.uniform(0, 6, samples):
        if any(abs(k - float(d)) < 1e-9 for d in DEGENERATE_K):
            continue
        kq = Fraction(float(k))
        gen = quartic_discriminant(*quartic_coefficients(kq))
        fac = factored_discriminant(kq)
        worst = max(worst, float(abs(gen - fac) / abs(fac)))
    ok = worst <= DISCRIMINANT_RTOL
    details = [f"max rel discrepancy {worst:.1e} over {samples} k"]
    for region, stated in STATED_COUNTS:
        for k in representative_k(region, 2):
            got = count_real_roots(quartic(k), (0, None)).count
            if got != stated:
                ok = False
                details.append(f"k={k}: {got} positive roots, stated {stated}")
    return ok, details


def _melnikov(draws: int = 50, seed: int = 1):
    rng = np.random.default_rng(seed)
    rs = np.geomspace(*MELNIKOV_GRID)
    window = MELNIKOV_GRID[:2]
    ok, details = True, []
    for m, n in MELNIKOV_CASES:
        curve = SwitchingCurve(m, n)
        sign_bad, zero_err, residual = 0, 0.0, 0.0
        for _ in range(draws):
            c = PerturbationCoeffs.random(rng)
            sys_ = PwlSystem(curve, c)
            form = coeffs_to_rho(curve, c, 1)
            sign_bad += int(np.sum(np.sign(melnikov_numeric(sys_, 1, rs)) != np.sign(form.delta(rs))))
            zn = sign_change_zeros(lambda r: melnikov_numeric(sys_, 1, r), window, 400)
            zc = sign_change_zeros(form.delta, window, 400)
            if len(zn) != len(zc):
                zero_err = float("inf")
            elif zn:
                zero_err = max(zero_err, max(abs(a - b) for a, b in zip(zn, zc)))
            v = PwlSystem(curve, delta1_vanishing(curve, c))
            residual = max(residual, float(np.max(np.abs(melnikov_numeric(v, 1, rs)))))
        good = sign_bad == 0 and zero_err <= MELNIKOV_ZERO_TOL and residual <= VANISHING_TOL
        ok &= good
        details.append(f"({m},{n}) {curve.parity_case.value}: sign mismatches {sign_bad}, "
                       f"zero offset {zero_err:.1e}, vanishing residual {residual:.1e}")
    return ok, details


@dataclass
class CycleRealization:
    system: PwlSystem
    melnikov_zeros: list
    cycles: dict  # eps -> list of LimitCycleReport
    window: tuple

    def order(self) -> float:
        """Fitted exponent of ``max distance ~ eps^p``."""
        eps = np.array(sorted(self.cycles))
        dist = np.array([max(c.distance for c in self.cycles[e]) for e in eps])
        return float(np.polyfit(np.log(eps), np.log(dist), 1)[0])


def realize_cycles_mixed(radii=(0.8, 1.5, 2.4), window=(0.5, 3.0), epsilons=CYCLE_EPSILONS) -> CycleRealization:
    """Order-1 coefficients for ``(m, n) = (2, 1)`` whose ``Delta_1`` has
    simple zeros at ``radii``, and the limit cycles found near them."""
    curve = SwitchingCurve(2, 1)
    probe = coeffs_to_rho(curve, PerturbationCoeffs.random(np.random.default_rng(0)), 1)
    real = realize_in_span(probe.basis, probe.k, probe.x_of_r(np.asarray(radii)))
    return _cycles_for(curve, coeffs_from_target_rho(curve, real.coefficients), window, epsilons)


def realize_cycles_odd(targets=(0.5, 0.7, 0.9), epsilons=CYCLE_EPSILONS) -> CycleRealization:
    """Three order-1 zeros for ``(m, n) = (3, 1)``: the span has three
    functions, so the third zero is the accuracy-one extra zero."""
    curve = SwitchingCurve(3, 1)
    probe = coeffs_to_rho(curve, PerturbationCoeffs.random(np.random.default_rng(0)), 1)
    real = realize_zeros("G3", curve.k, targets)
    w = dict(zip(real.basis, real.coefficients))
    coeffs = coeffs_from_target_rho(curve, [w[i] for i in probe.basis])
    rz = r_of_x(curve, np.asarray(real.zeros))
    return _cycles_for(curve, coeffs, (0.7 * rz.min(), 1.3 * rz.max()), epsilons)


def _cycles_for(curve, coeffs, window, epsilons) -> CycleRealization:
    sys_ = PwlSystem(curve, coeffs)
    zeros = sign_change_zeros(lambda r: melnikov_numeric(sys_, 1, r), window, 400)
    cycles = {eps: find_limit_cycles(sys_.with_epsilon(eps), window, melnikov_zeros=zeros, samples=400)
              for eps in epsilons}
    return CycleRealization(sys_, zeros, cycles, tuple(window))


def cycle_realization_ok(real: CycleRealization, expected: int, eps_check: float = 1e-3):
    details = [f"Melnikov zeros {[round(float(z), 6) for z in real.melnikov_zeros]}"]
    ok = len(real.melnikov_zeros) == expected
    for eps, cyc in sorted(real.cycles.items(), reverse=True):
        near = [c.distance / eps for c in cyc]
        details.append(f"eps={eps:g}: {len(cyc)} cycles, distance/eps {[round(d, 3) for d in near]}")
        if eps == eps_check:
            ok &= len(cyc) == expected and all(d <= CYCLE_DISTANCE_FACTOR for d in near)
    try:
        p = real.order()
    except (ValueError, TypeError):
        p = float("nan")
    details.append(f"fitted order {p:.3f}")
    ok &= all(len(c) == expected for c in real.cycles.values()) and abs(p - 1.0) <= CYCLE_ORDER_TOL
    return ok, details


def _cycles():
    ok1, d1 = cycle_realization_ok(realize_cycles_mixed(), 3)
    ok2, d2 = cycle_realization_ok(realize_cycles_odd(), 3)
    return ok1 and ok2, ["(2,1): " + s for s in d1] + ["(3,1): " + s for s in d2]


def _tables(max_exponent: int = 12):
    rep = reproduce_tables(max_exponent)
    bad = rep.mismatches()
    details = [f"{len(rep.rows) - len(bad)}/{len(rep.rows)} order-2 entries agree with the Wronskian bound"]
    details += [f"({r.result.m},{r.result.n}) k={r.result.k}: tabulated {r.result.m2}, computed {r.bound}" for r in bad]
    return not bad, details


def _counts(res):
    return res.region, res.m1, res.m2, res.m3, res.H_lower


def _properties(seed: int = 2):
    rng = np.random.default_rng(seed)
    ok, details = True, []
    worst_id, min_dhdt = 0.0, np.inf
    for m, n in ((3, 1), (2, 4), (2, 1), (1, 1)):
        pm = ReturnMap(PwlSystem(SwitchingCurve(m, n), PerturbationCoeffs.random(rng), 0.0))
        for r0 in (0.3, 1.0, 2.7):
            r1, events = pm.orbit(r0)
            worst_id = max(worst_id, abs(r1 - r0))
            min_dhdt = min([min_dhdt] + [abs(e.dHdt) for e in events if e.kind == "switch"])
    ok &= worst_id <= IDENTITY_TOL and min_dhdt > TRANSVERSAL_TOL
    details.append(f"eps=0 return map identity error {worst_id:.1e}; min |dH/dt| at switches {min_dhdt:.2e}")

    asym = [(m, n) for m in range(1, 13) for n in range(1, 13)
            if _counts(classify(m, n)) != _counts(classify(n, m))]
    ok &= not asym
    details.append(f"classify swap asymmetries: {asym}")

    worst_lin = 0.0
    rs = np.geomspace(0.3, 3.0, 20)
    for m, n in MELNIKOV_CASES:
        curve = SwitchingCurve(m, n)
        a, b = PerturbationCoeffs.random(rng), PerturbationCoeffs.random(rng)
        s, t = rng.normal(size=2)
        lhs = melnikov_numeric(PwlSystem(curve, a * s + b * t), 1, rs)
        rhs = s * melnikov_numeric(PwlSystem(curve, a), 1, rs) + t * melnikov_numeric(PwlSystem(curve, b), 1, rs)
        worst_lin = max(worst_lin, float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs))))
    ok &= worst_lin <= LINEARITY_RTOL
    details.append(f"Delta_1 superposition rel error {worst_lin:.1e}")
    return ok, details


CHECKS = {
    "roots": ("Root constants by Sturm sequences", _root_constants),
    "wronskians": ("Closed-form Wronskians vs high-precision numerics", _wronskians),
    "discriminant": ("Quartic discriminant identity and positive-root counts", _discriminant),
    "melnikov": ("Order-1 Melnikov numerics vs closed forms", _melnikov),
    "cycles": ("Limit-cycle realization near Melnikov zeros", _cycles),
    "tables": ("Order-2 table entries vs Wronskian bounds", _tables),
    "properties": ("Return-map, symmetry and linearity properties", _properties),
}


def run_all(names=None, progress=None) -> list[CheckResult]:
    results = []
    for key in names or CHECKS:
        title, fn = CHECKS[key]
        res = _timed(title, fn)
        results.append(res)
        if progress:
            progress(res)
    return results
