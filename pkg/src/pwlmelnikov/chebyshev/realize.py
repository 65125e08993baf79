"""Construct elements of a family's span with prescribed simple zeros."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import RankDeficiency, VerificationFailure
from .basis import u
from .families import OrderedFamily, family as lookup_family


@dataclass(frozen=True)
class Realization:
    family: str
    k: object
    basis: tuple
    coefficients: np.ndarray
    targets: tuple
    zeros: tuple  # all sign-change zeros found in the window
    verified: bool
    method: str  # "kernel" or "perturbation"
    notes: list = field(default_factory=list)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return sum(c * u(i, float(self.k), x) for c, i in zip(self.coefficients, self.basis))


def _matrix(basis, k, pts):
    pts = np.asarray(pts, dtype=float)
    return np.stack([u(i, float(k), pts) for i in basis], axis=-1)


def _kernel_vector(basis, k, pts):
    a = _matrix(basis, k, pts)
    # column scaling keeps the SVD meaningful when functions differ in size
    scale = np.max(np.abs(a), axis=0)
    scale = np.where(scale == 0, 1.0, scale)
    _, s, vt = np.linalg.svd(a / scale)
    rank = int(np.sum(s > 1e-12 * s[0]))
    if rank < len(pts):
        raise RankDeficiency(f"interpolation conditions at {list(pts)} are dependent (rank {rank})")
    c = vt[-1] / scale
    return c / np.max(np.abs(c))


def sign_change_zeros(f, window, samples: int = 4000) -> list[float]:
    """Zeros of ``f`` on ``window`` located by sign changes on a log grid and
    polished by bisection."""
    lo, hi = window
    xs = np.geomspace(lo, hi, samples)
    ys = f(xs)
    out = []
    for i in np.nonzero(np.sign(ys[1:]) != np.sign(ys[:-1]))[0]:
        a, b, fa = xs[i], xs[i + 1], ys[i]
        for _ in range(60):
            m = 0.5 * (a + b)
            fm = f(np.array([m]))[0]
            if np.sign(fm) == np.sign(fa):
                a, fa = m, fm
            else:
                b = m
        out.append(0.5 * (a + b))
    return out


def _verify(f, targets, zeros, rtol=1e-6) -> bool:
    return all(any(abs(z - t) <= rtol * max(1.0, t) for z in zeros) for t in targets)


def _window_for(targets, window):
    if window is not None:
        return window
    t = np.asarray(targets, dtype=float)
    return (float(t.min()) / 4, float(t.max()) * 4)


def realize_zeros(fam, k=None, target_points=(), window=None, search_samples: int = 400) -> Realization:
    """Element of ``Span(fam)`` vanishing with a sign change at each target.

    Up to ``n`` targets (``n + 1`` functions) are met by a kernel vector of
    the interpolation matrix. With ``n + 1`` targets the interpolation system
    is square and generically only the zero function solves it, so the
    first ``n - 1`` targets are kept, the last interpolation node is moved
    over the window, and the first element found with ``n + 1`` sign-change
    zeros is returned. Its zeros then include the kept targets but not
    necessarily the remaining ones; ``verified`` reports whether ``n + 1``
    zeros were reached.
    """
    if isinstance(fam, str):
        fam = lookup_family(fam, k)
    targets = tuple(sorted(float(t) for t in target_points))
    if len(set(targets)) != len(targets):
        raise RankDeficiency("target points must be distinct")
    if any(t <= 0 for t in targets):
        raise RankDeficiency("target points must be positive")
    window = _window_for(targets, window)
    n = fam.n

    def combo(c):
        return lambda x: _matrix(fam.basis, fam.k, np.atleast_1d(x)) @ c

    if len(targets) <= n:
        c = _kernel_vector(fam.basis, fam.k, targets)
        zeros = sign_change_zeros(combo(c), window)
        if not _verify(combo(c), targets, zeros):
            raise VerificationFailure(f"targets {targets} are not all sign-change zeros of the kernel element")
        return Realization(fam.name, fam.k, fam.basis, c, targets, tuple(zeros), True, "kernel")

    if len(targets) > n + 1:
        raise RankDeficiency(f"{len(targets)} zeros requested from a span of {n + 1} functions")

    # accuracy-one request: n - 1 nodes fixed, one node free
    fixed = targets[: n - 1]
    best, best_zeros = None, []
    lo, hi = window
    for s in np.geomspace(lo, hi, search_samples):
        if fixed and min(abs(s - t) for t in fixed) < 1e-3 * s:
            continue
        try:
            c = _kernel_vector(fam.basis, fam.k, fixed + (s,))
        except RankDeficiency:
            continue
        zeros = sign_change_zeros(combo(c), window, samples=1500)
        if len(zeros) > len(best_zeros) and _verify(combo(c), fixed, zeros):
            best, best_zeros = c, zeros
            if len(zeros) >= n + 1:
                break
    if best is None:
        raise VerificationFailure("no element through the fixed targets could be verified")
    verified = len(best_zeros) >= n + 1
    notes = [] if verified else [f"extra zero not found; best element has {len(best_zeros)} zeros"]
    zeros = tuple(sign_change_zeros(combo(best), window))
    return Realization(fam.name, fam.k, fam.basis, best, targets, zeros, verified, "perturbation", notes)


def realize_in_span(basis, k, target_points, window=None) -> Realization:
    """``realize_zeros`` for an arbitrary list of basis indices."""
    return realize_zeros(OrderedFamily("span", k, tuple(basis)), None, target_points, window)
