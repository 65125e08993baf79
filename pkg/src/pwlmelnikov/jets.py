"""Truncated Taylor series ("jets") with numpy batch coefficients.

A :class:`Jet` of degree ``d`` stores normalized Taylor coefficients
``c[p] = f^(p)(x0) / p!`` for ``p = 0..d``. The leading axis indexes the
power; any trailing axes are a batch shape, so one jet can carry the same
expansion at many points at once (quadrature nodes, grids).
"""

from __future__ import annotations

import math

import numpy as np


class Jet:
    __slots__ = ("c",)
    __array_priority__ = 1000

    def __init__(self, coeffs):
        self.c = np.asarray(coeffs, dtype=float)
        if self.c.ndim == 0:
            self.c = self.c.reshape(1)

    # construction -------------------------------------------------------

    @classmethod
    def variable(cls, x0, degree):
        """The jet of ``x0 + h``."""
        x0 = np.asarray(x0, dtype=float)
        c = np.zeros((degree + 1,) + x0.shape)
        c[0] = x0
        if degree >= 1:
            c[1] = 1.0
        return cls(c)

    @classmethod
    def constant(cls, value, degree):
        value = np.asarray(value, dtype=float)
        c = np.zeros((degree + 1,) + value.shape)
        c[0] = value
        return cls(c)

    @property
    def degree(self):
        return self.c.shape[0] - 1

    @property
    def value(self):
        return self.c[0]

    def derivatives(self):
        """Return ``f^(p)(x0)`` for ``p = 0..degree`` (stacked on axis 0)."""
        fact = np.array([math.factorial(p) for p in range(self.degree + 1)], dtype=float)
        return self.c * fact.reshape((-1,) + (1,) * (self.c.ndim - 1))

    def __getitem__(self, p):
        return self.c[p]

    def __repr__(self):
        return f"Jet({self.c!r})"

    # arithmetic ---------------------------------------------------------

    def _batch(self):
        return self.c.shape[1:]

    def broadcast(self, shape):
        """Coefficients broadcast to batch ``shape`` (left-padded)."""
        b = self._batch()
        pad = len(shape) - len(b)
        c = self.c
        if pad > 0:
            c = c.reshape((c.shape[0],) + (1,) * pad + b)
        return np.broadcast_to(c, (c.shape[0],) + tuple(shape))

    def __neg__(self):
        return Jet(-self.c)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Jet):
            shape = np.broadcast_shapes(self._batch(), other._batch())
            return Jet(self.broadcast(shape) + other.broadcast(shape))
        other = np.asarray(other, dtype=float)
        shape = np.broadcast_shapes(self._batch(), other.shape)
        c = self.broadcast(shape).copy()
        c[0] = c[0] + other
        return Jet(c)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Jet):
            other = np.asarray(other, dtype=float)
            shape = np.broadcast_shapes(self._batch(), other.shape)
            return Jet(self.broadcast(shape) * other)
        shape = np.broadcast_shapes(self._batch(), other._batch())
        a, b = self.broadcast(shape), other.broadcast(shape)
        d = min(self.degree, other.degree)
        out = np.zeros((d + 1,) + tuple(shape))
        for p in range(d + 1):
            acc = a[0] * b[p]
            for j in range(1, p + 1):
                acc = acc + a[j] * b[p - j]
            out[p] = acc
        return Jet(out)

    __rmul__ = __mul__

    def reciprocal(self):
        a = self.c
        d = self.degree
        q = np.zeros_like(a)
        q[0] = 1.0 / a[0]
        for p in range(1, d + 1):
            acc = np.zeros_like(a[0])
            for j in range(1, p + 1):
                acc = acc + a[j] * q[p - j]
            q[p] = -acc / a[0]
        return Jet(q)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return self * (1.0 / np.asarray(other, dtype=float))
        return self * other.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, p):
        if isinstance(p, (int, np.integer)) and p >= 0:
            out = Jet.constant(np.ones_like(self.c[0]), self.degree)
            base = self
            e = int(p)
            while e:
                if e & 1:
                    out = out * base
                base = base * base
                e >>= 1
            return out
        return power(self, float(p))

    # calculus helpers ---------------------------------------------------

    def differentiate(self):
        """Jet of f' (degree drops by one)."""
        d = self.degree
        if d == 0:
            return Jet(np.zeros_like(self.c))
        scale = np.arange(1, d + 1, dtype=float).reshape((-1,) + (1,) * (self.c.ndim - 1))
        return Jet(self.c[1:] * scale)

    def compose_series(self, h):
        """Evaluate the polynomial ``sum c[p] h^p`` at plain values ``h``."""
        out = np.zeros(np.broadcast_shapes(self.c[0].shape, np.shape(h)))
        for p in range(self.degree, -1, -1):
            out = out * h + self.c[p]
        return out


def _as_jet(x):
    if not isinstance(x, Jet):
        raise TypeError("expected a Jet")
    return x


def power(a, p):
    """``a ** p`` for real ``p``; requires a nonzero constant term."""
    a = _as_jet(a)
    c = a.c
    d = a.degree
    y = np.zeros_like(c)
    y[0] = c[0] ** p
    for k in range(1, d + 1):
        acc = np.zeros_like(c[0])
        for j in range(1, k + 1):
            acc = acc + (p * j - (k - j)) * c[j] * y[k - j]
        y[k] = acc / (k * c[0])
    return Jet(y)


def exp(a):
    if not isinstance(a, Jet):
        return np.exp(a)
    c = a.c
    d = a.degree
    e = np.zeros_like(c)
    e[0] = np.exp(c[0])
    for k in range(1, d + 1):
        acc = np.zeros_like(c[0])
        for j in range(1, k + 1):
            acc = acc + j * c[j] * e[k - j]
        e[k] = acc / k
    return Jet(e)


def log(a):
    if not isinstance(a, Jet):
        return np.log(a)
    c = a.c
    d = a.degree
    out = np.zeros_like(c)
    out[0] = np.log(c[0])
    for k in range(1, d + 1):
        acc = np.zeros_like(c[0])
        for j in range(1, k):
            acc = acc + j * out[j] * c[k - j]
        out[k] = (c[k] - acc / k) / c[0]
    return Jet(out)


def sqrt(a):
    if not isinstance(a, Jet):
        return np.sqrt(a)
    return power(a, 0.5)


def sincos(a):
    c = a.c
    d = a.degree
    s = np.zeros_like(c)
    co = np.zeros_like(c)
    s[0] = np.sin(c[0])
    co[0] = np.cos(c[0])
    for k in range(1, d + 1):
        acc_s = np.zeros_like(c[0])
        acc_c = np.zeros_like(c[0])
        for j in range(1, k + 1):
            acc_s = acc_s + j * c[j] * co[k - j]
            acc_c = acc_c - j * c[j] * s[k - j]
        s[k] = acc_s / k
        co[k] = acc_c / k
    return Jet(s), Jet(co)


def sin(a):
    if not isinstance(a, Jet):
        return np.sin(a)
    return sincos(a)[0]


def cos(a):
    if not isinstance(a, Jet):
        return np.cos(a)
    return sincos(a)[1]


def arctan(a):
    if not isinstance(a, Jet):
        return np.arctan(a)
    d = a.degree
    if d == 0:
        return Jet(np.arctan(a.c))
    # (arctan a)' = a' / (1 + a^2), integrated term by term
    lower = Jet(a.c[:-1])
    g = a.differentiate() / (1.0 + lower * lower)
    out = np.zeros_like(a.c)
    out[0] = np.arctan(a.c[0])
    for k in range(1, d + 1):
        out[k] = g.c[k - 1] / k
    return Jet(out)


def value(x):
    """Constant term of a jet, or ``x`` itself."""
    return x.c[0] if isinstance(x, Jet) else x
