"""Even test functions with compactly supported Fourier transform.

Convention: fhat(u) = int f(x) exp(-2 pi i x u) dx, so a transform
supported in [-sigma, sigma] cuts every prime sum off exactly at
C^sigma.  Two catalogue kinds:

  Fejer(sigma):      fhat(u) = max(0, 1 - |u|/sigma),
                     f(x) = sigma * (sin(pi sigma x)/(pi sigma x))^2
  SmoothBump(sigma): fhat(u) = (1 - (u/sigma)^2)^2 on |u| <= sigma,
                     f(x) = sigma * g(2 pi sigma x) with
                     g(a) = 16[(3 - a^2) sin a - 3a cos a]/a^5

Fejer is nonnegative (square of a transform); SmoothBump is real and
even but dips slightly negative away from the origin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

_GL_NODES = {}


def _leggauss(order):
    if order not in _GL_NODES:
        _GL_NODES[order] = np.polynomial.legendre.leggauss(order)
    return _GL_NODES[order]


def quad_panels(fn, breakpoints, order=24):
    """Composite Gauss-Legendre over the panels between sorted breakpoints."""
    bp = np.asarray(sorted(set(float(b) for b in breakpoints)))
    nodes, weights = _leggauss(order)
    total = 0.0
    vals = []
    for lo, hi in zip(bp[:-1], bp[1:]):
        if hi <= lo:
            continue
        mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
        x = mid + half * nodes
        vals.append(half * np.dot(weights, fn(x)))
    # fixed-order pairwise reduction for reproducibility
    return pairwise_sum(np.asarray(vals)) if vals else total


def pairwise_sum(a):
    """Deterministic pairwise summation of a 1-D array."""
    a = np.asarray(a, dtype=np.float64)
    n = a.size
    if n == 0:
        return 0.0
    while n > 1:
        half = n // 2
        a = np.concatenate([a[:half] + a[half:2 * half], a[2 * half:n]])
        n = a.size
    return float(a[0])


@dataclass(frozen=True)
class TestFn:
    kind: str  # "fejer" or "smoothbump"
    sigma: float
    f: Callable = None
    fhat: Callable = None
    f0: float = 0.0
    fhat0: float = 0.0
    int_fhat: float = 0.0      # integral of fhat over R  (= f(0))
    int_box1: float = 0.0      # integral of fhat over [-1, 1]

    def __call__(self, x):
        return self.f(x)


def _fejer_f(sigma):
    def f(x):
        x = np.asarray(x, dtype=np.float64)
        a = np.pi * sigma * x
        with np.errstate(divide="ignore", invalid="ignore"):
            s = np.where(a == 0.0, 1.0, np.sin(a) / np.where(a == 0.0, 1.0, a))
        return sigma * s * s
    return f


def _fejer_fhat(sigma):
    def fhat(u):
        u = np.asarray(u, dtype=np.float64)
        return np.maximum(0.0, 1.0 - np.abs(u) / sigma)
    return fhat


def make_fejer(sigma) -> TestFn:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = float(sigma)
    if s <= 1.0:
        box1 = s  # full mass of the triangle
    else:
        box1 = 2.0 - 1.0 / s
    return TestFn(kind="fejer", sigma=s, f=_fejer_f(s), fhat=_fejer_fhat(s),
                  f0=s, fhat0=1.0, int_fhat=s, int_box1=box1)


def _bump_g(a):
    """g(a) = 16[(3 - a^2) sin a - 3a cos a]/a^5, even, g(0) = 16/15."""
    a = np.asarray(a, dtype=np.float64)
    small = np.abs(a) < 1e-2
    asafe = np.where(small, 1.0, a)
    g = 16.0 * ((3.0 - asafe ** 2) * np.sin(asafe)
                - 3.0 * asafe * np.cos(asafe)) / asafe ** 5
    a2 = a * a
    taylor = 16.0 / 15.0 - 8.0 * a2 / 105.0 + 2.0 * a2 * a2 / 945.0 \
        - a2 * a2 * a2 / 31185.0
    return np.where(small, taylor, g)


def _bump_f(sigma):
    def f(x):
        x = np.asarray(x, dtype=np.float64)
        return sigma * _bump_g(2.0 * np.pi * sigma * x)
    return f


def _bump_fhat(sigma):
    def fhat(u):
        u = np.asarray(u, dtype=np.float64)
        v = u / sigma
        return np.where(np.abs(v) <= 1.0, (1.0 - v * v) ** 2, 0.0)
    return fhat


def make_smooth_bump(sigma) -> TestFn:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    s = float(sigma)
    fhat = _bump_fhat(s)
    # int_{-s}^{s} (1-(u/s)^2)^2 du = 16 s / 15
    int_fhat = 16.0 * s / 15.0
    if s <= 1.0:
        box1 = int_fhat
    else:
        box1 = quad_panels(fhat, [-1.0, 0.0, 1.0])
    return TestFn(kind="smoothbump", sigma=s, f=_bump_f(s), fhat=fhat,
                  f0=int_fhat, fhat0=1.0, int_fhat=int_fhat, int_box1=box1)


def make_testfn(spec: str) -> TestFn:
    """Parse 'fejer:0.45' or 'smoothbump:0.3'."""
    kind, _, val = spec.partition(":")
    sigma = float(val) if val else 1.0
    kind = kind.strip().lower()
    if kind == "fejer":
        return make_fejer(sigma)
    if kind in ("smoothbump", "bump"):
        return make_smooth_bump(sigma)
    raise ValueError(f"unknown test function kind {kind!r}")


# -- functionals -----------------------------------------------------------

def _hat_breaks(f1, f2):
    s = max(f1.sigma, f2.sigma)
    pts = {0.0, s, -s, f1.sigma, -f1.sigma, f2.sigma, -f2.sigma}
    return sorted(pts)


def functionals(f1: TestFn, f2: TestFn) -> dict:
    """All scalar functionals used by the density formulas.

    Closed forms for Fejer pairs; Gauss-Legendre with kink splitting
    otherwise (the integrands are piecewise polynomial, so panel
    quadrature of modest order is exact to roundoff).
    """
    if f1.kind == "fejer" and f2.kind == "fejer":
        s1, s2 = f1.sigma, f2.sigma
        s = min(s1, s2)
        I_abs = 2.0 * (s * s / 2.0 - (1.0 / s1 + 1.0 / s2) * s ** 3 / 3.0
                       + s ** 4 / (4.0 * s1 * s2))
        P0 = 2.0 * (s - (1.0 / s1 + 1.0 / s2) * s * s / 2.0
                    + s ** 3 / (3.0 * s1 * s2))
    else:
        bp = _hat_breaks(f1, f2)
        I_abs = quad_panels(lambda u: np.abs(u) * f1.fhat(u) * f2.fhat(u), bp)
        P0 = quad_panels(lambda u: f1.fhat(u) * f2.fhat(u), bp)
    return {
        "f1_0": f1.f0, "f2_0": f2.f0,
        "fhat1_0": f1.fhat0, "fhat2_0": f2.fhat0,
        "I_abs": I_abs,      # int |u| fhat1 fhat2 du
        "P0": P0,            # int f1 f2 dx = int fhat1 fhat2 du
        "I_box1": f1.int_box1,
    }


# -- pointwise products ----------------------------------------------------

def _fejer_selfconv(sigma):
    """Convolution of the Fejer triangle hat with itself (equal sigma).

    Piecewise cubic, support [-2 sigma, 2 sigma]; value at 0 is
    2 sigma/3.
    """
    def ghat(u):
        w = np.abs(np.asarray(u, dtype=np.float64)) / sigma
        inner = w ** 3 / 2.0 - w * w + 2.0 / 3.0
        outer = (2.0 - w) ** 3 / 6.0
        out = np.where(w <= 1.0, inner, np.where(w <= 2.0, outer, 0.0))
        return sigma * out
    return ghat


def product_fn(f1: TestFn, f2: TestFn) -> TestFn:
    """Pointwise product g = f1 f2 with ghat = fhat1 * fhat2 (convolution)."""
    s = f1.sigma + f2.sigma
    fun = functionals(f1, f2)

    def g(x):
        return f1.f(x) * f2.f(x)

    if f1.kind == "fejer" and f2.kind == "fejer" and f1.sigma == f2.sigma:
        ghat = _fejer_selfconv(f1.sigma)
    else:
        def ghat_scalar(u):
            bp = sorted({-f1.sigma, 0.0, f1.sigma,
                         u - f2.sigma, u, u + f2.sigma})
            return quad_panels(lambda v: f1.fhat(v) * f2.fhat(u - v), bp,
                               order=16)
        ghat_vec = np.vectorize(ghat_scalar, otypes=[np.float64])

        def ghat(u):
            u = np.asarray(u, dtype=np.float64)
            out = np.where(np.abs(u) < s, ghat_vec(np.where(np.abs(u) < s, u, 0.0)), 0.0)
            return out

    g0 = f1.f0 * f2.f0
    int_fhat = g0  # int ghat = g(0)
    if s <= 1.0:
        box1 = g0
    else:
        box1 = quad_panels(ghat, np.linspace(-1.0, 1.0, 33), order=16)
    return TestFn(kind=f"product({f1.kind},{f2.kind})", sigma=s, f=g,
                  fhat=ghat, f0=g0, fhat0=fun["P0"], int_fhat=int_fhat,
                  int_box1=box1)
