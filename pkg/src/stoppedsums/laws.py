"""Marginal distribution primitives.

Each family exposes the same small surface: an exact survival function
``tail(x) = P(X > x)`` (total on the reals, right-continuous, nonincreasing),
its left limit ``tail_left(x) = P(X >= x)``, an exact ``mean`` on the
extended reals, the tail inverse ``quantile``, and a reproducible sampler.
Infinite means are returned as ``math.inf``, never as a large float, because
downstream moment conditions must distinguish "infinite" from "large".

The lifted geometric family is the law of ``(1 + U) * 2**G`` with ``U``
uniform on [0, 1] and ``G`` geometric on {0, 1, ...} with success weight
``1 - q``.  Its survival function reduces piecewise on dyadic blocks: for
``x >= 1`` with ``l = floor(log2 x)`` and ``t = x / 2**l in [1, 2)``,

    P(X > x) = q**(l+1) + (1 - q) * q**l * (2 - t),

which is continuous in x and exact in floating point down to tiny tails;
the naive series over G loses precision at large x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .rng import RngStream

__all__ = [
    "MarginalLaw",
    "Pareto",
    "Exponential",
    "LiftedGeometric",
    "Degenerate",
    "Lattice",
]


def _as_array(x) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _ret(arr: np.ndarray, scalar: bool):
    return float(arr[()]) if scalar else arr


class MarginalLaw:
    """Common protocol for univariate marginals (duck-typed, nonneg support)."""

    name: str = "marginal"

    def tail(self, x):
        """P(X > x); vectorized, total on the reals."""
        raise NotImplementedError

    def tail_left(self, x):
        """P(X >= x); differs from tail only at atoms."""
        return self.tail(x)

    def mean(self) -> float:
        raise NotImplementedError

    def quantile(self, p):
        """Smallest x with tail(x) <= p (generalized tail inverse)."""
        raise NotImplementedError

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        raise NotImplementedError

    def support_lower(self) -> float:
        """Infimum of the support."""
        return 0.0

    def label(self) -> str:
        return self.name


@dataclass(frozen=True)
class Pareto(MarginalLaw):
    """Power tail (scale/x)**alpha for x >= scale; tail is 1 below scale."""

    alpha: float
    scale: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0 or self.scale <= 0:
            raise ValueError("Pareto requires alpha > 0 and scale > 0")

    def tail(self, x):
        arr, scalar = _as_array(x)
        out = np.ones_like(arr)
        above = arr >= self.scale
        out[above] = (self.scale / arr[above]) ** self.alpha
        return _ret(out, scalar)

    def mean(self) -> float:
        if self.alpha <= 1.0:
            return math.inf
        return self.alpha * self.scale / (self.alpha - 1.0)

    def quantile(self, p):
        arr, scalar = _as_array(p)
        out = self.scale * arr ** (-1.0 / self.alpha)
        return _ret(out, scalar)

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        u = stream.generator.random(n)
        # inverse transform on the tail; 1-u avoids u == 0 blowup
        return self.scale * (1.0 - u) ** (-1.0 / self.alpha)

    def support_lower(self) -> float:
        return self.scale

    def label(self) -> str:
        return f"Pareto(alpha={self.alpha:g}, scale={self.scale:g})"


@dataclass(frozen=True)
class Exponential(MarginalLaw):
    rate: float = 1.0

    def __post_init__(self):
        if self.rate <= 0:
            raise ValueError("Exponential requires rate > 0")

    def tail(self, x):
        arr, scalar = _as_array(x)
        out = np.ones_like(arr)
        pos = arr >= 0
        out[pos] = np.exp(-self.rate * arr[pos])
        return _ret(out, scalar)

    def mean(self) -> float:
        return 1.0 / self.rate

    def quantile(self, p):
        arr, scalar = _as_array(p)
        return _ret(-np.log(arr) / self.rate, scalar)

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        return stream.generator.exponential(1.0 / self.rate, size=n)

    def label(self) -> str:
        return f"Exponential(rate={self.rate:g})"


@dataclass(frozen=True)
class LiftedGeometric(MarginalLaw):
    """Law of (1 + U) * 2**G; q in (0, 1) is the geometric decay of G."""

    q: float

    def __post_init__(self):
        if not 0.0 < self.q < 1.0:
            raise ValueError("LiftedGeometric requires q in (0, 1)")

    def tail(self, x):
        arr, scalar = _as_array(x)
        out = np.ones_like(arr)
        m = arr >= 1.0
        if np.any(m):
            xs = arr[m]
            l = np.floor(np.log2(xs))
            t = xs / np.exp2(l)
            # guard the pathological float case t slightly >= 2 or < 1
            bump = t >= 2.0
            l[bump] += 1.0
            t[bump] /= 2.0
            drop = t < 1.0
            l[drop] -= 1.0
            t[drop] *= 2.0
            ql = self.q**l
            out[m] = ql * (self.q + (1.0 - self.q) * (2.0 - t))
        return _ret(out, scalar)

    def mean(self) -> float:
        # E(1+U) * E 2**G; the geometric series for E 2**G diverges once 2q >= 1
        if self.q >= 0.5:
            return math.inf
        return 1.5 * (1.0 - self.q) / (1.0 - 2.0 * self.q)

    def quantile(self, p):
        arr, scalar = _as_array(p)
        arr = np.clip(arr, np.nextafter(0.0, 1.0), 1.0)
        l = np.floor(np.log(arr) / np.log(self.q))
        # place p in (q**(l+1), q**l]
        l = np.where(self.q**l < arr, l - 1.0, l)
        l = np.where(self.q ** (l + 1.0) >= arr, l + 1.0, l)
        l = np.maximum(l, 0.0)
        ql = self.q**l
        t = 2.0 - (arr - self.q * ql) / ((1.0 - self.q) * ql)
        return _ret(np.exp2(l) * t, scalar)

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        gen = stream.generator
        g = gen.geometric(1.0 - self.q, size=n) - 1  # support {0,1,...}
        u = gen.random(n)
        return (1.0 + u) * np.exp2(g.astype(float))

    def support_lower(self) -> float:
        return 1.0

    def label(self) -> str:
        return f"LiftedGeometric(q={self.q:g})"


@dataclass(frozen=True)
class Degenerate(MarginalLaw):
    point: float = 0.0

    def tail(self, x):
        arr, scalar = _as_array(x)
        return _ret((arr < self.point).astype(float), scalar)

    def tail_left(self, x):
        arr, scalar = _as_array(x)
        return _ret((arr <= self.point).astype(float), scalar)

    def mean(self) -> float:
        return self.point

    def quantile(self, p):
        arr, scalar = _as_array(p)
        return _ret(np.full_like(arr, self.point), scalar)

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        stream.generator.random(n)  # keep stream advancement uniform across laws
        return np.full(n, self.point)

    def support_lower(self) -> float:
        return self.point

    def label(self) -> str:
        return f"Degenerate(point={self.point:g})"


@dataclass(frozen=True)
class Lattice(MarginalLaw):
    """Generic escape hatch: atoms on an increasing grid, stored as tails.

    ``tails[i] = P(X > grid[i])`` must be nonincreasing, start <= 1 and end
    at exactly 0 (the law is proper and supported on the grid).  Tails are
    stored instead of a pmf to avoid cancellation at extreme quantiles.
    """

    grid: tuple[float, ...]
    tails: tuple[float, ...]
    _pmf: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        t = np.asarray(self.tails, dtype=float)
        if g.ndim != 1 or g.shape != t.shape or len(g) == 0:
            raise ValueError("grid and tails must be equal-length 1-D sequences")
        if np.any(np.diff(g) <= 0):
            raise ValueError("grid must be strictly increasing")
        if np.any(np.diff(t) > 1e-15) or t[0] > 1.0 + 1e-15 or np.any(t < -1e-15):
            raise ValueError("tails must be nonincreasing within [0, 1]")
        if t[-1] != 0.0:
            raise ValueError("tails must end at 0 (proper law with bounded support)")
        prev = np.concatenate(([1.0], t[:-1]))
        pmf = prev - t
        object.__setattr__(self, "grid", tuple(float(v) for v in g))
        object.__setattr__(self, "tails", tuple(float(v) for v in t))
        object.__setattr__(self, "_pmf", tuple(float(v) for v in pmf))

    def tail(self, x):
        arr, scalar = _as_array(x)
        g = np.asarray(self.grid)
        t = np.concatenate(([1.0], np.asarray(self.tails)))
        idx = np.searchsorted(g, arr, side="right")
        return _ret(t[idx], scalar)

    def tail_left(self, x):
        arr, scalar = _as_array(x)
        g = np.asarray(self.grid)
        t = np.concatenate(([1.0], np.asarray(self.tails)))
        idx = np.searchsorted(g, arr, side="left")
        return _ret(t[idx], scalar)

    def mean(self) -> float:
        return float(np.dot(self.grid, self._pmf))

    def quantile(self, p):
        arr, scalar = _as_array(p)
        t = np.asarray(self.tails)
        g = np.asarray(self.grid)
        # smallest grid point whose tail is <= p
        idx = np.searchsorted(-t, -arr, side="left")
        idx = np.clip(idx, 0, len(g) - 1)
        return _ret(g[idx], scalar)

    def sample(self, stream: RngStream, n: int) -> np.ndarray:
        u = stream.generator.random(n)
        cdf = 1.0 - np.asarray(self.tails)
        idx = np.searchsorted(cdf, u, side="right")
        idx = np.clip(idx, 0, len(self.grid) - 1)
        return np.asarray(self.grid)[idx]

    def support_lower(self) -> float:
        return self.grid[0]

    def label(self) -> str:
        return f"Lattice(n={len(self.grid)}, lo={self.grid[0]:g}, hi={self.grid[-1]:g})"
