"""Frequency relabeling maps: increasing bijections with evaluable derivative
and inverse.

Three families are provided.  identity and sinh map the real line onto
itself; exponential maps onto the positive reals and is the natural choice
for octave-spaced scale grids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["ScaleMap", "make_identity", "make_exponential", "make_sinh", "parse_scale_map"]


@dataclass(frozen=True)
class ScaleMap:
    """Increasing differentiable bijection with explicit inverse.

    codomain is "all-reals" or "positive-reals"; invert raises on values
    outside it.
    """

    kind: str
    codomain: str
    _eval: Callable
    _deriv: Callable
    _invert: Callable

    def eval(self, u):
        return self._eval(np.asarray(u, dtype=np.float64))

    def deriv(self, u):
        return self._deriv(np.asarray(u, dtype=np.float64))

    def invert(self, y):
        y = np.asarray(y, dtype=np.float64)
        if self.codomain == "positive-reals" and np.any(y <= 0):
            raise ValueError(f"{self.kind}: inverse undefined for non-positive values")
        return self._invert(y)


def make_identity() -> ScaleMap:
    return ScaleMap(
        kind="identity",
        codomain="all-reals",
        _eval=lambda u: u,
        _deriv=lambda u: np.ones_like(u),
        _invert=lambda y: y,
    )


def make_exponential() -> ScaleMap:
    return ScaleMap(
        kind="exp",
        codomain="positive-reals",
        _eval=np.exp,
        _deriv=np.exp,
        _invert=np.log,
    )


def make_sinh(scale: float) -> ScaleMap:
    """u -> scale * sinh(u / scale); near-linear for |u| << scale."""
    if not (scale > 0):
        raise ValueError("sinh scale must be positive")
    s = float(scale)
    return ScaleMap(
        kind=f"sinh:{s:g}",
        codomain="all-reals",
        _eval=lambda u: s * np.sinh(u / s),
        _deriv=lambda u: np.cosh(u / s),
        _invert=lambda y: s * np.arcsinh(y / s),
    )


def parse_scale_map(text: str) -> ScaleMap:
    """Parse "identity", "exp" or "sinh:<scale>"."""
    text = text.strip()
    if text == "identity":
        return make_identity()
    if text == "exp":
        return make_exponential()
    if text.startswith("sinh:"):
        try:
            scale = float(text.split(":", 1)[1])
        except ValueError as exc:
            raise ValueError(f"bad sinh scale in {text!r}") from exc
        return make_sinh(scale)
    raise ValueError(f"unknown scale map {text!r}")
