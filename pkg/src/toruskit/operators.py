"""Diagonal Fourier-multiplier operators and spectral-side Sobolev norms.

A multiplier acts coefficient-wise, c(xi) -> sigma(xi) c(xi).  The built-in
symbols cover the positive Laplacian |xi|^2, the Helmholtz operator
1 + |xi|^2, its inverse (the resolvent, operator norm 1), and level-cutoff
truncations of the resolvent.

Truncation membership: a cutoff-N truncation keeps the mode xi exactly when
norm_sq(xi) < (N + 1)^2, so the removed tail starts at squared norm
(N + 1)^2 and the operator-norm error of the truncated resolvent is
1/((N + 1)^2 + 1) in every dimension.  Integer frequencies with
N < |xi| < N + 1 (possible for n >= 2) are kept.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lattice import Frequency, norm_sq, tail_min_norm_sq
from .transform import SpectralField, TorusGrid


@dataclass(frozen=True)
class MultiplierSymbol:
    """Real-valued function of the frequency defining a diagonal operator."""

    name: str
    eval: Callable[[Frequency], float]

    def __call__(self, xi: Frequency) -> float:
        return self.eval(xi)


def identity_symbol() -> MultiplierSymbol:
    return MultiplierSymbol("identity", lambda xi: 1.0)


def laplacian_symbol() -> MultiplierSymbol:
    return MultiplierSymbol("laplacian", lambda xi: float(norm_sq(xi)))


def helmholtz_symbol() -> MultiplierSymbol:
    return MultiplierSymbol("helmholtz", lambda xi: 1.0 + norm_sq(xi))


def resolvent_symbol() -> MultiplierSymbol:
    return MultiplierSymbol("resolvent", lambda xi: 1.0 / (1.0 + norm_sq(xi)))


def truncated_resolvent_symbol(cutoff: int) -> MultiplierSymbol:
    start = tail_min_norm_sq(cutoff)
    return MultiplierSymbol(
        f"truncated_resolvent({cutoff})",
        lambda xi: 1.0 / (1.0 + norm_sq(xi)) if norm_sq(xi) < start else 0.0,
    )


def resolvent_tail_symbol(cutoff: int) -> MultiplierSymbol:
    """Resolvent minus its cutoff truncation: supported on norm_sq >= (N+1)^2."""
    start = tail_min_norm_sq(cutoff)
    return MultiplierSymbol(
        f"resolvent_tail({cutoff})",
        lambda xi: 1.0 / (1.0 + norm_sq(xi)) if norm_sq(xi) >= start else 0.0,
    )


def symbol_array(symbol: MultiplierSymbol, grid: TorusGrid) -> np.ndarray:
    """Evaluate a symbol on every stored frequency of the grid's box."""
    flat = np.fromiter(
        (symbol(xi) for xi in grid.frequencies()), dtype=np.float64, count=grid.size
    )
    if not np.all(np.isfinite(flat)):
        raise ValueError(
            f"symbol {symbol.name!r} produced non-finite values on the box"
        )
    return flat.reshape(grid.shape)


def norm_sq_array(grid: TorusGrid) -> np.ndarray:
    """|xi|^2 over the stored box, vectorized."""
    freqs = grid.axis_frequencies().astype(np.float64)
    meshes = np.meshgrid(*(freqs,) * grid.dimension, indexing="ij")
    return sum(m * m for m in meshes)


def apply_multiplier(c: SpectralField, symbol: MultiplierSymbol) -> SpectralField:
    """Diagonal action: output(xi) = sigma(xi) c(xi) on every stored mode."""
    return SpectralField(c.grid, symbol_array(symbol, c.grid) * c.coefficients)


def laplacian(c: SpectralField) -> SpectralField:
    return apply_multiplier(c, laplacian_symbol())


def resolvent(c: SpectralField) -> SpectralField:
    return apply_multiplier(c, resolvent_symbol())


def truncated_resolvent(c: SpectralField, cutoff: int) -> SpectralField:
    """Resolvent action on modes with norm_sq < (cutoff+1)^2, zero beyond.

    As an operator on the stored box its rank is the number of kept modes.
    """
    if cutoff < 0:
        raise ValueError(f"cutoff must be >= 0, got {cutoff}")
    return apply_multiplier(c, truncated_resolvent_symbol(cutoff))


def sobolev_norm_sq(c: SpectralField, order: float) -> float:
    """sum_xi (1 + |xi|^2)^order |c(xi)|^2 over the stored box."""
    if not np.isfinite(order):
        raise ValueError(f"Sobolev order must be finite, got {order}")
    weights = (1.0 + norm_sq_array(c.grid)) ** order
    return float(np.sum(weights * np.abs(c.coefficients) ** 2))


def l2_norm(c: SpectralField) -> float:
    return float(np.sqrt(sobolev_norm_sq(c, 0.0)))
