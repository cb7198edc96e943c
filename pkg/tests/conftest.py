import numpy as np
import pytest

from toruskit import GridField, SpectralField, TorusGrid


@pytest.fixture
def grid_2d_9() -> TorusGrid:
    return TorusGrid(2, 9)


def spectral_delta(grid: TorusGrid, *modes: tuple) -> SpectralField:
    """Field with unit coefficient at each given frequency, zero elsewhere."""
    arr = np.zeros(grid.shape, dtype=np.complex128)
    h = grid.box_radius
    for xi in modes:
        arr[tuple(int(x) + h for x in xi)] = 1.0
    return SpectralField(grid, arr)


def random_spectral(grid: TorusGrid, rng: np.random.Generator) -> SpectralField:
    return SpectralField(
        grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    )


def random_grid(grid: TorusGrid, rng: np.random.Generator) -> GridField:
    return GridField(
        grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    )
