"""Reference s-wave spectrum of the Rosen-Morse well, four parameter blocks.

Each block fixes (alpha, q, V1, V2, M); rows hold the tabulated energies for
n = 1..5 in descending order, four decimals, with absent roots omitted.
"""

from __future__ import annotations

from dataclasses import dataclass

from .potentials import RosenMorseWell, dimensional_numbers
from .spectrum import ScanConfig, find_bound_states

__all__ = ["TableBlock", "BLOCKS", "TABLE_TOL", "compute_row", "row_matches"]

TABLE_TOL = 5e-4


@dataclass(frozen=True)
class TableBlock:
    index: int
    alpha: float
    q: float
    V1: float
    V2: float
    M: float
    rows: dict

    def model(self) -> RosenMorseWell:
        return RosenMorseWell(self.V1, self.V2, self.q, self.alpha)


BLOCKS = (
    TableBlock(1, 1.0, 1.0, 1.0, -1.0, 4.0, {
        1: (1.8137, -1.9140, -3.3923, -3.9088),
        2: (-2.2117, -3.6791),
        3: (-0.6606, -3.3105),
        4: (0.8879, -2.7697),
        5: (1.8766, -1.9765),
    }),
    TableBlock(2, 1.0, 1.0, 2.0, -2.0, 5.0, {
        1: (0.9989, -3.7763, -4.7275, -4.9351),
        2: (-4.1746, -4.7795),
        3: (-3.3814, -4.5376),
        4: (-2.3989, -4.2008),
        5: (-1.3083, -3.7529),
    }),
    TableBlock(3, 0.5, 1.0, 1.0, -1.0, 4.0, {
        1: (1.9558, -3.5288, -3.8460, -3.9773),
        2: (1.9608, -2.5367, -3.5326, -3.9216),
        3: (1.2294, -0.5126, -3.0732, -3.8358),
        4: (-2.4823, -3.7191),
        5: (-1.7822, -3.5695),
    }),
    TableBlock(4, 1.0, 0.5, 1.0, -1.0, 4.0, {
        1: (1.5783, -3.2245, -3.6502, -3.9258),
        2: (1.9995, -1.5367, -2.9520, -3.7496),
        3: (-1.9529, -3.4736),
        4: (-0.7335, -3.0839),
        5: (0.5489, -2.5528),
    }),
)


def compute_row(block: TableBlock, n: int, scan: ScanConfig | None = None) -> list[float]:
    """All s-wave roots (both branches) for one block and n, descending."""
    states = find_bound_states(block.model(), n, dimensional_numbers(3, 0), (1, -1), block.M, scan)
    return sorted((b.E for b in states), reverse=True)


def row_matches(computed, tabulated, tol: float = TABLE_TOL) -> bool:
    """Same number of roots and each within ``tol`` after sorting."""
    if len(computed) != len(tabulated):
        return False
    a = sorted(computed, reverse=True)
    b = sorted(tabulated, reverse=True)
    return all(abs(x - y) < tol for x, y in zip(a, b))
