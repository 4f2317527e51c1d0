"""Coefficient tables shared by the exact and approximate paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .algebra import Context, Su2Context

METHODS = ("exact", "sha_full", "sha_simplified")
CONDON_SHORTLEY = "condon_shortley"
# su(1,1) tables hold (-1)^(N+m) times the coupling coefficient
PSI_PHASE = "psi_phase"


def phase_note_for(ctx: Context) -> str:
    return CONDON_SHORTLEY if isinstance(ctx, Su2Context) else PSI_PHASE


@dataclass(frozen=True)
class CoeffTable:
    """Coupling coefficients for fixed n as a function of the grid variable m."""

    context: Context
    n: int
    method: str
    values: np.ndarray = field(repr=False)
    phase_note: str
    boundary_spill: Optional[float] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if len(self.values) != self.context.dim:
            raise ValueError(
                f"table has {len(self.values)} values, grid of {self.context.label} has {self.context.dim}"
            )

    @property
    def grid(self) -> np.ndarray:
        return self.context.grid

    def at(self, m: float) -> float:
        """Value at grid point m (zero off the grid)."""
        i = m - self.context.lo
        if i != int(i) or not 0 <= i < self.context.dim:
            return 0.0
        return float(self.values[int(i)])
