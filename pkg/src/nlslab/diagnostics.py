"""Per-sample diagnostics row shared by the integrator and the harness."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields


@dataclass
class DiagnosticsRecord:
    """One sampled time row of an evolution.

    Smoothed columns refer to the multiplier-filtered field; optional columns
    stay None when a run does not compute them.
    """

    t: float
    mass: float
    hamiltonian: float
    lyapunov: float
    hamiltonian_smoothed: float | None = None
    lyapunov_smoothed: float | None = None
    sobolev_s: float | None = None
    cylinder_distance: float | None = None
    commutator_residual: float | None = None
    tail_fraction: float = 0.0

    def finite(self) -> bool:
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and not math.isfinite(v):
                return False
        return True


CSV_COLUMNS = [f.name for f in fields(DiagnosticsRecord)]
