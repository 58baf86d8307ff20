"""Flat key = value experiment configuration.

Recognized keys (exactly): dim, power, sign, s, box_length, points, dt,
t_end, sample_every, N_list, sigma_list, lambda, a, seed, radius_R.
Lists are comma separated.  radius_R <= 0 requests the runtime default of
twice the initial Sobolev norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..functionals import EquationParams
from ..grid import BoxGrid
from ..integrator import SolverConfig

CONFIG_KEYS = (
    "dim",
    "power",
    "sign",
    "s",
    "box_length",
    "points",
    "dt",
    "t_end",
    "sample_every",
    "N_list",
    "sigma_list",
    "lambda",
    "a",
    "seed",
    "radius_R",
)

_DEFAULTS = {
    "sample_every": "1",
    "N_list": "8,16,32,64",
    "sigma_list": "0.01",
    "lambda": "2",
    "a": "2",
    "seed": "0",
    "radius_R": "0",
}


@dataclass
class ExperimentConfig:
    """Validated experiment parameters; `lam` holds the `lambda` key."""

    params: EquationParams
    s: float
    grid: BoxGrid
    solver: SolverConfig
    cutoff_list: list[float]
    sigma_list: list[float]
    lam: float
    a: float
    seed: int
    radius_R: float
    output_path: str = ""
    raw: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.cutoff_list:
            raise ValueError("N_list must be nonempty")
        if not self.sigma_list:
            raise ValueError("sigma_list must be nonempty")
        if not 0.0 < self.s <= 1.0:
            raise ValueError(f"s must lie in (0, 1], got {self.s}")
        if self.a * (1.0 - self.s) >= 1.0:
            raise ValueError(
                f"a (1 - s) must be < 1 so the cutoff grows slower than 1/sigma**(1/(1-s)); "
                f"got a = {self.a}, s = {self.s}"
            )
        if not self.lam >= 1.0:
            raise ValueError(f"lambda must be >= 1, got {self.lam}")

    def manifest(self) -> dict[str, str]:
        """Exact key = value pairs reproducing this configuration."""
        out = {key: self.raw[key] for key in CONFIG_KEYS}
        return out


def _parse_floats(text: str) -> list[float]:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def parse_config(text: str) -> ExperimentConfig:
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ValueError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        if key not in CONFIG_KEYS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value.strip()

    for key in ("dim", "power", "sign", "s", "box_length", "points", "dt", "t_end"):
        if key not in values:
            raise ValueError(f"missing required key {key!r}")
    merged = dict(_DEFAULTS)
    merged.update(values)

    params = EquationParams(int(merged["dim"]), float(merged["power"]), merged["sign"])
    grid = BoxGrid(params.dim, float(merged["box_length"]), int(merged["points"]))
    solver = SolverConfig(
        dt=float(merged["dt"]),
        t_end=float(merged["t_end"]),
        sample_every=int(merged["sample_every"]),
    )
    return ExperimentConfig(
        params=params,
        s=float(merged["s"]),
        grid=grid,
        solver=solver,
        cutoff_list=_parse_floats(merged["N_list"]),
        sigma_list=_parse_floats(merged["sigma_list"]),
        lam=float(merged["lambda"]),
        a=float(merged["a"]),
        seed=int(merged["seed"]),
        radius_R=float(merged["radius_R"]),
        raw=merged,
    )


def parse_config_file(path) -> ExperimentConfig:
    with open(path) as fh:
        return parse_config(fh.read())
