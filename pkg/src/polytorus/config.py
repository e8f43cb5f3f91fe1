"""Runtime configuration: grid sizes, tolerances and seeds.

A config file is a flat key=value text file; '#' starts a comment. Keys
match the field names below. POLYTORUS_THREADS caps worker parallelism.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Config:
    grid_rtol: float = 1e-8
    grid_start_n: int = 16
    grid_max_points: int = 2**24
    coeff_purge_tol: float = 1e-12
    mc_confidence_z: float = 2.5758293035489004  # two-sided 99%
    mc_default_samples: int = 400_000
    bessel_tol: float = 1e-6
    bessel_zeros: int = 2000
    lift_grid_n_d2: int = 256
    lift_grid_n_d3: int = 96
    lift_max_deg: int = 6
    dual_restarts: int = 8
    default_seed: int = 1

    def lift_grid_n(self, d: int) -> int:
        if d <= 2:
            return self.lift_grid_n_d2
        return self.lift_grid_n_d3


DEFAULT = Config()


def threads() -> int:
    raw = os.environ.get("POLYTORUS_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return os.cpu_count() or 1


def load_config(path: str, base: Config = DEFAULT) -> Config:
    """Parse a flat key=value file into a Config on top of ``base``."""
    types = {f.name: f.type for f in fields(Config)}
    updates = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {line!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in types:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
            kind = str(types[key])
            updates[key] = float(value) if "float" in kind else int(value)
    return replace(base, **updates)
