"""Working unit constants.

Atomic-style conventions: hbar, the elementary charge and the electron
mass are all 1 by default, and the speed of light is the inverse
fine-structure constant.  Every physics routine threads a ``Units``
instance so alternative conventions stay a one-line change.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

SPEED_OF_LIGHT = 137.035999


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    charge: float = 1.0
    electron_mass: float = 1.0
    light_speed: float = SPEED_OF_LIGHT

    def __post_init__(self):
        for name in ("hbar", "charge", "electron_mass", "light_speed"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value}")


ATOMIC = Units()
