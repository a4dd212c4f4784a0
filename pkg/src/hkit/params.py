"""Physical constants shared across the operator and spectrum modules."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class UnitParams:
    """Rational constants of the problem (hbar, mass, squared charge)."""
    hbar: Fraction = Fraction(1)
    mu0: Fraction = Fraction(1)
    e2: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        for name in ("hbar", "mu0", "e2"):
            value = getattr(self, name)
            if not isinstance(value, Fraction):
                object.__setattr__(self, name, Fraction(value))
        if self.hbar <= 0 or self.mu0 <= 0 or self.e2 <= 0:
            raise ValueError("hbar, mu0 and e2 must be positive")
