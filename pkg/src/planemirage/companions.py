"""Closed-form companion models: a radial compression map, a sinusoidal
strip profile with its geometric phase, and the grating deflection rule.

All pure real-valued functions; angles in radians, lengths in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, EvanescentOrderError, ValidationError


@dataclass(frozen=True)
class RadialTransform:
    """Piecewise-linear radial map compressing [0, R1*q] onto [0, R1].

    The inner region shrinks by 1/q; the annulus [R1*q, R2] stretches to
    [R1, R2] so the outer boundary stays fixed. Needs q > 1 and R1*q < R2.
    """

    r1: float
    r2: float
    q: float

    def __post_init__(self) -> None:
        r1 = float(self.r1)
        r2 = float(self.r2)
        q = float(self.q)
        for name, value in (("r1", r1), ("r2", r2), ("q", q)):
            if not (math.isfinite(value) and value > 0.0):
                raise ValidationError(f"{name} must be positive, got {value!r}")
        if not r2 > r1:
            raise ValidationError(f"need r2 > r1, got r1={r1} r2={r2}")
        if not q > 1.0:
            raise ValidationError(f"need q > 1, got {q}")
        if not r1 * q < r2:
            raise ValidationError(f"need r1*q < r2, got r1*q={r1 * q} r2={r2}")
        object.__setattr__(self, "r1", r1)
        object.__setattr__(self, "r2", r2)
        object.__setattr__(self, "q", q)

    @property
    def a(self) -> float:
        """Slope of the outer branch."""
        return (self.r2 - self.r1) / (self.r2 - self.r1 * self.q)

    @property
    def b(self) -> float:
        """Intercept of the outer branch."""
        return (1.0 - self.q) * self.r2 * self.r1 / (self.r2 - self.r1 * self.q)


@dataclass(frozen=True)
class StripProfile:
    """Sinusoidal strip of amplitude coefficient A and period P.

    sigma is the circular-polarization handedness (+1 or -1) that sets the
    sign of the geometric phase.
    """

    amplitude: float
    period: float
    sigma: int = 1

    def __post_init__(self) -> None:
        amplitude = float(self.amplitude)
        period = float(self.period)
        if not (math.isfinite(amplitude) and amplitude > 0.0):
            raise ValidationError(f"amplitude must be positive, got {amplitude!r}")
        if not (math.isfinite(period) and period > 0.0):
            raise ValidationError(f"period must be positive, got {period!r}")
        if self.sigma not in (1, -1):
            raise ValidationError(f"sigma must be +1 or -1, got {self.sigma!r}")
        object.__setattr__(self, "amplitude", amplitude)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "sigma", int(self.sigma))


def _check_radius(t: RadialTransform, name: str, r: float) -> float:
    r = float(r)
    if not (math.isfinite(r) and 0.0 <= r <= t.r2):
        raise DomainError(f"{name} must lie in [0, {t.r2}], got {r!r}")
    return r


def radial_forward(t: RadialTransform, r: float) -> float:
    """Map a physical radius to its compressed image r'.

    r/q on [0, R1*q], a*r + b beyond; continuous at R1*q, fixes R2.
    """
    r = _check_radius(t, "r", r)
    if r <= t.r1 * t.q:
        return r / t.q
    # a*r + b can land one ulp past the fixed rim; keep the image inside the disk
    return min(t.a * r + t.b, t.r2)


def radial_inverse(t: RadialTransform, r_prime: float) -> float:
    """Inverse map: q*r' on [0, R1], (r' - b)/a beyond."""
    r_prime = _check_radius(t, "r_prime", r_prime)
    if r_prime <= t.r1:
        return t.q * r_prime
    return min((r_prime - t.b) / t.a, t.r2)


def strip_height(p: StripProfile, x: float) -> float:
    """Height of the strip centerline: y = A*(P/2pi)*sin(2pi x/P)."""
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"x must be finite, got {x!r}")
    return p.amplitude * (p.period / (2.0 * math.pi)) * math.sin(2.0 * math.pi * x / p.period)


def pb_phase(p: StripProfile, x: float) -> float:
    """Geometric phase imparted at x: Phi = 2*sigma*arctan(A*cos(2pi x/P)).

    Bounded by 2*arctan(A) in magnitude; flips sign with sigma.
    """
    x = float(x)
    if not math.isfinite(x):
        raise ValidationError(f"x must be finite, got {x!r}")
    return 2.0 * p.sigma * math.atan(p.amplitude * math.cos(2.0 * math.pi * x / p.period))


def grating_angle(m: int, wavelength: float, period: float) -> float:
    """Deflection angle of diffraction order m: theta_m = arcsin(m*lambda/P).

    Orders with |m*lambda/P| > 1 are evanescent and raise.
    """
    if not isinstance(m, int):
        raise ValidationError(f"order must be an integer, got {m!r}")
    wavelength = float(wavelength)
    period = float(period)
    if not (math.isfinite(wavelength) and wavelength > 0.0):
        raise ValidationError(f"wavelength must be positive, got {wavelength!r}")
    if not (math.isfinite(period) and period > 0.0):
        raise ValidationError(f"period must be positive, got {period!r}")
    s = m * wavelength / period
    if abs(s) > 1.0:
        raise EvanescentOrderError(f"order {m} is evanescent: |m*lambda/P| = {abs(s)} > 1")
    return math.asin(s)
