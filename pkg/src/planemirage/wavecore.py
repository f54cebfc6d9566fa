"""Plane-wave propagation through a 1D layered stack.

Conventions (fixed across the toolkit):
  - time factor e^{+j w t}; passive lossy media carry Im(eps_r) <= 0
  - principal complex square roots; per-layer cos(theta) keeps Re >= 0,
    and the evanescent branch is chosen to decay toward the termination
  - reflection coefficients are ratios of transverse E-field amplitudes,
    referenced at the front face of the first layer (z = 0)
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    DegenerateInterfaceError,
    InvalidMediumError,
    NonInvertibleSegmentError,
    ResonantSingularityError,
    ValidationError,
)

C0 = 299792458.0            # vacuum speed of light, m/s
ETA0 = 376.730313668        # vacuum wave impedance, ohms

_DENOM_FLOOR = 1e-300


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def _require_finite(name: str, z: complex) -> None:
    if not _finite(z):
        raise ValidationError(f"{name} must be finite, got {z!r}")


@dataclass(frozen=True)
class Medium:
    """Homogeneous medium given by relative permittivity and permeability."""

    eps_r: complex
    mu_r: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        eps = complex(self.eps_r)
        mu = complex(self.mu_r)
        if not (_finite(eps) and _finite(mu)):
            raise InvalidMediumError(f"non-finite medium parameters: eps_r={eps!r} mu_r={mu!r}")
        if eps == 0:
            raise InvalidMediumError("eps_r = 0 has no finite wave impedance")
        object.__setattr__(self, "eps_r", eps)
        object.__setattr__(self, "mu_r", mu)


AIR = Medium(1.0 + 0.0j)


@dataclass(frozen=True)
class Layer:
    medium: Medium
    thickness: float  # meters

    def __post_init__(self) -> None:
        t = float(self.thickness)
        if not (math.isfinite(t) and t >= 0.0):
            raise ValidationError(f"layer thickness must be finite and >= 0, got {t!r}")
        object.__setattr__(self, "thickness", t)


@dataclass(frozen=True)
class Pec:
    """Perfectly conducting wall."""


@dataclass(frozen=True)
class Open:
    """Semi-infinite half-space behind the last layer."""

    half_space: Medium = AIR


@dataclass(frozen=True)
class Sheet:
    """Engineered boundary with a prescribed reflection coefficient."""

    rho: complex

    def __post_init__(self) -> None:
        r = complex(self.rho)
        if not _finite(r):
            raise ValidationError(f"sheet reflection must be finite, got {r!r}")
        object.__setattr__(self, "rho", r)


Termination = Pec | Open | Sheet


@dataclass(frozen=True)
class Stack:
    """Ordered slabs in front of a termination, met from incident_medium."""

    incident_medium: Medium
    layers: tuple[Layer, ...]
    termination: Termination

    def __post_init__(self) -> None:
        layers = tuple(self.layers)
        if not layers:
            raise ValidationError("a stack needs at least one layer")
        if not isinstance(self.termination, (Pec, Open, Sheet)):
            raise ValidationError(f"unknown termination: {self.termination!r}")
        object.__setattr__(self, "layers", layers)


@dataclass(frozen=True)
class PlaneWave:
    frequency: float          # Hz
    theta1: float = 0.0       # incidence angle, radians
    polarization: str = "TM"

    def __post_init__(self) -> None:
        f = float(self.frequency)
        th = float(self.theta1)
        if not (math.isfinite(f) and f > 0.0):
            raise ValidationError(f"frequency must be positive, got {f!r}")
        if not (0.0 <= th < math.pi / 2.0):
            raise ValidationError(f"incidence angle must satisfy 0 <= theta < pi/2, got {th!r}")
        if self.polarization != "TM":
            raise ValidationError(f"only TM polarization is supported, got {self.polarization!r}")
        object.__setattr__(self, "frequency", f)
        object.__setattr__(self, "theta1", th)

    @property
    def k0(self) -> float:
        """Vacuum wavenumber 2*pi*f/c, rad/m."""
        return 2.0 * math.pi * self.frequency / C0


@dataclass(frozen=True)
class LayerWaveState:
    """Wave descriptors inside one region: wavenumber, angle, impedance."""

    k_n: complex            # rad/m
    theta_n: complex        # radians
    eta_n: complex          # ohms
    cos_theta_n: complex


@dataclass(frozen=True)
class TransferMatrix2:
    """2x2 complex matrix relating forward/backward amplitudes."""

    m11: complex
    m12: complex
    m21: complex
    m22: complex

    @staticmethod
    def identity() -> TransferMatrix2:
        return TransferMatrix2(1.0, 0.0, 0.0, 1.0)

    def matmul(self, other: TransferMatrix2) -> TransferMatrix2:
        return TransferMatrix2(
            self.m11 * other.m11 + self.m12 * other.m21,
            self.m11 * other.m12 + self.m12 * other.m22,
            self.m21 * other.m11 + self.m22 * other.m21,
            self.m21 * other.m12 + self.m22 * other.m22,
        )

    def determinant(self) -> complex:
        return self.m11 * self.m22 - self.m12 * self.m21


def incident_wave_state(medium: Medium, wave: PlaneWave) -> LayerWaveState:
    """State of the incoming wave in the incident half-space."""
    k = wave.k0 * cmath.sqrt(medium.eps_r * medium.mu_r)
    eta = ETA0 * cmath.sqrt(medium.mu_r / medium.eps_r)
    theta = complex(wave.theta1)
    return LayerWaveState(k_n=k, theta_n=theta, eta_n=eta, cos_theta_n=cmath.cos(theta))


def layer_wave_state(medium: Medium, wave: PlaneWave, incident_state: LayerWaveState) -> LayerWaveState:
    """Refract the wave from incident_state's region into medium.

    The transverse wavenumber k*sin(theta) is conserved across the interface.
    """
    k = wave.k0 * cmath.sqrt(medium.eps_r * medium.mu_r)
    eta = ETA0 * cmath.sqrt(medium.mu_r / medium.eps_r)
    sin_t = incident_state.k_n * cmath.sin(incident_state.theta_n) / k
    cos_t = cmath.sqrt(1.0 - sin_t * sin_t)
    # Principal branch keeps Re(cos) >= 0 except across the evanescent cut;
    # on the Re = 0 branch pick the solution decaying toward the termination.
    if cos_t.real < 0.0 or (cos_t.real == 0.0 and (k * cos_t).imag > 0.0):
        cos_t = -cos_t
    return LayerWaveState(k_n=k, theta_n=cmath.asin(sin_t), eta_n=eta, cos_theta_n=cos_t)


def interface_coefficients(state_n: LayerWaveState, state_np1: LayerWaveState) -> tuple[complex, complex]:
    """Local reflection and transmission coefficients at one interface.

    rho = (n2 - n1)/(n2 + n1) and tau = 2*n2/(n2 + n1) with n_i = eta_i*cos(theta_i),
    so 1 + rho = tau holds identically.
    """
    n1 = state_n.eta_n * state_n.cos_theta_n
    n2 = state_np1.eta_n * state_np1.cos_theta_n
    den = n2 + n1
    if abs(den) < _DENOM_FLOOR:
        raise DegenerateInterfaceError(f"interface denominator vanished: {den!r}")
    rho = (n2 - n1) / den
    tau = 2.0 * n2 / den
    assert abs(1.0 + rho - tau) <= 1e-12 * max(1.0, abs(tau))
    return rho, tau


def propagation_phase(state_n: LayerWaveState, thickness: float) -> complex:
    """One-way phase/decay factor Z = e^{-j k l cos(theta)} across a layer."""
    if not (math.isfinite(thickness) and thickness >= 0.0):
        raise ValidationError(f"thickness must be finite and >= 0, got {thickness!r}")
    return cmath.exp(-1j * state_n.k_n * thickness * state_n.cos_theta_n)


def segment_matrix(rho_n: complex, tau_n: complex, z_n: complex) -> TransferMatrix2:
    """Transfer matrix of one interface-plus-layer segment.

    M = (1/tau) [[1/Z, rho*Z], [rho/Z, Z]]; det(M) = (1 - rho^2)/tau^2.
    """
    if tau_n == 0:
        raise NonInvertibleSegmentError("tau = 0: segment matrix undefined")
    zi = 1.0 / z_n
    return TransferMatrix2(
        zi / tau_n,
        rho_n * z_n / tau_n,
        rho_n * zi / tau_n,
        z_n / tau_n,
    )


def chain_segments(stack: Stack, wave: PlaneWave) -> tuple[tuple[complex, complex, complex], ...]:
    """Per-layer (rho_n, tau_n, Z_n) triples, interfaces numbered from the incident side."""
    out = []
    state = incident_wave_state(stack.incident_medium, wave)
    for layer in stack.layers:
        nxt = layer_wave_state(layer.medium, wave, state)
        rho, tau = interface_coefficients(state, nxt)
        z = propagation_phase(nxt, layer.thickness)
        out.append((rho, tau, z))
        state = nxt
    return tuple(out)


def last_layer_state(stack: Stack, wave: PlaneWave) -> LayerWaveState:
    state = incident_wave_state(stack.incident_medium, wave)
    for layer in stack.layers:
        state = layer_wave_state(layer.medium, wave, state)
    return state


def termination_reflection(stack: Stack, wave: PlaneWave) -> complex:
    """Reflection of the termination as seen from inside the last layer.

    PEC walls force the total transverse E field to zero, so rho = -1.
    An open half-space reflects with the local interface coefficient
    (zero when it matches the last layer); a sheet carries its own value.
    """
    term = stack.termination
    if isinstance(term, Pec):
        return -1.0 + 0.0j
    if isinstance(term, Sheet):
        return term.rho
    last = last_layer_state(stack, wave)
    half = layer_wave_state(term.half_space, wave, last)
    rho, _ = interface_coefficients(last, half)
    return rho


def chain_reflection(stack: Stack, wave: PlaneWave) -> complex:
    """Total reflection Gamma of the stack at z = 0.

    Builds M = M_1 * ... * M_N and closes the chain with the termination
    reflection rho_T: Gamma = (m21 + m22*rho_T) / (m11 + m12*rho_T).
    """
    m = TransferMatrix2.identity()
    for rho, tau, z in chain_segments(stack, wave):
        m = m.matmul(segment_matrix(rho, tau, z))
    rho_t = termination_reflection(stack, wave)
    den = m.m11 + m.m12 * rho_t
    if abs(den) < _DENOM_FLOOR:
        raise ResonantSingularityError(f"total-reflection denominator vanished at f={wave.frequency!r} theta={wave.theta1!r}")
    return (m.m21 + m.m22 * rho_t) / den
