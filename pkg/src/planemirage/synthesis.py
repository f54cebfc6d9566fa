"""Illusion synthesis: the sheet state that disguises one stack as another.

Given an actual environment and a target environment, find the metasurface
state for which an observer measuring the actual environment's total
reflection sees exactly the target's. Two placements:

  * Reflective: the sheet replaces the actual stack's termination; the
    unknown is the terminating reflection coefficient rho_4m, reported with
    its equivalent sheet impedance.
  * Transmissive: the sheet sits at z = 0 ahead of the actual stack; the
    unknown is the front reflection coefficient rho_1m, reported with the
    electric surface susceptibility chi_e that realizes it.

Each unknown enters the total reflection through a fractional-linear map,
so both syntheses are exact single-point inversions. Two independent code
paths compute each: a closed form assembled from four expanded chain
products, and an oracle that inverts the fractional-linear map built by
matrix multiplication. The quotient grouping of the four products matters;
see reflective_synthesis_products for the arrangement that survives the
substitution check (the tempting (A - B)/(C - D) grouping returns
rho_T / rho_4m instead, which evaluates to 1 under self-illusion).
"""

from __future__ import annotations

import cmath
import dataclasses
from dataclasses import dataclass
from enum import Enum

from .errors import DegenerateSynthesisError, ValidationError
from .gstc import (
    SheetImpedance,
    impedance_from_reflection,
    susceptibility_from_reflection,
)
from .wavecore import (
    PlaneWave,
    Sheet,
    Stack,
    TransferMatrix2,
    chain_reflection,
    chain_segments,
    segment_matrix,
    termination_reflection,
)

_DEGENERACY_RTOL = 1e-12


class Mode(Enum):
    REFLECTIVE = "reflective"
    TRANSMISSIVE = "transmissive"


class Realizability(Enum):
    PASSIVE = "passive"
    ACTIVE_REQUIRED = "active-required"


@dataclass(frozen=True)
class IllusionProblem:
    """An actual stack to disguise, a target stack to imitate, one wave.

    The closed forms expand a three-segment chain, so the actual stack must
    have exactly three layers; the target stack may be any valid stack.
    """

    actual: Stack
    target: Stack
    wave: PlaneWave
    mode: Mode

    def __post_init__(self) -> None:
        if not isinstance(self.mode, Mode):
            raise ValidationError(f"mode must be a Mode, got {self.mode!r}")
        if len(self.actual.layers) != 3:
            raise ValidationError(
                f"synthesis needs exactly 3 layers in the actual stack, got {len(self.actual.layers)}"
            )


@dataclass(frozen=True)
class SynthesisOutcome:
    """Synthesized sheet state at one (frequency, angle) point."""

    rho_required: complex
    realizability: Realizability
    theta: float
    frequency: float
    eta_required: SheetImpedance | None = None  # reflective mode
    chi_e_required: complex | None = None       # transmissive mode


@dataclass(frozen=True)
class ReflectiveProducts:
    """The four chain products of the reflective closed form.

    With e_ij the expanded entries of the actual three-segment chain and
    (u1, u2) the target chain's closure pair (so Gamma_i = u2/u1):

        A0 = e22*u1,  B0 = e12*u2,  C = e11*u2,  D = e21*u1

    The sheet value is rho_4m = (C - D)/(A0 - B0). The natural termination
    reflection rho_t of the actual stack is carried separately: the
    grouping (rho_t*(A0 - B0))/(C - D) looks symmetric but evaluates to
    rho_t/rho_4m, not rho_4m.
    """

    a0: complex
    b0: complex
    c: complex
    d: complex
    rho_t: complex


@dataclass(frozen=True)
class TransmissiveProducts:
    """The four chain products of the transmissive closed form.

    With Z1 the actual first-layer phase factor, (w1, w2) the closure pair
    of the actual chain's last two segments against its own termination,
    and (u1, u2) the target closure pair:

        a = Z1*w2*u2,  b = (1/Z1)*w1*u1,  c = Z1*w2*u1,  d = (1/Z1)*w1*u2

    The sheet value is rho_1m = (c - d)/(a - b); the grouping
    (a - b)/(c - d) is its reciprocal.
    """

    a: complex
    b: complex
    c: complex
    d: complex


def _require_mode(problem: IllusionProblem, mode: Mode) -> None:
    if problem.mode is not mode:
        raise ValidationError(f"problem mode is {problem.mode}, expected {mode}")


def _closure_pair(stack: Stack, wave: PlaneWave) -> tuple[complex, complex]:
    """(u1, u2) with Gamma = u2/u1, from prefactor-free segment matrices.

    Dropping the 1/tau prefactors rescales u1 and u2 by a common factor,
    which every quotient formed from them ignores.
    """
    m = TransferMatrix2.identity()
    for rho, _tau, z in chain_segments(stack, wave):
        m = m.matmul(TransferMatrix2(1.0 / z, rho * z, rho / z, z))
    rho_t = termination_reflection(stack, wave)
    return m.m11 + m.m12 * rho_t, m.m21 + m.m22 * rho_t


def _expanded_entries(
    r1: complex, z1: complex, r2: complex, z2: complex, r3: complex, z3: complex
) -> tuple[complex, complex, complex, complex]:
    """Entries of M1*M2*M3 written out as polynomials, no matrix products."""
    z1i = 1.0 / z1
    z2i = 1.0 / z2
    z3i = 1.0 / z3
    p11 = z1i * z2i + r1 * z1 * r2 * z2i
    p12 = z1i * r2 * z2 + r1 * z1 * z2
    p21 = r1 * z1i * z2i + z1 * r2 * z2i
    p22 = r1 * z1i * r2 * z2 + z1 * z2
    e11 = p11 * z3i + p12 * r3 * z3i
    e12 = p11 * r3 * z3 + p12 * z3
    e21 = p21 * z3i + p22 * r3 * z3i
    e22 = p21 * r3 * z3 + p22 * z3
    return e11, e12, e21, e22


def target_reflection(problem: IllusionProblem) -> complex:
    """Gamma_i, the total reflection the observer should see."""
    return chain_reflection(problem.target, problem.wave)


def reflective_synthesis_products(problem: IllusionProblem) -> ReflectiveProducts:
    """Assemble the reflective closed form's four products."""
    _require_mode(problem, Mode.REFLECTIVE)
    (r1, _, z1), (r2, _, z2), (r3, _, z3) = chain_segments(problem.actual, problem.wave)
    e11, e12, e21, e22 = _expanded_entries(r1, z1, r2, z2, r3, z3)
    u1, u2 = _closure_pair(problem.target, problem.wave)
    rho_t = termination_reflection(problem.actual, problem.wave)
    return ReflectiveProducts(
        a0=e22 * u1, b0=e12 * u2, c=e11 * u2, d=e21 * u1, rho_t=rho_t
    )


def reflective_synthesis_closed_form(problem: IllusionProblem) -> complex:
    """rho_4m from the four-product closed form.

    Substituting Sheet(rho_4m) as the actual stack's termination makes its
    total reflection equal Gamma_i.
    """
    p = reflective_synthesis_products(problem)
    den = p.a0 - p.b0
    if abs(den) <= _DEGENERACY_RTOL * max(abs(p.a0), abs(p.b0)):
        raise DegenerateSynthesisError(
            "no terminating sheet produces the target reflection at this point"
        )
    return (p.c - p.d) / den


def reflective_synthesis_oracle(problem: IllusionProblem) -> complex:
    """rho_4m by inverting the fractional-linear map Gamma(rho) directly.

    Gamma(rho) = (m21 + m22*rho)/(m11 + m12*rho) with M the actual chain's
    full transfer matrix, so rho_4m = (Gamma_i*m11 - m21)/(m22 - Gamma_i*m12).
    Independent of the closed form: matrix products instead of expanded
    polynomials, prefactors kept.
    """
    _require_mode(problem, Mode.REFLECTIVE)
    m = TransferMatrix2.identity()
    for rho, tau, z in chain_segments(problem.actual, problem.wave):
        m = m.matmul(segment_matrix(rho, tau, z))
    g_i = target_reflection(problem)
    den = m.m22 - g_i * m.m12
    if abs(den) <= _DEGENERACY_RTOL * max(abs(m.m22), abs(g_i * m.m12)):
        raise DegenerateSynthesisError(
            "no terminating sheet produces the target reflection at this point"
        )
    return (g_i * m.m11 - m.m21) / den


def sheet_terminated_reflection(problem: IllusionProblem, rho: complex) -> complex:
    """Total reflection of the actual stack with its termination replaced by Sheet(rho)."""
    substituted = dataclasses.replace(problem.actual, termination=Sheet(rho))
    return chain_reflection(substituted, problem.wave)


def transmissive_synthesis_products(problem: IllusionProblem) -> TransmissiveProducts:
    """Assemble the transmissive closed form's four products."""
    _require_mode(problem, Mode.TRANSMISSIVE)
    segments = chain_segments(problem.actual, problem.wave)
    (_r1, _t1, z1), (r2, _, z2), (r3, _, z3) = segments
    z2i = 1.0 / z2
    z3i = 1.0 / z3
    q11 = z2i * z3i + r2 * z2 * r3 * z3i
    q12 = z2i * r3 * z3 + r2 * z2 * z3
    q21 = r2 * z2i * z3i + z2 * r3 * z3i
    q22 = r2 * z2i * r3 * z3 + z2 * z3
    rho_t = termination_reflection(problem.actual, problem.wave)
    w1 = q11 + q12 * rho_t
    w2 = q21 + q22 * rho_t
    u1, u2 = _closure_pair(problem.target, problem.wave)
    z1i = 1.0 / z1
    return TransmissiveProducts(
        a=z1 * w2 * u2, b=z1i * w1 * u1, c=z1 * w2 * u1, d=z1i * w1 * u2
    )


def transmissive_synthesis(problem: IllusionProblem) -> tuple[complex, complex]:
    """(rho_1m, chi_e): the front-sheet reflection and its susceptibility.

    rho_1m replaces the actual first interface's reflection coefficient;
    chi_e is the electric-only sheet (chi_m = 0) whose reflection is rho_1m
    at the incidence angle. rho_1m = 1 admits no finite chi_e.
    """
    p = transmissive_synthesis_products(problem)
    den = p.a - p.b
    if abs(den) <= _DEGENERACY_RTOL * max(abs(p.a), abs(p.b)):
        raise DegenerateSynthesisError(
            "no front sheet produces the target reflection at this point"
        )
    rho_1m = (p.c - p.d) / den
    if abs(1.0 - rho_1m) <= _DEGENERACY_RTOL * max(1.0, abs(rho_1m)):
        raise DegenerateSynthesisError(
            "required front reflection is 1: no finite susceptibility realizes it"
        )
    chi = susceptibility_from_reflection(
        rho_1m, problem.wave.k0, cmath.cos(problem.wave.theta1)
    )
    return rho_1m, chi.chi_e


def transmissive_synthesis_oracle(problem: IllusionProblem) -> complex:
    """rho_1m by inverting the front-interface fractional-linear map.

    With (w1, w2) the with-prefactor closure of segments 2..3 against the
    actual termination and Z1 the first-layer phase,

        Gamma(r) = (r*w1/Z1 + Z1*w2) / (w1/Z1 + r*Z1*w2)

    so rho_1m = (Gamma_i*w1/Z1 - Z1*w2) / (w1/Z1 - Gamma_i*Z1*w2).
    """
    _require_mode(problem, Mode.TRANSMISSIVE)
    segments = chain_segments(problem.actual, problem.wave)
    z1 = segments[0][2]
    m = TransferMatrix2.identity()
    for rho, tau, z in segments[1:]:
        m = m.matmul(segment_matrix(rho, tau, z))
    rho_t = termination_reflection(problem.actual, problem.wave)
    w1 = m.m11 + m.m12 * rho_t
    w2 = m.m21 + m.m22 * rho_t
    g_i = target_reflection(problem)
    num = g_i * w1 / z1 - z1 * w2
    den = w1 / z1 - g_i * z1 * w2
    if abs(den) <= _DEGENERACY_RTOL * max(abs(w1 / z1), abs(g_i * z1 * w2)):
        raise DegenerateSynthesisError(
            "no front sheet produces the target reflection at this point"
        )
    return num / den


def front_sheet_reflection(problem: IllusionProblem, rho_1: complex) -> complex:
    """Total reflection of the actual stack with its first interface replaced.

    The replacement keeps the pairing tau = 1 + rho for the modified
    interface; the tau prefactors cancel in the total reflection anyway.
    """
    segments = chain_segments(problem.actual, problem.wave)
    m = TransferMatrix2.identity()
    first = True
    for rho, tau, z in segments:
        if first:
            rho, tau = rho_1, 1.0 + rho_1
            first = False
        m = m.matmul(segment_matrix(rho, tau, z))
    rho_t = termination_reflection(problem.actual, problem.wave)
    den = m.m11 + m.m12 * rho_t
    if abs(den) <= _DEGENERACY_RTOL * max(abs(m.m11), abs(m.m12 * rho_t)):
        raise DegenerateSynthesisError("substituted chain is resonant at this point")
    return (m.m21 + m.m22 * rho_t) / den


def classify_realizability(rho: complex) -> Realizability:
    """Passive iff |rho| <= 1 and Re(eta) >= 0; otherwise gain is needed.

    The two conditions agree analytically (the unit disk maps onto the
    right impedance half-plane); checking both keeps the classification
    conservative under rounding. The |rho| = 1 boundary is passive.
    """
    rho = complex(rho)
    if abs(rho) > 1.0:
        return Realizability.ACTIVE_REQUIRED
    eta = impedance_from_reflection(rho)
    if eta.eta.real >= 0.0:
        return Realizability.PASSIVE
    return Realizability.ACTIVE_REQUIRED


def synthesize(problem: IllusionProblem) -> SynthesisOutcome:
    """Solve one illusion problem; dispatches on the problem's mode."""
    wave = problem.wave
    if problem.mode is Mode.REFLECTIVE:
        rho = reflective_synthesis_closed_form(problem)
        return SynthesisOutcome(
            rho_required=rho,
            realizability=classify_realizability(rho),
            theta=wave.theta1,
            frequency=wave.frequency,
            eta_required=impedance_from_reflection(rho),
        )
    rho, chi_e = transmissive_synthesis(problem)
    return SynthesisOutcome(
        rho_required=rho,
        realizability=classify_realizability(rho),
        theta=wave.theta1,
        frequency=wave.frequency,
        chi_e_required=chi_e,
    )
