"""Illusion synthesis: closed forms, oracles, substitution, realizability."""

import cmath
import math
import random

import pytest

from planemirage.cli import builtin_scenario
from planemirage.errors import DegenerateSynthesisError, OpenCircuitError, ValidationError
from planemirage.synthesis import (
    IllusionProblem,
    Mode,
    Realizability,
    classify_realizability,
    front_sheet_reflection,
    reflective_synthesis_closed_form,
    reflective_synthesis_oracle,
    reflective_synthesis_products,
    sheet_terminated_reflection,
    synthesize,
    target_reflection,
    transmissive_synthesis,
    transmissive_synthesis_oracle,
    transmissive_synthesis_products,
)
from planemirage.wavecore import (
    AIR,
    Layer,
    Medium,
    Pec,
    PlaneWave,
    Sheet,
    Stack,
    chain_reflection,
    chain_segments,
    incident_wave_state,
    interface_coefficients,
    layer_wave_state,
    segment_matrix,
    termination_reflection,
    TransferMatrix2,
)

from oracles import random_lossy_stack, random_three_layer_stack, random_wave

# frozen at 50 digits by tools/freeze_reference_values.py
GAMMA_ACTUAL_10GHZ_NORMAL = complex(-0.74501061868011169, -0.16700707092342785)
GAMMA_TARGET_10GHZ_NORMAL = complex(-0.32095773836347117, 0.10440953783442074)
RHO_4M_10GHZ_NORMAL = complex(-0.24331638725860397, 0.11992556356390652)
ETA_M_NORM_10GHZ_NORMAL = complex(0.59377287388674777, 0.15372926155599696)
RHO_1M_10GHZ_NORMAL = complex(0.58164870901283938, 0.34615834057534579)
CHI_E_10GHZ_NORMAL = complex(0.011203512955554583, -0.0039973679703352881)


def _builtin_problem(mode, frequency=10e9, theta=0.0):
    scenario = builtin_scenario()
    wave = PlaneWave(frequency, theta)
    return IllusionProblem(scenario.actual, scenario.target, wave, mode)


def test_frozen_reflective_point():
    problem = _builtin_problem(Mode.REFLECTIVE)
    assert abs(chain_reflection(problem.actual, problem.wave) - GAMMA_ACTUAL_10GHZ_NORMAL) < 1e-13
    assert abs(target_reflection(problem) - GAMMA_TARGET_10GHZ_NORMAL) < 1e-13
    rho = reflective_synthesis_closed_form(problem)
    assert abs(rho - RHO_4M_10GHZ_NORMAL) < 1e-13
    outcome = synthesize(problem)
    assert abs(outcome.rho_required - rho) == 0.0
    assert abs(outcome.eta_required.eta_normalized - ETA_M_NORM_10GHZ_NORMAL) < 1e-13
    assert outcome.realizability is Realizability.PASSIVE
    assert outcome.chi_e_required is None
    assert outcome.frequency == 10e9
    assert outcome.theta == 0.0


def test_frozen_transmissive_point():
    problem = _builtin_problem(Mode.TRANSMISSIVE)
    rho_1m, chi_e = transmissive_synthesis(problem)
    assert abs(rho_1m - RHO_1M_10GHZ_NORMAL) < 1e-13
    assert abs(chi_e - CHI_E_10GHZ_NORMAL) < 1e-14
    outcome = synthesize(problem)
    assert outcome.eta_required is None
    assert abs(outcome.chi_e_required - chi_e) == 0.0


def test_closed_form_matches_oracle_reflective():
    rng = random.Random(2001)
    for _ in range(100):
        problem = IllusionProblem(
            random_three_layer_stack(rng), random_lossy_stack(rng), random_wave(rng), Mode.REFLECTIVE
        )
        closed = reflective_synthesis_closed_form(problem)
        oracle = reflective_synthesis_oracle(problem)
        assert abs(closed - oracle) < 1e-9 * max(1.0, abs(oracle))


def test_closed_form_matches_oracle_transmissive():
    rng = random.Random(2002)
    for _ in range(100):
        problem = IllusionProblem(
            random_three_layer_stack(rng), random_lossy_stack(rng), random_wave(rng), Mode.TRANSMISSIVE
        )
        closed, _ = transmissive_synthesis(problem)
        oracle = transmissive_synthesis_oracle(problem)
        assert abs(closed - oracle) < 1e-9 * max(1.0, abs(oracle))


def test_substitution_reproduces_target_reflective():
    for theta_deg in (0.0, 22.5, 60.0):
        problem = _builtin_problem(Mode.REFLECTIVE, frequency=11e9, theta=math.radians(theta_deg))
        rho = reflective_synthesis_closed_form(problem)
        assert abs(sheet_terminated_reflection(problem, rho) - target_reflection(problem)) < 1e-12


def test_substitution_reproduces_target_transmissive():
    for theta_deg in (0.0, 22.5, 60.0):
        problem = _builtin_problem(Mode.TRANSMISSIVE, frequency=11e9, theta=math.radians(theta_deg))
        rho, _ = transmissive_synthesis(problem)
        assert abs(front_sheet_reflection(problem, rho) - target_reflection(problem)) < 1e-12


def test_self_illusion_reflective_returns_the_actual_termination():
    scenario = builtin_scenario()
    wave = PlaneWave(10.7e9, math.radians(33.5))
    # disguising a stack as itself asks for its own termination back
    problem = IllusionProblem(scenario.actual, scenario.actual, wave, Mode.REFLECTIVE)
    assert abs(reflective_synthesis_closed_form(problem) - (-1.0)) < 1e-12
    sheet_stack = Stack(AIR, scenario.actual.layers, Sheet(0.3 - 0.2j))
    problem = IllusionProblem(sheet_stack, sheet_stack, wave, Mode.REFLECTIVE)
    assert abs(reflective_synthesis_closed_form(problem) - (0.3 - 0.2j)) < 1e-12


def test_self_illusion_transmissive_returns_the_first_interface():
    wave = PlaneWave(9.3e9, math.radians(18.0))
    stack = Stack(
        AIR,
        (Layer(Medium(3.9 - 0.08j), 0.060), Layer(AIR, 0.120), Layer(Medium(2.1 - 0.0006j), 0.040)),
        Pec(),
    )
    problem = IllusionProblem(stack, stack, wave, Mode.TRANSMISSIVE)
    rho_1m, _ = transmissive_synthesis(problem)
    inc = incident_wave_state(AIR, wave)
    first = layer_wave_state(stack.layers[0].medium, wave, inc)
    rho_1, _ = interface_coefficients(inc, first)
    assert abs(rho_1m - rho_1) < 1e-12
    # air-fronted actual: the natural first interface is transparent
    scenario = builtin_scenario()
    problem = IllusionProblem(scenario.actual, scenario.actual, wave, Mode.TRANSMISSIVE)
    rho_1m, chi_e = transmissive_synthesis(problem)
    assert abs(rho_1m) < 1e-12
    assert abs(chi_e) < 1e-12


def test_the_tempting_grouping_is_the_reciprocal():
    # (rho_t*(A0 - B0))/(C - D) evaluates to rho_t/rho_4m, not rho_4m
    problem = _builtin_problem(Mode.REFLECTIVE, frequency=11.3e9, theta=math.radians(41.0))
    p = reflective_synthesis_products(problem)
    rho_4m = reflective_synthesis_closed_form(problem)
    tempting = p.rho_t * (p.a0 - p.b0) / (p.c - p.d)
    assert abs(tempting - p.rho_t / rho_4m) < 1e-12 * abs(tempting)
    assert abs(tempting - rho_4m) > 1e-2  # visibly not the answer here

    scenario = builtin_scenario()
    self_problem = IllusionProblem(scenario.actual, scenario.actual, problem.wave, Mode.REFLECTIVE)
    sp = reflective_synthesis_products(self_problem)
    self_tempting = sp.rho_t * (sp.a0 - sp.b0) / (sp.c - sp.d)
    assert abs(self_tempting - 1.0) < 1e-12  # the self-illusion blind spot

    t_problem = _builtin_problem(Mode.TRANSMISSIVE, frequency=11.3e9, theta=math.radians(41.0))
    tp = transmissive_synthesis_products(t_problem)
    rho_1m, _ = transmissive_synthesis(t_problem)
    t_tempting = (tp.a - tp.b) / (tp.c - tp.d)
    assert abs(t_tempting - 1.0 / rho_1m) < 1e-12 * abs(t_tempting)


def test_identity_chain_synthesis_is_the_target_reflection():
    # three zero-thickness air layers: the chain matrix is the identity
    actual = Stack(AIR, (Layer(AIR, 0.0), Layer(AIR, 0.0), Layer(AIR, 0.0)), Pec())
    target = Stack(AIR, (Layer(Medium(3.9 - 0.08j), 0.060),), Pec())
    wave = PlaneWave(10e9, math.radians(12.0))
    problem = IllusionProblem(actual, target, wave, Mode.REFLECTIVE)
    g_i = target_reflection(problem)
    assert abs(reflective_synthesis_closed_form(problem) - g_i) < 1e-14
    assert abs(reflective_synthesis_oracle(problem) - g_i) < 1e-14


def _unreachable_target(actual, wave, rho_probe):
    """Single air layer + sheet tuned so the target reflection is Gamma(rho_probe)->infinity image."""
    thickness = 0.015
    shell = Stack(AIR, (Layer(AIR, thickness),), Sheet(0j))
    z = chain_segments(shell, wave)[0][2]
    m = TransferMatrix2.identity()
    for rho, tau, zz in chain_segments(actual, wave):
        m = m.matmul(segment_matrix(rho, tau, zz))
    return Stack(AIR, (Layer(AIR, thickness),), Sheet(rho_probe(m) / (z * z)))


def test_degenerate_reflective_target_raises():
    scenario = builtin_scenario()
    wave = PlaneWave(10e9, 0.0)
    # a target reflection equal to m22/m12 is the image of rho -> infinity
    target = _unreachable_target(scenario.actual, wave, lambda m: m.m22 / m.m12)
    problem = IllusionProblem(scenario.actual, target, wave, Mode.REFLECTIVE)
    with pytest.raises(DegenerateSynthesisError):
        reflective_synthesis_closed_form(problem)
    with pytest.raises(DegenerateSynthesisError):
        reflective_synthesis_oracle(problem)


def test_transmissive_unit_front_reflection_raises():
    scenario = builtin_scenario()
    wave = PlaneWave(10e9, 0.0)
    base = IllusionProblem(scenario.actual, scenario.target, wave, Mode.TRANSMISSIVE)
    g_full = front_sheet_reflection(base, 1.0)
    thickness = 0.015
    shell = Stack(AIR, (Layer(AIR, thickness),), Sheet(0j))
    z = chain_segments(shell, wave)[0][2]
    target = Stack(AIR, (Layer(AIR, thickness),), Sheet(g_full / (z * z)))
    problem = IllusionProblem(scenario.actual, target, wave, Mode.TRANSMISSIVE)
    with pytest.raises(DegenerateSynthesisError, match="no finite susceptibility"):
        transmissive_synthesis(problem)


def test_classify_realizability():
    assert classify_realizability(0.5) is Realizability.PASSIVE
    assert classify_realizability(-1.0) is Realizability.PASSIVE
    assert classify_realizability(1j) is Realizability.PASSIVE
    assert classify_realizability(1.2) is Realizability.ACTIVE_REQUIRED
    assert classify_realizability(1.05 * cmath.exp(2.1j)) is Realizability.ACTIVE_REQUIRED
    with pytest.raises(OpenCircuitError):
        classify_realizability(1.0)  # open-circuit boundary point has no impedance


def test_mode_and_problem_validation():
    scenario = builtin_scenario()
    wave = PlaneWave(10e9, 0.0)
    transmissive = IllusionProblem(scenario.actual, scenario.target, wave, Mode.TRANSMISSIVE)
    with pytest.raises(ValidationError):
        reflective_synthesis_closed_form(transmissive)
    reflective = IllusionProblem(scenario.actual, scenario.target, wave, Mode.REFLECTIVE)
    with pytest.raises(ValidationError):
        transmissive_synthesis(reflective)
    two_layer = Stack(AIR, scenario.actual.layers[:2], Pec())
    with pytest.raises(ValidationError):
        IllusionProblem(two_layer, scenario.target, wave, Mode.REFLECTIVE)
    with pytest.raises(ValidationError):
        IllusionProblem(scenario.actual, scenario.target, wave, "reflective")


def test_termination_independence_of_transmissive_front():
    # front substitution at the natural rho_1 returns the natural reflection
    scenario = builtin_scenario()
    wave = PlaneWave(11e9, math.radians(25.0))
    problem = IllusionProblem(scenario.actual, scenario.target, wave, Mode.TRANSMISSIVE)
    natural = chain_reflection(scenario.actual, wave)
    rho_1 = chain_segments(scenario.actual, wave)[0][0]
    assert abs(front_sheet_reflection(problem, rho_1) - natural) < 1e-12


def test_termination_reflection_passthrough():
    scenario = builtin_scenario()
    wave = PlaneWave(10e9, 0.0)
    assert termination_reflection(scenario.actual, wave) == -1.0
    assert termination_reflection(scenario.target, wave) == 0.0
