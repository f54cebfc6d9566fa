"""planemirage: plane-wave reflection from layered 1D environments and the
synthesis of metasurface states that make one environment scatter like
another.

The public API re-exports the core types and operations; the submodules
group them by concern:

  wavecore    media, stacks, transfer matrices, total reflection
  gstc        zero-thickness sheet models (susceptibility, impedance, IBC)
  synthesis   illusion synthesis (reflective and transmissive)
  unitcell    tunable-cell reflection maps, state selection, coding sets
  companions  radial transform, strip profile, geometric phase, grating
  cli         command-line front end
"""

from .companions import (
    RadialTransform,
    StripProfile,
    grating_angle,
    pb_phase,
    radial_forward,
    radial_inverse,
    strip_height,
)
from .errors import (
    ConfigError,
    DegenerateInterfaceError,
    DegenerateSynthesisError,
    DivisionDomainError,
    DomainError,
    DuplicateStateError,
    EmptyMapError,
    EvanescentOrderError,
    InfeasibleCodingSetError,
    InvalidMediumError,
    MapFormatError,
    MissingFrequencyError,
    NonInvertibleSegmentError,
    OpenCircuitError,
    PlanemirageError,
    ResonantSingularityError,
    SheetResonanceError,
    ValidationError,
    WriteError,
)
from .gstc import (
    FieldJump,
    SheetImpedance,
    Susceptibilities,
    ibc_residual,
    impedance_from_reflection,
    reflection_from_impedance,
    sheet_coefficients,
    surface_currents,
    susceptibility_from_reflection,
)
from .synthesis import (
    IllusionProblem,
    Mode,
    Realizability,
    SynthesisOutcome,
    classify_realizability,
    front_sheet_reflection,
    reflective_synthesis_closed_form,
    reflective_synthesis_oracle,
    sheet_terminated_reflection,
    synthesize,
    target_reflection,
    transmissive_synthesis,
    transmissive_synthesis_oracle,
)
from .unitcell import (
    CodingSet,
    ReflectionMap,
    UnitCellRecord,
    build_coding_set,
    load_reflection_map,
    load_sample_map,
    select_state,
)
from .wavecore import (
    AIR,
    C0,
    ETA0,
    Layer,
    LayerWaveState,
    Medium,
    Open,
    Pec,
    PlaneWave,
    Sheet,
    Stack,
    TransferMatrix2,
    chain_reflection,
    chain_segments,
    incident_wave_state,
    interface_coefficients,
    layer_wave_state,
    propagation_phase,
    segment_matrix,
    termination_reflection,
)

__version__ = "0.1.0"

__all__ = [
    "AIR",
    "C0",
    "ETA0",
    "CodingSet",
    "ConfigError",
    "DegenerateInterfaceError",
    "DegenerateSynthesisError",
    "DivisionDomainError",
    "DomainError",
    "DuplicateStateError",
    "EmptyMapError",
    "EvanescentOrderError",
    "FieldJump",
    "IllusionProblem",
    "InfeasibleCodingSetError",
    "InvalidMediumError",
    "Layer",
    "LayerWaveState",
    "MapFormatError",
    "Medium",
    "MissingFrequencyError",
    "Mode",
    "NonInvertibleSegmentError",
    "Open",
    "OpenCircuitError",
    "Pec",
    "PlaneWave",
    "PlanemirageError",
    "RadialTransform",
    "Realizability",
    "ReflectionMap",
    "ResonantSingularityError",
    "Sheet",
    "SheetImpedance",
    "SheetResonanceError",
    "Stack",
    "StripProfile",
    "Susceptibilities",
    "SynthesisOutcome",
    "TransferMatrix2",
    "UnitCellRecord",
    "ValidationError",
    "WriteError",
    "build_coding_set",
    "chain_reflection",
    "chain_segments",
    "classify_realizability",
    "front_sheet_reflection",
    "grating_angle",
    "ibc_residual",
    "impedance_from_reflection",
    "incident_wave_state",
    "interface_coefficients",
    "layer_wave_state",
    "load_reflection_map",
    "load_sample_map",
    "pb_phase",
    "propagation_phase",
    "radial_forward",
    "radial_inverse",
    "reflection_from_impedance",
    "reflective_synthesis_closed_form",
    "reflective_synthesis_oracle",
    "segment_matrix",
    "select_state",
    "sheet_coefficients",
    "sheet_terminated_reflection",
    "strip_height",
    "surface_currents",
    "susceptibility_from_reflection",
    "synthesize",
    "target_reflection",
    "termination_reflection",
    "transmissive_synthesis",
    "transmissive_synthesis_oracle",
]
