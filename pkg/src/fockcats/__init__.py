"""Coherent and even/odd cat states of the harmonic oscillator.

A truncated-Fock-basis toolkit: state constructors that agree across
operator, amplitude, and closed-form routes; harmonic time evolution;
position-space probability densities; and the photon-statistics and
coherence observables that make coherent light "classical".
"""

from .dynamics import (
    DensitySurface,
    SliceFeatures,
    TimeGrid,
    classical_trajectory,
    density_surface,
    evolve,
    overlap_snapshot_features,
)
from .fock import (
    DEFAULT_TOLERANCES,
    FockOperator,
    FockState,
    Tolerances,
    TruncationError,
    adjoint,
    apply,
    auto_dim,
    identity,
    inner_product,
    lowering_matrix,
    matrix_exponential,
    raising_matrix,
    required_dim,
    unitarity_defect,
)
from .observables import (
    UncertaintyReport,
    g2_zero,
    normally_ordered_moment,
    photon_distribution,
    quadrature_expectations,
)
from .runner import RunManifest, run_scenario
from .scenario import (
    OUTPUT_PRODUCTS,
    PRESET_NAMES,
    Scenario,
    ScenarioError,
    default_scenario,
    parse_scenario,
    preset_scenario,
)
from .states import (
    PhaseSpacePoint,
    PositionGrid,
    alpha_from_phase_space,
    cat_state,
    cat_wavefunction_closed,
    coherent_state,
    coherent_via_displacement,
    displacement_generator,
    displacement_operator,
    gaussian_wavefunction,
    hermite_functions,
    number_state,
    phase_space_from_alpha,
    position_wavefunction,
)

__version__ = "0.1.0"
