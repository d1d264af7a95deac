"""Off-resonant probing of multilevel alkali atoms.

Thin wrapper around the compiled ``_core`` extension module: Wigner
symbols, polarizability tensor decomposition, semiclassical Stokes
dynamics and the photocurrent measurement/filtering chain.
"""

from ._core import (
    AtomSpecies,
    CloudParams,
    ConsistencyError,
    ExcitedLevel,
    ExperimentConfig,
    MeasurementParams,
    ParseError,
    ProbeParams,
    SimulationParams,
    __version__,
    alpha_coefficients,
    alpha_zero,
    clebsch_gordan,
    conditional_variance,
    detuning_scan,
    dyad_tensor_operator,
    filter_photocurrent,
    gamma0,
    irreducible_tensor_operator,
    load_experiment,
    load_species,
    measurement_strength,
    parse_quantity,
    resonant_cross_section,
    simulate_photocurrent,
    simulate_trajectory,
    snr_squeezing,
    wigner6j,
)

__all__ = [
    "AtomSpecies",
    "CloudParams",
    "ConsistencyError",
    "ExcitedLevel",
    "ExperimentConfig",
    "MeasurementParams",
    "ParseError",
    "ProbeParams",
    "SimulationParams",
    "__version__",
    "alpha_coefficients",
    "alpha_zero",
    "clebsch_gordan",
    "conditional_variance",
    "detuning_scan",
    "dyad_tensor_operator",
    "filter_photocurrent",
    "gamma0",
    "irreducible_tensor_operator",
    "load_experiment",
    "load_species",
    "measurement_strength",
    "parse_quantity",
    "resonant_cross_section",
    "simulate_photocurrent",
    "simulate_trajectory",
    "snr_squeezing",
    "wigner6j",
]
