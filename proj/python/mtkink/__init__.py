"""Kink-soliton transport and cavity estimates for microtubule protofilaments.

Thin wrapper over the compiled core; everything numerical lives in C++ and is
shared bit-for-bit with the command line tool.
"""

from mtkink._core import (
    DimensionlessSystem,
    KinkEnergy,
    KinkEnergyReport,
    KinkSolution,
    NumericalError,
    Parameters,
    QuantumKink,
    ValidationError,
    cubic_roots,
    dimer_dipole_estimate,
    golden_report,
    kink_energy,
    kink_profile,
    load_parameters,
    nondimensionalize,
    quantum_kink,
    run_scenario,
    selected_velocity,
    selected_velocity_rootsolve,
    sigma_critical,
    tool_version,
    transfer_time,
)

__version__ = tool_version()

__all__ = [
    "DimensionlessSystem",
    "KinkEnergy",
    "KinkEnergyReport",
    "KinkSolution",
    "NumericalError",
    "Parameters",
    "QuantumKink",
    "ValidationError",
    "cubic_roots",
    "dimer_dipole_estimate",
    "golden_report",
    "kink_energy",
    "kink_profile",
    "load_parameters",
    "nondimensionalize",
    "quantum_kink",
    "run_scenario",
    "selected_velocity",
    "selected_velocity_rootsolve",
    "sigma_critical",
    "tool_version",
    "transfer_time",
    "__version__",
]
