"""Numerical integrators for the PDE families on periodic domains."""

from pdestep.solvers.linear import (
    AdvectionParams,
    DiffusionParams,
    solve_advection,
    solve_diffusion,
)
from pdestep.solvers.gray_scott import GrayScottParams, solve_gray_scott
from pdestep.solvers.kolmogorov import (
    FlowParams,
    solve_kolmogorov,
    velocity_from_vorticity,
)
from pdestep.solvers.cdd import (
    CDDParams,
    CDDState,
    ReducedCDDParams,
    solve_cdd,
    solve_reduced_cdd,
)

__all__ = [
    "AdvectionParams",
    "DiffusionParams",
    "GrayScottParams",
    "FlowParams",
    "CDDParams",
    "CDDState",
    "ReducedCDDParams",
    "solve_advection",
    "solve_diffusion",
    "solve_gray_scott",
    "solve_kolmogorov",
    "solve_cdd",
    "solve_reduced_cdd",
    "velocity_from_vorticity",
]
