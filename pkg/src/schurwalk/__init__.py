"""Exact combinatorics of strict partitions and the up/down chains on them.

The main entry points are re-exported here; see the submodules for the rest.
"""

from .chains import run, spectrum, step, transition_matrix, walk
from .diagrams import (
    StrictPartition,
    add_box,
    addable_contents,
    enumerate_strict,
    kerov_coordinates,
    remove_box,
    removable_contents,
)
from .errors import DomainError, TruncationError
from .gamma import GammaPoly, QuotientPoly, evaluate, p, schur_q, schur_q_factorial_symbolic
from .kerov import coordinates, theta_down, theta_up
from .limit import embed, exact_moment, moments, reconstruct_point, stationary_moment_mc
from .measures import PLANCHEREL, dimension, down_prob, multiplicative_measure, up_prob
from .report import Report

__version__ = "0.1.0"

__all__ = [
    "PLANCHEREL",
    "DomainError",
    "TruncationError",
    "StrictPartition",
    "GammaPoly",
    "QuotientPoly",
    "Report",
    "add_box",
    "addable_contents",
    "coordinates",
    "dimension",
    "down_prob",
    "embed",
    "enumerate_strict",
    "evaluate",
    "exact_moment",
    "kerov_coordinates",
    "moments",
    "multiplicative_measure",
    "p",
    "reconstruct_point",
    "remove_box",
    "removable_contents",
    "run",
    "schur_q",
    "schur_q_factorial_symbolic",
    "spectrum",
    "stationary_moment_mc",
    "step",
    "theta_down",
    "theta_up",
    "transition_matrix",
    "up_prob",
    "walk",
]
