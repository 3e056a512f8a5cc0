"""Vertex percolation on Cayley graphs of S_n generated by transposition trees."""
from .branching import (OffspringLaw, SurvivalResult, chernoff_bound, embedded_tree_process,
                        partition_params, progeny_tail, simulate_process, survival_poisson,
                        survival_probability)
from .cayley import CayleyGraph
from .errors import CapabilityError, InputDomainError, MinimalityError
from .experiment import SweepConfig, SweepRow, emit_plot, run_sweep
from .generators import TranspositionTree, bubble, from_prufer, from_spec, star
from .kernels import BACKEND
from .percolation import (ComponentReport, PercolationParams, PercolationSample, components,
                          is_selected, percolate, two_density)
from .permutation import Permutation, apply_transposition, compose, rank, unrank
from .verification import run_verification_suite

__version__ = "0.1.0"
