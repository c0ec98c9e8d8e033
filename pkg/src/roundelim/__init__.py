"""Round elimination in exact communication complexity.

Exact Krawtchouk spectra of Hamming graphs, Lovasz theta values and
certificates, orthonormal representations, an exact rational simplex for
the Delsarte bound, amplitude-level simulation of exact quantum protocols,
classical round collapse, Kremer compilation and the list-problem bounds.
"""

from roundelim._kernels import BACKEND
from roundelim.errors import DomainError, InvariantError, PromiseViolation
from roundelim.graphs import Graph, hamming_graph, gk_graph
from roundelim.krawtchouk import kraw, lambda_min_bound, smallest_root, spectrum
from roundelim.linopt import delsarte_theta_prime, solve
from roundelim.numerics import binom, entropy
from roundelim.orthrep import OrthRep, check, fourier_rep
from roundelim.theta import theta_complement_hamming

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "Graph",
    "InvariantError",
    "OrthRep",
    "PromiseViolation",
    "binom",
    "check",
    "delsarte_theta_prime",
    "entropy",
    "fourier_rep",
    "gk_graph",
    "hamming_graph",
    "kraw",
    "lambda_min_bound",
    "smallest_root",
    "solve",
    "spectrum",
    "theta_complement_hamming",
]
