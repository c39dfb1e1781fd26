"""Exact Jordan canonical form, transition matrix and inverse over the rationals.

Typical use::

    from cayleyjordan import parse_matrix, run_pipeline
    report = run_pipeline(parse_matrix(open("a.txt").read()))
    report.P, report.J, report.P_inv
"""

from .charpoly import Polynomial, Spectrum, characteristic_polynomial, compute_spectrum, factor_spectrum
from .chains import JordanChain, SeedPolicy, harvest_all, harvest_maximal_chains, screen_standard_basis
from .completion import complete
from .corpus import StructureSpec, generate, plant_standard_basis_eigenvector
from .errors import JordanError
from .matrix import Matrix, OpCounter, Vector, counting
from .oracle import JordanStructure, structure_by_filtration, verify_decomposition
from .pipeline import PipelineOptions, PipelineReport, emit, run_pipeline
from .textio import parse_matrix, parse_spectrum, read_matrix, render_matrix

__version__ = "0.1.0"

__all__ = [
    "JordanChain",
    "JordanError",
    "JordanStructure",
    "Matrix",
    "OpCounter",
    "PipelineOptions",
    "PipelineReport",
    "Polynomial",
    "SeedPolicy",
    "Spectrum",
    "StructureSpec",
    "Vector",
    "characteristic_polynomial",
    "complete",
    "compute_spectrum",
    "counting",
    "emit",
    "factor_spectrum",
    "generate",
    "harvest_all",
    "harvest_maximal_chains",
    "parse_matrix",
    "parse_spectrum",
    "plant_standard_basis_eigenvector",
    "read_matrix",
    "render_matrix",
    "run_pipeline",
    "screen_standard_basis",
    "structure_by_filtration",
    "verify_decomposition",
]
