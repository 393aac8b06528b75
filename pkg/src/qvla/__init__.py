"""Exact verification of quasi vertex Lie algebras, their twisted mode algebras,
enveloping vertex algebras and phi-coordinated modules."""

from .algebra import (
    QVLA,
    Family,
    Mode,
    Rule,
    StructureEntry,
    check_jacobi,
    check_maximality,
    check_reconstruction,
    check_skew_symmetry,
    check_zeta_lie_axioms,
    current_bracket,
    g_bracket,
    gamma_bracket,
    lie_bracket,
    zeta_mode_bracket,
)
from .currents import CurrentExpr, DeltaTerm, GeneratorIndex, LaurentWindow
from .enveloping import Envelope, check_gamma_epsilon_axiom, check_vertex_axioms, graded_dimension
from .families import example
from .isomorphisms import check_example_isomorphism
from .modules import (
    affine_induced_module,
    check_equi_commutator,
    check_equivariance,
    check_phi_associativity,
    fock_module,
    phi_series,
)
from .report import Report
from .scalars import InvalidInput, field
from .specfile import parse_spec

__version__ = "0.1.0"

__all__ = [
    "CurrentExpr",
    "DeltaTerm",
    "Envelope",
    "Family",
    "GeneratorIndex",
    "InvalidInput",
    "LaurentWindow",
    "Mode",
    "QVLA",
    "Report",
    "Rule",
    "StructureEntry",
    "affine_induced_module",
    "check_equi_commutator",
    "check_equivariance",
    "check_example_isomorphism",
    "check_gamma_epsilon_axiom",
    "check_jacobi",
    "check_maximality",
    "check_phi_associativity",
    "check_reconstruction",
    "check_skew_symmetry",
    "check_vertex_axioms",
    "check_zeta_lie_axioms",
    "current_bracket",
    "example",
    "field",
    "fock_module",
    "g_bracket",
    "gamma_bracket",
    "graded_dimension",
    "lie_bracket",
    "parse_spec",
    "phi_series",
    "zeta_mode_bracket",
]
