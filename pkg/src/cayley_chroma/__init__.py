"""Certified chromatic numbers of Abelian Cayley graphs given by integer matrices of rank <= 2."""

from .cayley import ball, circulant_graph, finite_quotient_graph, full_graph, quotient_group
from .chromatic import Chi, Uncolorable, UnsupportedExact, chi, same_answer
from .intmat import IntMatrix, column_hnf, has_loops, lattice_member, smith_normal_form
from .oracle import SandwichConfig, exact_chromatic, lower_bound, sandwich_verify, upper_bound, verify_certificate

__all__ = [
    "Chi",
    "IntMatrix",
    "SandwichConfig",
    "Uncolorable",
    "UnsupportedExact",
    "ball",
    "chi",
    "circulant_graph",
    "column_hnf",
    "exact_chromatic",
    "finite_quotient_graph",
    "full_graph",
    "has_loops",
    "lattice_member",
    "lower_bound",
    "quotient_group",
    "same_answer",
    "sandwich_verify",
    "smith_normal_form",
    "upper_bound",
    "verify_certificate",
]
