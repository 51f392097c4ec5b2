"""Exact necklace-bracket calculus for 2-Calabi-Yau quivers with potential."""
from .algebra import AlgebraTable, check_cy_pairing, check_unit_assoc, extract_algebra
from .bracket import (BracketConvention, DEFAULT_CONVENTION, Differential, close_cycle, cyclic_derivative,
                      differential_d, master_residual, necklace_bracket)
from .complex import (DeformationComplex, Selector, cohomology_scan, decomposition_check, differential_matrix,
                      enumerate_basis)
from .dsl import PotentialDoc, parse_potential, print_potential
from .quiver import (ExtData, SymmetricQuiver, canonical_potential, ext_of, phi_from_ext, shifted_alphabet,
                     single_vertex_quiver, validate_quiver)
from .words import (Alphabet, CyclicSeries, GradedVariable, NcPoly, canonical_cyclic, compose_check, degrees,
                    series_combine)

__all__ = [
    "AlgebraTable", "Alphabet", "BracketConvention", "CyclicSeries", "DEFAULT_CONVENTION", "DeformationComplex",
    "Differential", "ExtData", "GradedVariable", "NcPoly", "PotentialDoc", "Selector", "SymmetricQuiver",
    "canonical_cyclic", "canonical_potential", "check_cy_pairing", "check_unit_assoc", "close_cycle",
    "cohomology_scan", "compose_check", "cyclic_derivative", "decomposition_check", "degrees",
    "differential_d", "differential_matrix", "enumerate_basis", "ext_of", "extract_algebra", "master_residual",
    "necklace_bracket", "parse_potential", "phi_from_ext", "print_potential", "series_combine",
    "shifted_alphabet", "single_vertex_quiver", "validate_quiver",
]
