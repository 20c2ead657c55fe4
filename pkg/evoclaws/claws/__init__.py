"""Conserved vectors of u_t = H: determining systems, their solution within
a polynomial ansatz, characteristics and equivalence"""

from .vectors import (Characteristic, ConservedVector, are_equivalent, characteristic_of,
                      reduce_order, strip_ux_linear)
from .determining import (Ansatz, DeterminingSystem, canonical_conditions, char1_condition,
                          determining_system, reduced_condition, split)
from .solver import (ADJOINT, COMPLETE, DEFAULT_DEGREE, HEURISTIC, Solution, TxSystem,
                     basis_entry, density_monomials, eliminate_flux, flux_of, solve_determining)

__all__ = ['Characteristic', 'ConservedVector', 'are_equivalent', 'characteristic_of',
           'reduce_order', 'strip_ux_linear', 'Ansatz', 'DeterminingSystem',
           'canonical_conditions', 'char1_condition', 'determining_system',
           'reduced_condition', 'split', 'ADJOINT', 'COMPLETE', 'DEFAULT_DEGREE', 'HEURISTIC',
           'Solution', 'TxSystem', 'basis_entry', 'density_monomials', 'eliminate_flux',
           'flux_of', 'solve_determining']
