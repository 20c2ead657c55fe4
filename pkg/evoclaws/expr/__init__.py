"""Jet expressions: parsing, printing, canonical forms and zero testing"""

from .symbols import (BACKWARD_HEAT, FunctionSymbol, LinearConstraint, backward_heat,
                      breve, depends_on_jets, derivative_at, jet_order, jet_symbols, order_of,
                      tjet_order, ujet, utjet, t, x, u, ux, uxx, uxxx)
from .canonical import (DEFAULT_SEED, TOLERANCE, ZERO_SAMPLES, apply_constraints,
                        canonical, draw_functions, evaluate, heat_polynomials,
                        is_zero, sample_zero, simplify, substitute_functions)
from .parser import parse, parse_declaration
from .printer import to_text

__all__ = ['BACKWARD_HEAT', 'FunctionSymbol', 'LinearConstraint', 'backward_heat', 'breve',
           'derivative_at', 'depends_on_jets', 'jet_order', 'jet_symbols', 'order_of',
           'tjet_order', 'ujet', 'utjet', 't', 'x', 'u', 'ux', 'uxx', 'uxxx', 'DEFAULT_SEED',
           'TOLERANCE', 'ZERO_SAMPLES', 'apply_constraints', 'canonical', 'draw_functions',
           'evaluate', 'heat_polynomials', 'is_zero', 'sample_zero', 'simplify',
           'substitute_functions', 'parse', 'parse_declaration', 'to_text']
