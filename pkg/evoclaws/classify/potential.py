"""Potential systems introduced from the divergence forms u_t = D_x hat_h
and u_t = D_x^2 check_h"""

from typing import Dict, List, Optional, Tuple
import sympy

from ..base.exceptions import NoDivergenceForm
from ..expr.canonical import simplify
from ..expr.printer import to_text
from ..expr.symbols import jet_order, jet_symbols, ujet, x
from ..jet import total_x


class PotentialSystem:
    """Named system of relations lhs = rhs, rhs written in the jets of u"""
    __slots__ = ['name', 'relations', 'note']

    def __init__(self, name: str, relations: List[Tuple[str, sympy.Expr]], note: str = ''):
        self.name = name  # type: str
        self.relations = relations  # type: List[Tuple[str, sympy.Expr]]
        self.note = note  # type: str

    def __repr__(self):
        return '<PotentialSystem %s {%s}>' % (self.name, ', '.join(
            '%s = %s' % (lhs, to_text(rhs)) for lhs, rhs in self.relations))

    def to_dict(self) -> Dict:
        return dict(name=self.name, note=self.note,
                    relations=[[lhs, to_text(rhs)] for lhs, rhs in self.relations])


def _raise(expr, levels: int) -> sympy.Expr:
    """Shift every jet up by levels: u_k becomes u_{k+levels}"""
    return expr.xreplace({s: ujet(jet_order(s) + levels) for s in jet_symbols(expr)})


def potential_systems(hat_h: Optional[sympy.Expr],
                      check_h: Optional[sympy.Expr] = None) -> List[PotentialSystem]:
    """Potential systems and potential equations of the divergence forms"""
    if hat_h is None:
        raise NoDivergenceForm('equation has no divergence form in this chart')
    u = ujet(0)
    systems = [
        PotentialSystem('potential', [('v_x', u), ('v_t', hat_h)]),
        PotentialSystem('potential_equation', [('v_t', _raise(hat_h, 1))],
                        note='jets of u stand for the jets of v'),
    ]
    if check_h is None:
        return systems
    flux = simplify(total_x(check_h))
    systems += [
        PotentialSystem('second_potential',
                        [('v1_x', u), ('w_x', sympy.Symbol('v1')), ('w_t', check_h)],
                        note='v1_t = D_x check_h follows and can be omitted'),
        PotentialSystem('pair_potential', [('v1_x', u), ('v1_t', flux), ('v2_x', x * u),
                                           ('v2_t', simplify(x * flux - check_h))]),
        PotentialSystem('second_potential_equation', [('w_t', _raise(check_h, 2))],
                        note='jets of u stand for the jets of w'),
    ]
    return systems


def emit_potential_system(report) -> List[PotentialSystem]:
    """Potential systems for the canonical forms recorded in a report"""
    forms = report.canonical_forms
    return potential_systems(forms.get('hat_h'), forms.get('check_h'))
