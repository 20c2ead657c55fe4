"""Transformations that bring one or two conservation laws to the
characteristics 1 and (1, x)"""

from typing import Callable, Dict, List, Tuple, Union
import sympy

from ..base import set_logger
from ..base.exceptions import (ClassifyError, DependentLaws, JetError, NotCharacteristicOne,
                               TrivialInput)
from ..claws import ConservedVector, characteristic_of, strip_ux_linear
from ..expr.canonical import apply_constraints, is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import depends_on_jets, t, x, ujet
from ..jet import EvolutionEquation, euler, integrate
from .transform import ContactTransformation, transform_conserved_vector

logger = set_logger('normalize')


class EmittedSystem:
    """Equations for a transformation that could not be solved in closed form"""
    __slots__ = ['name', 'unknowns', 'equations', 'note']

    def __init__(self, name: str, unknowns: List[str], equations: List[sympy.Expr], note: str = ''):
        self.name = name  # type: str
        self.unknowns = unknowns  # type: List[str]
        self.equations = equations  # type: List[sympy.Expr]
        self.note = note  # type: str

    def __repr__(self):
        return '<EmittedSystem %s: %d equations in %s>' % (
            self.name, len(self.equations), ', '.join(self.unknowns))

    def to_dict(self) -> Dict:
        return dict(name=self.name, unknowns=list(self.unknowns),
                    equations=['%s = 0' % to_text(e) for e in self.equations], note=self.note)


def legendre() -> ContactTransformation:
    return ContactTransformation(t, ujet(1), x * ujet(1) - ujet(0), provenance='Legendre')


def hodograph() -> ContactTransformation:
    return ContactTransformation(t, ujet(0), x, provenance='hodograph')


LIBRARY = [('legendre', legendre), ('hodograph', hodograph)]  # type: List[Tuple[str, Callable]]


def _constant_characteristic(tr: ContactTransformation, cv: ConservedVector,
                             eq: EvolutionEquation):
    """Nonzero numeric characteristic of the transported law, else None"""
    moved = transform_conserved_vector(tr, cv, eq)
    multiplier = simplify(apply_constraints(euler(moved.density)))
    if multiplier.is_number and multiplier != 0:
        return multiplier
    return None


def x_equation(density) -> Tuple[sympy.Expr, sympy.Expr]:
    """Linear first-order PDE for X when F_{u_x u_x} != 0, with its unknown"""
    u, ux = ujet(0), ujet(1)
    unknown = sympy.Function('X')(t, x, u, ux)
    second = sympy.diff(density, ux, 2)
    equation = (ux * second * sympy.diff(unknown, x) + second * sympy.diff(unknown, u)
                + (sympy.diff(density, x) - ux * sympy.diff(density, x, ux)
                   - sympy.diff(density, u, ux)) * sympy.diff(unknown, ux))
    return equation, unknown


def normalize_char1(cv: ConservedVector, eq: EvolutionEquation) \
        -> Union[ContactTransformation, EmittedSystem]:
    """Transformation after which the law has characteristic 1"""
    if cv.trivial:
        raise TrivialInput('conserved vector is trivial')
    ux = ujet(1)
    if is_zero(sympy.diff(cv.density, ux, 2)).vanishes:
        cv = strip_ux_linear(cv, eq)
        if cv.trivial:
            raise TrivialInput('density %s is trivial' % to_text(cv.density))
    density = simplify(cv.density)

    if is_zero(sympy.diff(density, ux)).vanishes:
        return ContactTransformation(t, x, density, provenance='point: U = F')

    equation, unknown = x_equation(density)
    solving = []
    for name, factory in LIBRARY:
        try:
            tr = factory()
            scale = _constant_characteristic(tr, cv, eq)
        except ClassifyError as e:
            logger.debug('%s rejected: %s', name, e)
            continue
        if scale is not None:
            return ContactTransformation(tr.T, tr.X, scale * tr.U,
                                         provenance='%s, U scaled by %s' % (name, scale))
        residual = equation.subs(unknown, tr.X).doit()
        if is_zero(residual).vanishes:
            solving.append(name)
    note = 'unsolved'
    if solving:
        note += '; X from %s solves the X equation but no U was found' % ', '.join(solving)
    logger.info('characteristic-1 normalization of %s left unsolved', to_text(density))
    return EmittedSystem('char1_X', [to_text(unknown)], [equation], note)


def _pair_shortcut(lambda1, lambda2) -> ContactTransformation:
    ratio = simplify(lambda2 / lambda1)
    return ContactTransformation(t, ratio, simplify(lambda1 * ujet(0) / sympy.diff(ratio, x)),
                                 provenance='characteristic ratio')


def normalize_pair(cv1: ConservedVector, cv2: ConservedVector, eq: EvolutionEquation) \
        -> Union[ContactTransformation, EmittedSystem]:
    """Point transformation mapping the characteristics of a pair to (1, x)"""
    u = ujet(0)
    lambda1 = simplify(apply_constraints(characteristic_of(cv1).multiplier))
    lambda2 = simplify(apply_constraints(characteristic_of(cv2).multiplier))
    if is_zero(lambda1).vanishes or is_zero(lambda2).vanishes:
        raise TrivialInput('pair contains a trivial law')
    if not depends_on_jets(lambda1) and not depends_on_jets(lambda2):
        if is_zero(sympy.diff(lambda2 / lambda1, x)).vanishes:
            raise DependentLaws('characteristics %s and %s are proportional'
                                % (to_text(lambda1), to_text(lambda2)))
        return _pair_shortcut(lambda1, lambda2)

    if not is_zero(lambda1 - 1).vanishes:
        raise NotCharacteristicOne('first law has characteristic %s' % to_text(lambda1))
    second = strip_ux_linear(cv2, eq)
    if second.trivial:
        raise TrivialInput('second law is trivial')
    if not is_zero(sympy.diff(second.density, ujet(1))).vanishes:
        raise ClassifyError('second density %s depends on u_x' % to_text(second.density))
    target = simplify(sympy.diff(second.density, u))
    if is_zero(sympy.diff(target, x)).vanishes and is_zero(sympy.diff(target, u)).vanishes:
        raise DependentLaws('second law differs from the first by a function of t')

    if is_zero(sympy.diff(target, u)).vanishes:
        return ContactTransformation(t, target, simplify(u / sympy.diff(target, x)),
                                     provenance='X = F2_u, U by quadrature in u')
    if is_zero(sympy.diff(target, x)).vanishes:
        return ContactTransformation(t, target, simplify(-x / sympy.diff(target, u)),
                                     provenance='X = F2_u, U by quadrature in x')
    try:
        candidate = simplify(integrate(1 / sympy.diff(target, x), u))
        jacobian = sympy.diff(target, x) * sympy.diff(candidate, u) \
            - sympy.diff(target, u) * sympy.diff(candidate, x)
        if is_zero(jacobian - 1).vanishes:
            return ContactTransformation(t, target, candidate, provenance='X = F2_u')
    except JetError as e:
        logger.debug('quadrature for U failed: %s', e)
    unknown = sympy.Function('U')(t, x, u)
    equation = sympy.diff(target, x) * sympy.diff(unknown, u) \
        - sympy.diff(target, u) * sympy.diff(unknown, x) - 1
    return EmittedSystem('pair_U', [to_text(unknown)], [equation],
                         'unsolved; X = %s' % to_text(target))
