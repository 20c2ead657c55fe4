"""Equations whose right-hand side is not fractionally linear in u_xx; none
of them has a conservation law"""

import random
from typing import List, Tuple
import sympy

from ..base import Verdict
from ..base.exceptions import BadBinding
from ..base.helpers import random_coefficient
from ..expr.parser import parse
from ..expr.symbols import t, x, ujet
from ..jet import EvolutionEquation
from .entry import Bindings, Expectations, check_keys

NONLINEAR = [
    'u_xx^2',
    'u_xx^3 + u',
    'exp(u_xx)',
    'u_x*u_xx^2 + u_xx',
    'sin(u_xx) + u_xx',
    '(1 + u^2)*u_xx^2',
    'u_xx^3/u_x',
    'x*u_xx^2 + t*u_xx',
    'ln(u_xx)',
    'u_xx^5 + u_x*u_xx',
]


def nonlinear_gate(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """Entry number 'index' (default 0) of NONLINEAR"""
    check_keys(bindings, ('index',))
    try:
        index = int(bindings.get('index', 0))
    except (TypeError, ValueError) as e:
        raise BadBinding('index must be an integer') from e
    if not 0 <= index < len(NONLINEAR):
        raise BadBinding('index %d outside 0..%d' % (index, len(NONLINEAR) - 1))
    eq = EvolutionEquation(parse(NONLINEAR[index]), name='gate%d' % index)
    return eq, Expectations(Verdict.exact(0), provenance='not fractionally linear in u_xx')


def random_nonlinear(rng: random.Random, degree: int = 2) -> EvolutionEquation:
    """Polynomial of degree >= 2 in u_xx with random (t,x,u,u_x) coefficients"""
    if degree < 2:
        raise ValueError('degree must be at least 2')
    u, ux, uxx = ujet(0), ujet(1), ujet(2)
    lower = [sympy.S.One, t, x, u, ux]
    rhs = sympy.Rational(random_coefficient(rng)) * uxx ** degree
    for power in range(degree):
        coeff = sum(sympy.Rational(random_coefficient(rng)) * m for m in rng.sample(lower, 2))
        rhs += coeff * uxx ** power
    return EvolutionEquation(rhs, name='random%d' % degree)


def gate_equations() -> List[EvolutionEquation]:
    return [nonlinear_gate({'index': i})[0] for i in range(len(NONLINEAR))]
