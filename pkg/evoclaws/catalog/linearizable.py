"""The heat equation and two equations mapped to it: u_t = u_x^-2 u_xx by the
hodograph transformation and u_t = -1/u_xx by the Legendre transformation.
Each has an infinite family parametrized by a solution of the backward heat
equation, listed with five polynomial solutions."""

from typing import Tuple
import sympy

from ..base import Verdict
from ..claws import ConservedVector
from ..classify import hodograph, legendre
from ..expr.canonical import heat_polynomials
from ..expr.symbols import FunctionSymbol, backward_heat, t, x, ujet
from ..jet import EvolutionEquation
from .entry import Bindings, Expectations, check_keys

HEAT_FAMILY = FunctionSymbol('h', ('t', 'x'), backward_heat())
SIGMA = FunctionSymbol('sigma', ('t', 'omega'), backward_heat())


def heat(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """u_t = u_xx: F = h u, G = h_x u - h u_x"""
    check_keys(bindings, ())
    u, ux, uxx = ujet(0), ujet(1), ujet(2)
    weights = list(heat_polynomials(t, x)) + [HEAT_FAMILY(t, x)]
    basis = tuple((ConservedVector(w * u, sympy.diff(w, x) * u - w * ux), w) for w in weights)
    return (EvolutionEquation(uxx, name='heat'),
            Expectations(Verdict.infinite(), basis, (), (HEAT_FAMILY,), 'linear'))


def hodograph_heat(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """u_t = u_x^-2 u_xx: F = sigma(t,u), G = sigma_omega / u_x"""
    check_keys(bindings, ())
    u, ux, uxx = ujet(0), ujet(1), ujet(2)
    basis = []
    for sigma in list(heat_polynomials(t, u)) + [SIGMA(t, u)]:
        slope = sympy.diff(sigma, u)
        basis.append((ConservedVector(sigma, slope / ux), slope))
    return (EvolutionEquation(uxx / ux ** 2, name='L1'),
            Expectations(Verdict.infinite(), tuple(basis), ((hodograph(), uxx),), (SIGMA,),
                         'hodograph image of the heat equation'))


def legendre_heat(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """u_t = -1/u_xx: F = sigma(t,u_x), G = sigma_omega / u_xx, lambda = sigma_t u_xx"""
    check_keys(bindings, ())
    ux, uxx = ujet(1), ujet(2)
    basis = []
    for sigma in list(heat_polynomials(t, ux)) + [SIGMA(t, ux)]:
        basis.append((ConservedVector(sigma, sympy.diff(sigma, ux) / uxx),
                      sympy.diff(sigma, t) * uxx))
    return (EvolutionEquation(-1 / uxx, name='L2'),
            Expectations(Verdict.infinite(), tuple(basis), ((legendre(), uxx),), (SIGMA,),
                         'Legendre image of the heat equation'))
