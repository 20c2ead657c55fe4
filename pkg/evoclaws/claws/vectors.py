"""Conserved vectors, characteristics and reduction to first order"""

import sympy

from ..base.exceptions import NotConserved, ReductionFailure
from ..expr.canonical import apply_constraints, is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import jet_symbols, order_of, ujet
from ..jet import EvolutionEquation, integrate, total_t, total_x


class ConservedVector:
    """Density F and flux G with D_t F + D_x G = 0 on solutions"""
    __slots__ = ['density', 'flux', 'reduced', 'trivial']

    def __init__(self, density, flux, reduced: bool = False, trivial: bool = False):
        self.density = sympy.sympify(density)  # type: sympy.Expr
        self.flux = sympy.sympify(flux)  # type: sympy.Expr
        self.reduced = reduced  # type: bool
        self.trivial = trivial  # type: bool

    def __repr__(self):
        return '<ConservedVector F=%s G=%s%s>' % (to_text(self.density), to_text(self.flux),
                                                  ' trivial' if self.trivial else '')

    def __add__(self, other: 'ConservedVector') -> 'ConservedVector':
        return ConservedVector(self.density + other.density, self.flux + other.flux)

    def __sub__(self, other: 'ConservedVector') -> 'ConservedVector':
        return ConservedVector(self.density - other.density, self.flux - other.flux)

    def __rmul__(self, scalar) -> 'ConservedVector':
        return ConservedVector(scalar * self.density, scalar * self.flux)

    def residual(self, eq: EvolutionEquation) -> sympy.Expr:
        """On-shell D_t F + D_x G"""
        return total_t(self.density, eq) + total_x(self.flux)

    def is_conserved(self, eq: EvolutionEquation) -> bool:
        return is_zero(apply_constraints(self.residual(eq))).vanishes

    def is_reduced(self, eq: EvolutionEquation) -> bool:
        """F = F(t,x,u,u_x) and G + F_{u_x} H of order at most one"""
        rest = self.flux + sympy.diff(self.density, ujet(1)) * eq.rhs
        return order_of(self.density) <= 1 and order_of(simplify(rest)) <= 1

    def depends_on_tx_only(self) -> bool:
        return all(is_zero(sympy.diff(part, s)).vanishes
                   for part in (self.density, self.flux) for s in jet_symbols(part))


class Characteristic:
    """Multiplier lambda with D_t F + D_x G = lambda (u_t - H) up to null divergences"""
    __slots__ = ['multiplier']

    def __init__(self, multiplier):
        self.multiplier = sympy.sympify(multiplier)  # type: sympy.Expr

    def __repr__(self):
        return '<Characteristic %s>' % to_text(self.multiplier)


def characteristic_of(cv: ConservedVector) -> Characteristic:
    """lambda = F_u - D_x F_{u_x}"""
    density = cv.density
    return Characteristic(sympy.diff(density, ujet(0)) - total_x(sympy.diff(density, ujet(1))))


def strip_ux_linear(cv: ConservedVector, eq: EvolutionEquation) -> ConservedVector:
    """Remove the part of F linear in u_x by subtracting the null divergence
    (D_x Phi, -D_t Phi) with Phi = int F_{u_x}|_{u_x=0} du"""
    density = cv.density
    coeff = sympy.diff(density, ujet(1)).subs(ujet(1), 0)
    if coeff.has(sympy.zoo, sympy.nan) or is_zero(coeff).vanishes:
        stripped = cv
    else:
        potential = integrate(simplify(coeff), ujet(0))
        stripped = ConservedVector(simplify(density - total_x(potential)),
                                   simplify(cv.flux + total_t(potential, eq)))
    trivial = all(is_zero(sympy.diff(stripped.density, ujet(k))).vanishes for k in (0, 1))
    return ConservedVector(stripped.density, stripped.flux, reduced=cv.reduced, trivial=trivial)


def _peel(cv: ConservedVector, eq: EvolutionEquation) -> ConservedVector:
    """Lower the density order by one via Phi = int F_{u_n} du_{n-1}"""
    order = order_of(cv.density)
    top = ujet(order)
    coeff = sympy.diff(cv.density, top)
    if not is_zero(sympy.diff(coeff, top)).vanishes:
        raise ReductionFailure('density %s is nonlinear in %s' % (to_text(cv.density), top))
    potential = integrate(coeff, ujet(order - 1))
    density = simplify(cv.density - total_x(potential))
    if order_of(density) >= order:
        raise ReductionFailure('peeling %s did not lower the order' % to_text(cv.density))
    return ConservedVector(density, cv.flux + total_t(potential, eq))


def reduce_order(cv: ConservedVector, eq: EvolutionEquation) -> ConservedVector:
    """Equivalent conserved vector with F = F(t,x,u,u_x) and
    G = -F_{u_x} H + G1(t,x,u,u_x)"""
    if not cv.is_conserved(eq):
        raise NotConserved('(%s, %s) is not conserved' % (to_text(cv.density), to_text(cv.flux)))
    while order_of(cv.density) >= 2:
        cv = _peel(cv, eq)
    cv = strip_ux_linear(cv, eq)
    return ConservedVector(simplify(cv.density), simplify(cv.flux), reduced=True,
                           trivial=cv.trivial)


def are_equivalent(cv1: ConservedVector, cv2: ConservedVector, eq: EvolutionEquation) -> bool:
    """Same conservation law: the difference reduces to a (t,x)-only vector"""
    for cv in (cv1, cv2):
        if not cv.is_conserved(eq):
            raise NotConserved('(%s, %s) is not conserved'
                               % (to_text(cv.density), to_text(cv.flux)))
    return reduce_order(cv1 - cv2, eq).trivial
