"""Diffusion-convection equations u_t = (A(u) u_x)_x + B(u) u_x

The space of conservation laws is decided by the arbitrary elements alone:

    A, B constant                  infinitely many, F = f u with the adjoint f
    B = c A + k, A' != 0, c = 0    u and (x + k t) u
    B = c A + k, A' != 0, c != 0   u and exp(c (x + k t)) u
    otherwise                      u only
"""

from typing import NamedTuple, Sequence, Tuple
import sympy

from ..base import Verdict
from ..base.exceptions import BadBinding, UnsupportedIntegrand
from ..claws import ADJOINT, ConservedVector
from ..classify import ContactTransformation
from ..expr.canonical import is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import (FunctionSymbol, LinearConstraint, backward_heat, depends_on_jets,
                            t, x, ujet)
from ..jet import EvolutionEquation, integrate, total_x
from .entry import Bindings, Expectations, bind, check_keys

GENERIC_A = FunctionSymbol('A', ('u',))
GENERIC_B = FunctionSymbol('B', ('u',))
COEFFICIENTS = (FunctionSymbol('f', ('x',)), FunctionSymbol('g', ('x',)),
                FunctionSymbol('h', ('x',)))


class Element(NamedTuple):
    """An arbitrary element as a function of u with its antiderivative"""
    value: sympy.Expr
    primitive: sympy.Expr
    functions: Tuple[FunctionSymbol, ...] = ()


def element(bindings: Bindings, key: str, generic: FunctionSymbol) -> Element:
    u = ujet(0)
    value = bind(bindings, key, (u,))
    if value is None:
        return Element(generic(u), generic.breve(u), (generic,))
    try:
        return Element(value, integrate(value, u))
    except UnsupportedIntegrand as e:
        raise BadBinding('%s = %s has no closed-form antiderivative' % (key, to_text(value))) from e


def elements(bindings: Bindings) -> Tuple[Element, Element]:
    """(A, B); B = 'A' binds B to the same element as A"""
    check_keys(bindings, ('A', 'B'))
    a = element(bindings, 'A', GENERIC_A)
    if is_zero(a.value).vanishes:
        raise BadBinding('A vanishes, the equation is not of second order')
    b = a if bindings.get('B') == 'A' else element(bindings, 'B', GENERIC_B)
    return a, b


def dc_rhs(a, b) -> sympy.Expr:
    ux = ujet(1)
    return total_x(a * ux) + b * ux


def _constant_laws(a: Element, b: Element):
    """A = a, B = k: (x + k t) u and the family f u with f_t + a f_xx - k f_x = 0"""
    u, ux = ujet(0), ujet(1)
    diffusion, drift = simplify(a.value), simplify(b.value)
    weight = x + drift * t
    flux = simplify(diffusion * u - weight * (diffusion * ux + drift * u))
    basis = [(ConservedVector(weight * u, flux), weight)]
    if diffusion == 1 and drift == 0:
        family = FunctionSymbol('h', ('t', 'x'), backward_heat())
    else:
        terms = [(-diffusion, 1, 2)] + ([(drift, 1, 1)] if drift != 0 else [])
        family = FunctionSymbol('h', ('t', 'x'), LinearConstraint(ADJOINT, 0, tuple(terms)))
    h = family(t, x)
    flux = diffusion * sympy.diff(h, x) * u - diffusion * h * ux - drift * h * u
    basis.append((ConservedVector(h * u, flux), h))
    return basis, (family,)


def _second_law(a: Element, c, k):
    u, ux = ujet(0), ujet(1)
    if c == 0:
        weight = x + k * t
        flux = a.primitive - weight * (a.value * ux + k * u)
    else:
        weight = sympy.exp(c * (x + k * t))
        flux = -weight * (a.value * ux + k * u)
    return ConservedVector(weight * u, simplify(flux)), weight


def _normalizing(a: Element, c, k):
    """Transformation taking the characteristics (1, lambda) to (1, x), with
    the right-hand side it produces"""
    u, ux = ujet(0), ujet(1)
    if c == 0:
        if k == 0:
            return ()
        tr = ContactTransformation(t, x + k * t, u, provenance='characteristic ratio')
        return ((tr, total_x(a.value * ux)),)
    if k != 0:
        return ()
    tr = ContactTransformation(t, sympy.exp(c * x), u * sympy.exp(-c * x) / c,
                               provenance='characteristic ratio')
    check_h = c * x * a.primitive.xreplace({u: c * x * u})
    return ((tr, total_x(total_x(check_h))),)


def diffusion_convection(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """u_t = (A u_x)_x + B u_x; A and B default to the generic A(u), B(u)"""
    u, ux = ujet(0), ujet(1)
    a, b = elements(bindings)
    functions = tuple(dict.fromkeys(a.functions + b.functions))
    eq = EvolutionEquation(dc_rhs(a.value, b.value), functions, name='dc')
    basis = [(ConservedVector(u, -a.value * ux - b.primitive), sympy.S.One)]

    slope_a, slope_b = sympy.diff(a.value, u), sympy.diff(b.value, u)
    if is_zero(slope_a).vanishes and is_zero(slope_b).vanishes:
        laws, families = _constant_laws(a, b)
        return eq, Expectations(Verdict.infinite(), tuple(basis + laws), (), families,
                                'linear: A and B constant')
    if not is_zero(slope_a).vanishes:
        ratio = simplify(slope_b / slope_a)
        if is_zero(sympy.diff(ratio, u)).vanishes:
            k = simplify(b.value - ratio * a.value)
            basis.append(_second_law(a, ratio, k))
            return eq, Expectations(Verdict.exact(2), tuple(basis), _normalizing(a, ratio, k),
                                    provenance='B = c A + k with c = %s, k = %s'
                                    % (to_text(ratio), to_text(k)))
    return eq, Expectations(Verdict.exact(1), tuple(basis), provenance='generic A, B')


def variable_coefficient_dc(bindings: Bindings) -> Tuple[EvolutionEquation, Expectations]:
    """f(x) u_t = (g(x) A(u) u_x)_x + h(x) B(u) u_x, no expectations attached"""
    check_keys(bindings, ('A', 'B', 'f', 'g', 'h'))
    a, b = elements({k: v for k, v in bindings.items() if k in ('A', 'B')})
    functions = list(a.functions + b.functions)
    coefficients = []
    for generic in COEFFICIENTS:
        value = bind(bindings, generic.name, (x,))
        if value is None:
            value = generic(x)
            functions.append(generic)
        elif is_zero(value).vanishes and generic.name != 'h':
            raise BadBinding('%s vanishes' % generic.name)
        coefficients.append(value)
    f, g, h = coefficients
    ux = ujet(1)
    rhs = (total_x(g * a.value * ux) + h * b.value * ux) / f
    eq = EvolutionEquation(rhs, tuple(dict.fromkeys(functions)), name='vcdc')
    return eq, Expectations(provenance='generator only')


class DcEquivalence(NamedTuple):
    """t~ = e4 t + e1, x~ = e5 x + e7 t + e2, u~ = e6 u + e3"""
    transformation: ContactTransformation
    eps: Tuple[sympy.Expr, ...]

    def act(self, a, b) -> Tuple[sympy.Expr, sympy.Expr]:
        """(A~, B~) written in u~, spelled u"""
        _, _, e3, e4, e5, e6, e7 = self.eps
        u = ujet(0)
        old = {u: (u - e3) / e6}
        a = sympy.sympify(a).xreplace(old)
        b = sympy.sympify(b).xreplace(old)
        return simplify(e5 ** 2 * a / e4), simplify((e5 * b - e7) / e4)


def dc_equivalence(eps: Sequence) -> DcEquivalence:
    """Element of the equivalence group of the diffusion-convection class"""
    if len(eps) != 7:
        raise BadBinding('expected seven group parameters, got %d' % len(eps))
    try:
        eps = tuple(sympy.sympify(e) for e in eps)
    except sympy.SympifyError as e:
        raise BadBinding('group parameters must be expressions: %s' % e) from e
    for e in eps:
        if e.has(t, x) or depends_on_jets(e):
            raise BadBinding('group parameter %s is not a constant' % to_text(e))
    e1, e2, e3, e4, e5, e6, e7 = eps
    if any(is_zero(e).vanishes for e in (e4, e5, e6)):
        raise BadBinding('e4 e5 e6 must not vanish')
    tr = ContactTransformation(e4 * t + e1, e5 * x + e7 * t + e2, e6 * ujet(0) + e3,
                               provenance='diffusion-convection equivalence')
    return DcEquivalence(tr, eps)
