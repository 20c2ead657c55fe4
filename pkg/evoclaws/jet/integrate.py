"""Quadrature staying inside the jet expression class"""

import sympy
from sympy.core.function import AppliedUndef

from ..base.exceptions import UnsupportedIntegrand
from ..expr.canonical import simplify
from ..expr.symbols import breve, derivative_at, is_breve


def _lower(derivative: sympy.Derivative, var):
    """Drop one derivative in var, None when var is not a plain slot"""
    application = derivative.expr
    if not isinstance(application, AppliedUndef):
        return None
    args = application.args
    if not all(isinstance(a, sympy.Symbol) for a in args) or len(set(args)) != len(args):
        return None
    counts = [(v, int(n)) for v, n in derivative.variable_count]
    if not any(v == var for v, _ in counts):
        return None
    remaining = [(v, n - 1 if v == var else n) for v, n in counts]
    remaining = [(v, n) for v, n in remaining if n]
    return sympy.Derivative(application, *remaining) if remaining else application


def _lower_subs(subs: sympy.Subs, var):
    """Primitive of A^(n)(w) for w linear in var: A^(n-1)(w) / w_var"""
    derivative, variables, point = subs.args
    if len(variables) != 1 or not isinstance(derivative, sympy.Derivative):
        return None
    application = derivative.expr
    if not isinstance(application, AppliedUndef) or application.args != tuple(variables):
        return None
    if len(derivative.variable_count) != 1:
        return None
    _, order = derivative.variable_count[0]
    slope = sympy.diff(point[0], var)
    if slope == 0 or slope.has(var):
        return None
    return derivative_at(application.func, int(order) - 1, point[0]) / slope


def _primitive(factor, var):
    """Antiderivative of a single function-symbol factor, or None"""
    if isinstance(factor, sympy.Derivative):
        return _lower(factor, var)
    if isinstance(factor, sympy.Subs):
        return _lower_subs(factor, var)
    if isinstance(factor, AppliedUndef) and not is_breve(factor.func):
        *rest, arg = factor.args
        if any(a.has(var) for a in rest):
            return None
        antiderivative = breve(factor.func)(*factor.args)
        if arg == var:
            return antiderivative
        slope = sympy.diff(arg, var)
        if slope != 0 and not slope.has(var):
            return antiderivative / slope
    return None


def _by_parts(factors, var):
    """Integrate P(var) * g for polynomial P and a single integrable g"""
    polynomial, rest = [], []
    for factor in factors:
        if not factor.atoms(AppliedUndef) and factor.is_polynomial(var):
            polynomial.append(factor)
        else:
            rest.append(factor)
    if len(rest) != 1:
        return None
    primitive = _primitive(rest[0], var)
    if primitive is None:
        return None
    weight = sympy.Mul(*polynomial)
    slope = sympy.diff(weight, var)
    if slope == 0:
        return weight * primitive
    return weight * primitive - integrate(slope * primitive, var)


def _term(term, var):
    coeff, dependent = term.as_independent(var, as_Add=False)
    if not dependent.has(var):
        return term * var
    primitive = _by_parts(sympy.Mul.make_args(dependent), var)
    if primitive is not None:
        return coeff * primitive
    result = sympy.integrate(dependent, var)
    if result.has(sympy.Integral) or simplify(sympy.diff(result, var) - dependent) != 0:
        raise UnsupportedIntegrand('no closed-form antiderivative of %s in %s' % (dependent, var))
    return coeff * result


def integrate(expr, var) -> sympy.Expr:
    """Antiderivative of expr in var. Integrals of opaque functions in their
    last slot become antiderivative atoms; anything leaving the expression
    class raises UnsupportedIntegrand."""
    expr = sympy.expand(sympy.sympify(expr))
    return sympy.Add(*[_term(term, var) for term in sympy.Add.make_args(expr)])
