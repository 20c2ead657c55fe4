"""Jet-space operators: total derivatives, the Euler operator and
divergence inversion, plus the structural predicates on u_t = H"""

from typing import Dict, List, Sequence
import sympy

from ..base.exceptions import DegenerateEquation, NotADivergence
from ..base.types import ZeroTest
from ..expr.canonical import is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import FunctionSymbol, jet_order, order_of, tjet_order, ujet, utjet, t, x
from .integrate import integrate

__all__ = ['EvolutionEquation', 'total_x', 'total_t', 'total_t_offshell', 'euler',
           'antiderivative_x', 'divergence_test', 'is_divergence', 'fractional_linearity_test',
           'is_fractionally_linear', 'is_fractionally_linear_u2', 'structural_flags', 'integrate']


def total_x(expr) -> sympy.Expr:
    """D_x = d/dx + sum u_{k+1} d/du_k, advancing off-shell u_t x..x symbols too"""
    expr = sympy.sympify(expr)
    result = sympy.diff(expr, x)
    for symbol in expr.free_symbols:
        order = jet_order(symbol)
        if order is not None:
            result += sympy.diff(expr, symbol) * ujet(order + 1)
            continue
        order = tjet_order(symbol)
        if order is not None:
            result += sympy.diff(expr, symbol) * utjet(order + 1)
    return result


def total_x_power(expr, times: int) -> sympy.Expr:
    for _ in range(times):
        expr = total_x(expr)
    return expr


class EvolutionEquation:
    """u_t = H(t, x, u, u_x, u_xx) with H_{u_xx} != 0"""

    def __init__(self, rhs, functions: Sequence[FunctionSymbol] = (), name: str = None):
        self.rhs = sympy.sympify(rhs)
        self.functions = tuple(functions)
        self.name = name
        if order_of(self.rhs) > 2:
            raise DegenerateEquation('right-hand side %s has order %d'
                                     % (to_text(self.rhs), order_of(self.rhs)))
        if any(tjet_order(s) is not None for s in self.rhs.free_symbols):
            raise DegenerateEquation('right-hand side may not contain t-derivatives of u')
        if is_zero(sympy.diff(self.rhs, ujet(2))).vanishes:
            raise DegenerateEquation('right-hand side %s does not depend on u_xx'
                                     % to_text(self.rhs))
        flags = structural_flags(self.rhs)
        self.quasi_linear = flags['quasi_linear']  # type: bool
        self.linear = flags['linear']  # type: bool
        self.fractionally_linear = is_fractionally_linear_u2(self.rhs)  # type: bool
        self._derivatives = [self.rhs]  # type: List[sympy.Expr]

    def __repr__(self):
        return 'u_t = %s' % to_text(self.rhs)

    def dx(self, times: int) -> sympy.Expr:
        """D_x^times H, cached"""
        while len(self._derivatives) <= times:
            self._derivatives.append(total_x(self._derivatives[-1]))
        return self._derivatives[times]

    @property
    def flags(self) -> Dict[str, bool]:
        return dict(quasi_linear=self.quasi_linear, linear=self.linear,
                    fractionally_linear=self.fractionally_linear)


def total_t(expr, eq: EvolutionEquation) -> sympy.Expr:
    """On-shell D_t: every u_k,t becomes D_x^k H"""
    expr = sympy.sympify(expr)
    result = sympy.diff(expr, t)
    for symbol in expr.free_symbols:
        order = jet_order(symbol)
        if order is not None:
            result += sympy.diff(expr, symbol) * eq.dx(order)
    return result


def total_t_offshell(expr) -> sympy.Expr:
    """D_t with u_k,t kept as the free symbols u_t x..x"""
    expr = sympy.sympify(expr)
    result = sympy.diff(expr, t)
    for symbol in expr.free_symbols:
        order = jet_order(symbol)
        if order is not None:
            result += sympy.diff(expr, symbol) * utjet(order)
    return result


def euler(expr) -> sympy.Expr:
    """Variational derivative in u: sum (-D_x)^k d/du_k"""
    expr = sympy.sympify(expr)
    result = sympy.S.Zero
    for k in range(order_of(expr) + 1):
        result += (-1) ** k * total_x_power(sympy.diff(expr, ujet(k)), k)
    return result


def antiderivative_x(expr, check: bool = True) -> sympy.Expr:
    """f with D_x f = expr, peeling off the top-order linear coefficient
    until only a (t, x) remainder is left"""
    expr = sympy.sympify(expr)
    if check and not is_divergence(expr):
        raise NotADivergence('%s is not a total x-derivative' % to_text(expr))
    result = sympy.S.Zero
    remainder = simplify(expr)
    order = order_of(remainder)
    while order >= 1:
        top = ujet(order)
        coeff = sympy.diff(remainder, top)
        if not is_zero(sympy.diff(coeff, top)).vanishes:
            raise NotADivergence('%s is nonlinear in %s' % (to_text(remainder), top))
        coeff = simplify(coeff.subs(top, 0)) if coeff.has(top) else coeff
        potential = integrate(coeff, ujet(order - 1))
        result += potential
        remainder = simplify(remainder - total_x(potential))
        lower = order_of(remainder)
        if lower >= order:
            raise NotADivergence('peeling %s did not lower the order' % to_text(expr))
        order = lower
    if order == 0:
        if not is_zero(sympy.diff(remainder, ujet(0))).vanishes:
            raise NotADivergence('%s leaves a u-dependent remainder' % to_text(expr))
        remainder = simplify(remainder.subs(ujet(0), 0))
    if remainder != 0:
        result += integrate(remainder, x)
    return result


def divergence_test(expr) -> ZeroTest:
    """Zero test of euler(expr)"""
    return is_zero(euler(expr))


def is_divergence(expr) -> bool:
    """True when expr is (probably) a total x-derivative in the current variables"""
    return divergence_test(expr).vanishes


def fractional_linearity_test(expr, var) -> ZeroTest:
    """Zero test deciding (a w + b) / (c w + d) in w = var: the second
    derivative, else the Schwarzian f''' f' - 3/2 f''^2"""
    expr = sympy.sympify(expr)
    first = sympy.diff(expr, var)
    second = sympy.diff(first, var)
    test = is_zero(second)
    if test.vanishes:
        return test
    return is_zero(sympy.diff(second, var) * first - sympy.Rational(3, 2) * second ** 2)


def is_fractionally_linear(expr, var) -> bool:
    return fractional_linearity_test(expr, var).vanishes


def is_fractionally_linear_u2(rhs) -> bool:
    """H = (a u_xx + b) / (c u_xx + d)"""
    return is_fractionally_linear(rhs, ujet(2))


def structural_flags(rhs) -> Dict[str, bool]:
    """quasi_linear: H_{u_xx u_xx} = 0; linear: H affine in (u, u_x, u_xx)"""
    rhs = sympy.sympify(rhs)
    jets = [ujet(k) for k in range(3)]
    quasi_linear = is_zero(sympy.diff(rhs, jets[2], 2)).vanishes
    linear = quasi_linear and order_of(rhs) <= 2 and all(
        is_zero(sympy.diff(rhs, a, b)).vanishes
        for i, a in enumerate(jets) for b in jets[i:])
    return dict(quasi_linear=quasi_linear, linear=linear)
