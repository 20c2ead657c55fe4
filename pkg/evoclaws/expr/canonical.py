"""Canonical forms, zero tests and numeric evaluation of jet expressions"""

import random
from fractions import Fraction
from typing import Dict, Mapping, Optional
import sympy
from sympy.core.function import AppliedUndef

from ..base.exceptions import DivisionByZero, DomainError, EvaluationError, UnassignedSymbol
from ..base.helpers import random_coefficient, random_rational
from ..base.types import Zero, ZeroTest
from .symbols import applications, constraint_of, is_breve, slot_symbols

ZERO_SAMPLES = 32
TOLERANCE = 1e-9
DEFAULT_SEED = 0
# digits used for evalf, above double precision to keep cancellation noise small
PRECISION = 30
# constraint rewriting terminates quickly, this caps pathological inputs
MAX_REWRITES = 64
# exp rates of backward heat solutions exp(k*w - k^2*t)
HEAT_RATES = (sympy.Rational(1, 2), sympy.Rational(-1, 3))


def simplify(expr) -> sympy.Expr:
    """Canonical rational form: one fraction, numerator and denominator coprime,
    products of exponentials merged into one"""
    expr = sympy.powsimp(sympy.sympify(expr), combine='exp', deep=True)
    return sympy.cancel(sympy.together(expr))


def _reduce_derivative(derivative: sympy.Derivative) -> Optional[sympy.Expr]:
    """Trade one lead derivative of a constrained function for its right-hand side"""
    application = derivative.expr
    if not isinstance(application, AppliedUndef):
        return None
    constraint = constraint_of(application.func)
    if constraint is None:
        return None
    args = application.args
    if not all(isinstance(a, sympy.Symbol) for a in args) or len(set(args)) != len(args):
        return None
    lead = args[constraint.lead]
    counts = [(var, int(n)) for var, n in derivative.variable_count]
    if not any(var == lead and n >= 1 for var, n in counts):
        return None
    remaining = [(var, n - 1 if var == lead else n) for var, n in counts]
    result = constraint.rhs(application)
    for var, n in remaining:
        if n:
            result = sympy.diff(result, var, n)
    return result


def apply_constraints(expr) -> sympy.Expr:
    """Eliminate lead derivatives of constrained function symbols"""
    expr = sympy.sympify(expr)
    for _ in range(MAX_REWRITES):
        mapping = {}
        for derivative in expr.atoms(sympy.Derivative):
            reduced = _reduce_derivative(derivative)
            if reduced is not None:
                mapping[derivative] = reduced
        if not mapping:
            break
        expr = expr.xreplace(mapping)
    return expr


def canonical(expr) -> sympy.Expr:
    return simplify(apply_constraints(expr))


def _polynomial_body(slots, rng: random.Random) -> sympy.Expr:
    """Random polynomial plus an exponential, so no finite set of
    derivative identities holds by accident"""
    body = sympy.Integer(1)
    for slot in slots:
        for power in range(1, 4):
            body += sympy.Rational(random_coefficient(rng)) * slot ** power
        body += sympy.Rational(random_coefficient(rng)) * sympy.exp(slot / rng.randint(2, 5))
    if len(slots) > 1:
        body += sympy.Rational(random_coefficient(rng)) * sympy.Mul(*slots)
    return body


def heat_polynomials(time, space):
    """Solutions of f_t + f_ww = 0 up to degree four"""
    return (sympy.Integer(1), space, space ** 2 - 2 * time,
            space ** 3 - 6 * time * space,
            space ** 4 - 12 * time * space ** 2 + 12 * time ** 2)


def _constrained_body(func, rng: random.Random) -> Optional[sympy.Expr]:
    constraint = constraint_of(func)
    slots = slot_symbols(func)
    if not constraint.is_backward_heat or len(slots) != 2:
        return None
    time, space = slots[constraint.lead], slots[constraint.terms[0][1]]
    body = sum(sympy.Rational(random_coefficient(rng)) * p
               for p in heat_polynomials(time, space))
    for rate in HEAT_RATES:
        body += sympy.Rational(random_coefficient(rng)) * sympy.exp(rate * space - rate ** 2 * time)
    return body


def draw_functions(expr, rng: random.Random) -> Optional[Dict]:
    """Random admissible body (a sympy Lambda) for every function symbol in
    expr; None when some constrained symbol has no sampler"""
    arity = {}
    for app in applications(expr):
        arity.setdefault(app.func, len(app.args))
    bodies = {}
    for func in sorted(arity, key=lambda f: f.__name__):
        if is_breve(func):
            continue
        body = _body(func, arity[func], rng)
        if body is None:
            return None
        bodies[func] = body
    for func in sorted(arity, key=lambda f: f.__name__):
        if not is_breve(func):
            continue
        base = func.antiderivative_of
        if base not in bodies:
            bodies[base] = _body(base, arity[func], rng)
            if bodies[base] is None:
                return None
        variables = bodies[base].variables
        bodies[func] = sympy.Lambda(variables,
                                    sympy.integrate(bodies[base].expr, variables[-1]))
    return bodies


def _body(func, count: int, rng: random.Random) -> Optional[sympy.Lambda]:
    slots = slot_symbols(func) or tuple(sympy.Dummy('s%d' % i) for i in range(count))
    body = _constrained_body(func, rng) if constraint_of(func) else _polynomial_body(slots, rng)
    return None if body is None else sympy.Lambda(slots, body)


def substitute_functions(expr, bodies: Mapping) -> sympy.Expr:
    """Replace function symbols by concrete bodies and carry out derivatives"""
    expr = sympy.sympify(expr)
    for func in sorted(bodies, key=lambda f: (is_breve(f), f.__name__)):
        expr = expr.subs(func, bodies[func])
    return expr.doit()


def _exact(value) -> sympy.Expr:
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


def _resolve(point: Mapping, expr: sympy.Expr) -> Dict:
    """Accept both symbols and their printed names as keys"""
    by_name = {str(s): s for s in expr.free_symbols}
    mapping = {}
    for key, value in point.items():
        if isinstance(key, str):
            key = by_name.get(key, sympy.Symbol(key, real=True))
        mapping[key] = _exact(value)
    return mapping


def evaluate(expr, point: Mapping, functions: Mapping = None) -> float:
    """Numeric value of expr at point, exact rational arithmetic first.
    functions maps undefined function classes to sympy Lambdas."""
    expr = sympy.sympify(expr)
    if functions:
        expr = substitute_functions(expr, functions)
    mapping = _resolve(point, expr)

    for log in expr.atoms(sympy.log):
        arg = log.args[0].xreplace(mapping)
        if arg.is_number and arg.is_extended_real and arg <= 0:
            raise DomainError('ln of nonpositive value %s' % arg)
    for power in expr.atoms(sympy.Pow):
        base, exponent = power.args
        if exponent.is_Rational and not exponent.is_Integer and exponent.q % 2 == 0:
            value = base.xreplace(mapping)
            if value.is_number and value.is_extended_real and value < 0:
                raise DomainError('even root of negative value %s' % value)

    value = expr.xreplace(mapping)
    if value.atoms(AppliedUndef):
        raise UnassignedSymbol('function symbols left in %s' % value)
    missing = value.free_symbols
    if missing:
        raise UnassignedSymbol('no value for %s' % ', '.join(sorted(map(str, missing))))
    if value.has(sympy.zoo, sympy.nan, sympy.oo, -sympy.oo):
        raise DivisionByZero('denominator vanishes at %s' % dict(point))
    number = value.evalf(PRECISION)
    real, imag = number.as_real_imag()
    if imag != 0 and abs(imag) > TOLERANCE:
        raise DomainError('value %s is not real' % number)
    try:
        return float(real)
    except TypeError as e:
        raise EvaluationError('cannot evaluate %s' % value) from e


def sample_zero(expr, samples: int = ZERO_SAMPLES, seed: int = DEFAULT_SEED,
                tolerance: float = TOLERANCE) -> ZeroTest:
    """Randomized half of the zero test: NO with a witness, else UNKNOWN"""
    rng = random.Random(seed)
    bodies = draw_functions(expr, rng)
    if bodies is None:
        return ZeroTest(Zero.UNKNOWN)
    concrete = substitute_functions(expr, bodies)
    if concrete.atoms(AppliedUndef):
        return ZeroTest(Zero.UNKNOWN)
    symbols = sorted(concrete.free_symbols, key=str)
    taken = attempts = 0
    while taken < samples and attempts < 4 * samples:
        attempts += 1
        point = {s: random_rational(rng) for s in symbols}
        try:
            value = evaluate(concrete, point)
        except EvaluationError:
            continue
        taken += 1
        if abs(value) > tolerance:
            witness = {str(s): str(v) for s, v in point.items()}
            if bodies:
                witness['functions'] = {f.__name__: str(b) for f, b in bodies.items()}
            return ZeroTest(Zero.NO, witness=witness, samples=taken)
    return ZeroTest(Zero.UNKNOWN, samples=taken)


def is_zero(expr, samples: int = ZERO_SAMPLES, seed: int = DEFAULT_SEED,
            tolerance: float = TOLERANCE) -> ZeroTest:
    """YES if the canonical form vanishes, NO with a witness when a sample
    does not, UNKNOWN (probably zero) otherwise"""
    reduced = apply_constraints(expr)
    if simplify(reduced) == 0:
        return ZeroTest(Zero.YES)
    return sample_zero(reduced, samples=samples, seed=seed, tolerance=tolerance)
