"""Polynomial-ansatz solver for the determining equations

The density is taken polynomial in u, u_x with unknown coefficient functions
of (t, x) and substituted into the determining system. The flux unknown is
integrated out in u_x, u and x, splitting over the jet variables it no longer
depends on; when that fails the condition euler(F_t + lambda H) = 0 is split
instead. The resulting linear system in (t, x) is reduced by elimination,
splitting, ODE integration and recognition of first-order evolution
constraints until nothing changes.
"""

import re
import itertools
from typing import List, Optional, Sequence, Tuple
import sympy
from sympy.core.function import AppliedUndef

from ..base import set_logger
from ..base.exceptions import JetError, SplitFailure
from ..expr.canonical import apply_constraints, canonical, is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import (BACKWARD_HEAT, FunctionSymbol, LinearConstraint,
                            jet_symbols, t, x, ujet)
from ..jet import EvolutionEquation, antiderivative_x, euler, integrate
from .determining import Ansatz, DeterminingSystem, split, unknown
from .vectors import Characteristic, ConservedVector, characteristic_of

DEFAULT_DEGREE = 2
COMPLETE = 'complete_for_ansatz'
HEURISTIC = 'heuristic'
ADJOINT = 'adjoint'
CONSTANT = re.compile(r'^C\d+$')
# variables the flux unknown is integrated out in, in order
FLUX_ORDER = (ujet(1), ujet(0), x)

logger = set_logger('solver')


def density_monomials(eq: EvolutionEquation, ansatz: Ansatz, degree: int) -> List[sympy.Expr]:
    """u^i for i >= 1 and u^i u_x^j for j >= 2: the u_x-linear and (t,x)
    parts are trivial up to equivalence. Quasi-linear equations only need
    densities in u."""
    u, ux = ujet(0), ujet(1)
    has_u = u in ansatz.density
    monomials = [u ** i for i in range(1, degree + 1)] if has_u else []
    if ux in ansatz.density and not eq.quasi_linear:
        for j in range(2, degree + 1):
            for i in range(degree - j + 1 if has_u else 1):
                monomials.append(u ** i * ux ** j)
    return monomials


def jet_generators(expr, unknowns: Sequence) -> List[sympy.Expr]:
    """Jet variables and jet-dependent atoms, to be split over independently"""
    heads = {getattr(k, 'func', k) for k in unknowns}
    gens = set(jet_symbols(expr))
    for atom in expr.atoms(sympy.Function, sympy.Derivative, sympy.Pow):
        if not jet_symbols(atom):
            continue
        if isinstance(atom, sympy.Pow):
            if not atom.exp.is_Integer:
                gens.add(atom)
        elif isinstance(atom, sympy.Derivative):
            if getattr(atom.expr, 'func', None) not in heads:
                gens.add(atom)
        elif atom.func not in heads:
            gens.add(atom)
    return sorted(gens, key=sympy.default_sort_key)


class TxSystem:
    """Linear homogeneous equations in unknown functions of (t, x) and
    unknown constants, together with the density they parametrize"""

    def __init__(self, equations: Sequence[sympy.Expr], unknowns: Sequence,
                 density: sympy.Expr, family_names: Sequence[str] = ()):
        self.unknowns = list(unknowns)
        self.density = density
        self.families = []  # type: List[FunctionSymbol]
        self.equations = []  # type: List[sympy.Expr]
        self._fresh = itertools.count()
        self._family_names = ('h%d' % i if i else 'h' for i in itertools.count())
        self._taken = set(family_names)
        for equation in equations:
            self._add(equation)

    def __repr__(self):
        return '<TxSystem %d equations, %d unknowns>' % (len(self.equations), len(self.unknowns))

    def involved(self, expr) -> List:
        return [k for k in self.unknowns if expr.has(k)]

    def _normalize(self, expr) -> Optional[sympy.Expr]:
        expr = sympy.expand(sympy.numer(sympy.together(expr)))
        if expr == 0:
            return None
        factored = sympy.factor_terms(expr)
        if factored.is_Mul:
            kept = [f for f in factored.args if self.involved(f)]
            expr = sympy.expand(sympy.Mul(*kept)) if kept else expr
        return expr

    def _add(self, expr):
        expr = self._normalize(expr)
        if expr is not None and expr not in self.equations:
            self.equations.append(expr)

    @staticmethod
    def replace(expr, target, value):
        if isinstance(target, AppliedUndef):
            return expr.subs(target.func, sympy.Lambda(target.args, value)).doit()
        return expr.xreplace({target: value})

    def substitute(self, target, value, new_unknowns: Sequence = ()):
        logger.debug('%s -> %s', to_text(target), to_text(value))
        self.unknowns = [k for k in self.unknowns if k != target] + list(new_unknowns)
        self.density = self.replace(self.density, target, value)
        equations, self.equations = self.equations, []
        for equation in equations:
            self._add(self.replace(equation, target, value))

    def fresh_unknown(self, variables: Sequence[sympy.Symbol]):
        name = 'c%d' % next(self._fresh)
        return sympy.Function(name)(*variables) if variables else sympy.Symbol(name, real=True)

    @staticmethod
    def _variables(target) -> set:
        return set(target.args) if isinstance(target, AppliedUndef) else set()

    def _fits(self, target, value) -> bool:
        """value may only depend on the variables target depends on"""
        allowed = self._variables(target)
        if not ({t, x} & value.free_symbols) <= allowed:
            return False
        return all(self._variables(k) <= allowed for k in self.involved(value))

    def eliminate(self) -> bool:
        """Solve one equation algebraically for an underived unknown"""
        ordered = sorted(self.equations, key=lambda e: (len(self.involved(e)), sympy.count_ops(e)))
        for equation in ordered:
            for target in self.involved(equation):
                derived = any(d.expr == target for d in equation.atoms(sympy.Derivative))
                if derived:
                    continue
                coeff = sympy.diff(equation, target)
                if coeff == 0 or self.involved(coeff):
                    continue
                rest = sympy.expand(equation - coeff * target)
                if rest.has(target):
                    continue
                value = simplify(-rest / coeff)
                if self._fits(target, value):
                    self.substitute(target, value)
                    return True
        return False

    def split_variables(self) -> bool:
        """Split equations polynomially in t or x when no unknown in them
        depends on that variable"""
        for index, equation in enumerate(self.equations):
            involved = self.involved(equation)
            for var in (t, x):
                if not equation.has(var) or any(var in self._variables(k) for k in involved):
                    continue
                gens = [var] + sorted(
                    (a for a in equation.atoms(sympy.Function)
                     if a.has(var) and not self.involved(a)), key=sympy.default_sort_key)
                try:
                    poly = sympy.Poly(equation, *gens)
                except sympy.PolynomialError:
                    continue
                coeffs = [c for c in poly.coeffs() if c != 0]
                if coeffs == [equation]:
                    continue
                del self.equations[index]
                for coeff in coeffs:
                    self._add(coeff)
                return True
        return False

    def integrate_ode(self) -> bool:
        """Integrate an equation in one unknown differentiated in one variable"""
        for equation in self.equations:
            involved = self.involved(equation)
            if len(involved) != 1 or not isinstance(involved[0], AppliedUndef):
                continue
            target = involved[0]
            variables = {v for d in equation.atoms(sympy.Derivative) if d.expr == target
                         for v in d.variables}
            if len(variables) != 1:
                continue
            var = variables.pop()
            trial = sympy.Function('g')
            ode = equation.subs(target.func, sympy.Lambda(target.args, trial(var))).doit()
            try:
                solution = sympy.dsolve(ode, trial(var))
            except (NotImplementedError, ValueError) as e:
                logger.debug('dsolve gave up on %s: %s', to_text(ode), e)
                continue
            if isinstance(solution, list) or solution.rhs.has(trial) \
                    or solution.rhs.has(sympy.Integral):
                continue
            others = [v for v in target.args if v != var]
            constants = sorted((s for s in solution.rhs.free_symbols if CONSTANT.match(s.name)),
                               key=lambda s: s.name)
            fresh = [self.fresh_unknown(others) for _ in constants]
            value = solution.rhs.xreplace(dict(zip(constants, fresh)))
            self.substitute(target, value, fresh)
            return True
        return False

    def _family_name(self) -> str:
        for name in self._family_names:
            if name not in self._taken:
                self._taken.add(name)
                return name

    def detect_family(self) -> bool:
        """a f_t + sum b_k f_{x^k} = 0 in an unknown occurring nowhere else
        becomes a constrained function family"""
        for equation in self.equations:
            involved = self.involved(equation)
            if len(involved) != 1 or not isinstance(involved[0], AppliedUndef):
                continue
            target = involved[0]
            if target.args != (t, x):
                continue
            if any(other.has(target) for other in self.equations if other is not equation):
                continue
            atoms = [target] + [d for d in equation.atoms(sympy.Derivative) if d.expr == target]
            parts = sympy.collect(equation, atoms, evaluate=False)
            if sympy.S.One in parts:
                continue
            lead, terms = None, []
            for atom, coeff in parts.items():
                if self.involved(coeff):
                    break
                counts = dict(atom.variable_count) if atom != target else {}
                order_t, order_x = counts.get(t, 0), counts.get(x, 0)
                if (order_t, order_x) == (1, 0):
                    lead = coeff
                elif order_t == 0:
                    terms.append((coeff, order_x))
                else:
                    break
            else:
                if lead is None:
                    continue
                rhs = tuple((simplify(-coeff / lead), 1, order) for coeff, order in
                            sorted(terms, key=lambda term: term[1]))
                name = BACKWARD_HEAT if rhs == ((sympy.Integer(-1), 1, 2),) else ADJOINT
                symbol = FunctionSymbol(self._family_name(), ('t', 'x'),
                                        LinearConstraint(name, 0, rhs))
                self.equations.remove(equation)
                self.unknowns.remove(target)
                self.density = self.replace(self.density, target, symbol(t, x))
                self.families.append(symbol)
                logger.debug('family %r', symbol)
                return True
        return False

    def run(self, limit: int = 200) -> 'TxSystem':
        for _ in range(limit):
            if not (self.eliminate() or self.split_variables()
                    or self.integrate_ode() or self.detect_family()):
                break
        return self

    @property
    def unresolved(self) -> List:
        return [k for k in self.unknowns if any(e.has(k) for e in self.equations)]

    @property
    def parameters(self) -> List:
        blocked = self.unresolved
        return [k for k in self.unknowns if k not in blocked]


def _split_outside(equations, heads: Sequence, signature: set, generators: List):
    """Split every equation over the jet generators not covered by signature"""
    pieces = []
    for equation in equations:
        gens = [g for g in jet_generators(equation, heads)
                if not set(jet_symbols(g)) <= signature]
        generators.extend(g for g in gens if g not in generators)
        pieces += [piece for piece, _ in split(equation, gens)]
    return pieces


def _isolate(equations, target, var):
    """(index, value) with d target / d var = value, taken from an equation in
    which no other derivative of target occurs"""
    wanted = sympy.Derivative(target, var)
    for index, equation in enumerate(equations):
        found = {d for d in equation.atoms(sympy.Derivative) if d.expr == target}
        if found != {wanted}:
            continue
        coeff = sympy.expand(sympy.diff(equation, wanted))
        rest = equation.xreplace({wanted: sympy.S.Zero})
        if coeff == 0 or coeff.has(target) or rest.has(target):
            continue
        return index, simplify(-rest / coeff)
    return None


def eliminate_flux(system: DeterminingSystem, density,
                   coefficients: Sequence) -> Tuple[List[sympy.Expr], List[sympy.Expr]]:
    """Substitute the density ansatz into the determining equations and
    integrate the flux unknown out, in u_x, then u, then x. Returns the
    equations left on the coefficient functions and every generator split over."""
    target, current = system.unknowns
    equations = [TxSystem.replace(e, target, density) for e in system.equations]
    if not isinstance(current, AppliedUndef):
        current = None
    generators, successors = [], itertools.count(2)
    while True:
        signature = set(current.args) if current is not None else set()
        heads = list(coefficients) + ([current] if current is not None else [])
        equations = _split_outside(equations, heads, signature, generators)
        if current is None or not any(e.has(current) for e in equations):
            return [e for e in equations if e != 0], generators
        for var in FLUX_ORDER:
            found = _isolate(equations, current, var) if var in signature else None
            if found is not None:
                break
        else:
            raise SplitFailure('no equation isolates a derivative of %s' % to_text(current))
        index, value = found
        if var == x:
            # the flux is a quadrature in x; the rest only sees its x-derivative
            del equations[index]
            equations = [e.xreplace({sympy.Derivative(current, x): value}) for e in equations]
            if any(e.has(current) for e in equations):
                raise SplitFailure('%s is overdetermined' % to_text(current))
            current = None
            continue
        remaining = tuple(a for a in current.args if a != var)
        successor = unknown('G%d' % next(successors), remaining)
        replacement = integrate(value, var) + successor
        logger.debug('%s = %s', to_text(current), to_text(replacement))
        equations = [TxSystem.replace(e, current, replacement) for e in equations]
        current = successor if isinstance(successor, AppliedUndef) else None


class Solution:
    """Basis of conservation laws found within the ansatz"""
    __slots__ = ['basis', 'completeness', 'families', 'residual', 'failures']

    def __init__(self, basis: List[Tuple[ConservedVector, Characteristic]], completeness: str,
                 families: List[FunctionSymbol] = (), residual: List[sympy.Expr] = (),
                 failures: List[str] = ()):
        self.basis = basis
        self.completeness = completeness  # type: str
        self.families = list(families)  # type: List[FunctionSymbol]
        self.residual = list(residual)  # type: List[sympy.Expr]
        self.failures = list(failures)  # type: List[str]

    def __repr__(self):
        return '<Solution %d laws, %s>' % (len(self.basis), self.completeness)

    def __len__(self):
        return len(self.basis)


def flux_of(density, eq: EvolutionEquation, multiplier=None) -> sympy.Expr:
    """G = -F_{u_x} H + G1 with D_x G1 = -(F_t + lambda H)"""
    if multiplier is None:
        multiplier = characteristic_of(ConservedVector(density, 0)).multiplier
    source = apply_constraints(sympy.diff(density, t) + multiplier * eq.rhs)
    flux_part = -antiderivative_x(source, check=False)
    return simplify(-sympy.diff(density, ujet(1)) * eq.rhs + flux_part)


def _degrees(density) -> Tuple[int, int]:
    try:
        poly = sympy.Poly(density, ujet(1), ujet(0))
    except sympy.PolynomialError:
        return 99, 99
    return poly.degree(ujet(1)), poly.degree(ujet(0))


def _leading_number(density):
    try:
        terms = sympy.Poly(density, ujet(1), ujet(0)).terms()
    except sympy.PolynomialError:
        return sympy.S.One
    number, _ = terms[0][1].as_coeff_Mul()
    return number if number != 0 else sympy.S.One


def basis_entry(density, eq: EvolutionEquation) -> Optional[Tuple[ConservedVector, Characteristic]]:
    """Normalized (cv, lambda) for a density, None when the law is trivial"""
    density = simplify(density)
    multiplier = apply_constraints(characteristic_of(ConservedVector(density, 0)).multiplier)
    if is_zero(multiplier).vanishes:
        return None
    scale = _leading_number(density)
    density, multiplier = simplify(density / scale), simplify(multiplier / scale)
    cv = ConservedVector(density, flux_of(density, eq, multiplier), reduced=True)
    return cv, Characteristic(multiplier)


def _sort_key(entry):
    density = entry[0].density
    return _degrees(density) + (to_text(density),)


def _euler_conditions(density, eq: EvolutionEquation,
                      coefficients: Sequence) -> Tuple[List[sympy.Expr], List[sympy.Expr]]:
    """Split euler(F_t + lambda H) = 0, free of the flux altogether"""
    multiplier = characteristic_of(ConservedVector(density, 0)).multiplier
    condition = euler(sympy.diff(density, t) + multiplier * eq.rhs)
    gens = jet_generators(condition, coefficients)
    return [c for c, _ in split(condition, gens)], gens


def solve_determining(system: DeterminingSystem, degree: int = DEFAULT_DEGREE,
                      monomials: Sequence[sympy.Expr] = None) -> Solution:
    """Basis of the conservation laws whose density is polynomial of the
    given degree in u, u_x with (t,x) coefficient functions"""
    eq, ansatz = system.equation, system.ansatz
    if monomials is None:
        monomials = density_monomials(eq, ansatz, degree)
    variables = [v for v in (t, x) if v in ansatz.density]
    unknowns, density = [], sympy.S.Zero
    for index, monomial in enumerate(monomials):
        coeff = sympy.Function('f%d' % index)(*variables) if variables \
            else sympy.Symbol('f%d' % index, real=True)
        unknowns.append(coeff)
        density += coeff * monomial
    if not unknowns:
        return Solution([], COMPLETE)

    try:
        equations, gens = eliminate_flux(system, density, unknowns)
    except (SplitFailure, JetError) as e:
        logger.debug('flux elimination failed, splitting the Euler condition: %s', e)
        try:
            equations, gens = _euler_conditions(density, eq, unknowns)
        except SplitFailure as e:
            logger.warning('%s', e)
            return Solution([], HEURISTIC, failures=[str(e)])
    completeness = COMPLETE
    if any(isinstance(g, sympy.Pow) for g in gens):
        completeness = HEURISTIC

    taken = [f.name for f in eq.functions]
    tx = TxSystem(equations, unknowns, density, taken).run()
    residual = list(tx.equations)
    if residual:
        completeness = HEURISTIC
        logger.info('%d determining equations left unsolved', len(residual))

    basis, failures = [], []
    parameters = tx.parameters + [f(t, x) for f in tx.families]
    for parameter in parameters:
        chosen = tx.density
        for other in tx.unknowns:
            if other != parameter:
                chosen = tx.replace(chosen, other, sympy.S.Zero)
        if isinstance(parameter, sympy.Symbol):
            chosen = chosen.xreplace({parameter: 1})
        for family in tx.families:
            if family(t, x) != parameter:
                chosen = tx.replace(chosen, family(t, x), sympy.S.Zero)
        if canonical(chosen) == 0:
            continue
        try:
            entry = basis_entry(chosen, eq)
        except JetError as e:
            failures.append(str(e))
            completeness = HEURISTIC
            continue
        if entry is not None:
            basis.append(entry)
    basis.sort(key=_sort_key)
    return Solution(basis, completeness, tx.families, residual, failures)