"""Contact and point transformations of u_t = H and their action on
conserved vectors"""

from typing import Dict, List
import sympy

from ..base import set_logger
from ..base.exceptions import DegenerateTransformation, InversionFailure
from ..claws import ConservedVector
from ..expr.canonical import is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import order_of, ujet, t, x
from ..jet import EvolutionEquation, total_t, total_x

POINT = 'point'
CONTACT = 'contact'

logger = set_logger('transform')


def _substitute(expr, mapping: Dict) -> sympy.Expr:
    """Simultaneous substitution; derivatives of function symbols at
    substituted arguments become Subs objects"""
    try:
        return sympy.sympify(expr).subs(mapping, simultaneous=True)
    except (ValueError, TypeError) as e:
        raise InversionFailure('cannot substitute into %s: %s' % (to_text(expr), e)) from e


class ContactTransformation:
    """t~ = T(t), x~ = X(t,x,u,u_x), u~ = U(t,x,u,u_x) with the induced
    u~_x~ = V"""
    __slots__ = ['T', 'X', 'U', 'V', 'kind', 'provenance', 'side_conditions']

    def __init__(self, T=t, X=x, U=ujet(0), provenance: str = '', check: bool = True):
        self.T = sympy.sympify(T)  # type: sympy.Expr
        self.X = sympy.sympify(X)  # type: sympy.Expr
        self.U = sympy.sympify(U)  # type: sympy.Expr
        self.provenance = provenance  # type: str
        u, ux = ujet(0), ujet(1)
        point = is_zero(sympy.diff(self.X, ux)).vanishes and \
            is_zero(sympy.diff(self.U, ux)).vanishes
        self.kind = POINT if point else CONTACT  # type: str
        if is_zero(sympy.diff(self.X, ux)).vanishes:
            self.V = simplify((sympy.diff(self.U, x) + sympy.diff(self.U, u) * ux) /
                              (sympy.diff(self.X, x) + sympy.diff(self.X, u) * ux))
        else:
            self.V = simplify(sympy.diff(self.U, ux) / sympy.diff(self.X, ux))
        self.side_conditions = ['%s != 0' % to_text(c) for c in self.nondegeneracy()]
        if check:
            self.validate()

    def __repr__(self):
        return '<%s t~=%s x~=%s u~=%s>' % (self.kind, to_text(self.T), to_text(self.X),
                                           to_text(self.U))

    def jacobian_rows(self):
        u, ux = ujet(0), ujet(1)
        return [[sympy.diff(f, v) for v in (x, u, ux)] for f in (self.X, self.U)]

    def nondegeneracy(self) -> List[sympy.Expr]:
        """T_t and D_x X, nonzero at generic points"""
        return [simplify(sympy.diff(self.T, t)), simplify(self.dx_x)]

    @property
    def dx_x(self) -> sympy.Expr:
        return total_x(self.X)

    def validate(self):
        u, ux = ujet(0), ujet(1)
        if self.T.free_symbols - {t}:
            raise DegenerateTransformation('T must depend on t only, got %s' % to_text(self.T))
        if is_zero(sympy.diff(self.T, t)).vanishes:
            raise DegenerateTransformation('T_t vanishes')
        rows = self.jacobian_rows()
        minors = [rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
                  for i, j in ((0, 1), (0, 2), (1, 2))]
        if all(is_zero(m).vanishes for m in minors):
            raise DegenerateTransformation('Jacobian of (X, U) has rank below 2')
        contact = (sympy.diff(self.U, x) + sympy.diff(self.U, u) * ux) * sympy.diff(self.X, ux) \
            - (sympy.diff(self.X, x) + sympy.diff(self.X, u) * ux) * sympy.diff(self.U, ux)
        if not is_zero(contact).vanishes:
            raise DegenerateTransformation('contact condition fails: %s' % to_text(contact))

    def to_dict(self) -> Dict:
        return dict(T=to_text(self.T), X=to_text(self.X), U=to_text(self.U),
                    V=to_text(self.V), kind=self.kind, provenance=self.provenance,
                    side_conditions=list(self.side_conditions))


class Chart:
    """Inverse of a transformation on the jet space, prolonged on demand"""

    def __init__(self, tr: ContactTransformation):
        self.tr = tr
        self.new = {t: sympy.Dummy('t', real=True), x: sympy.Dummy('x', real=True)}
        self.mapping = {}
        self.prolongation = [tr.U, tr.V]
        self._solve_base()

    def new_jet(self, order: int) -> sympy.Dummy:
        key = ujet(order)
        if key not in self.new:
            self.new[key] = sympy.Dummy(str(key), real=True)
        return self.new[key]

    def _pick(self, solutions, what: str):
        if not solutions:
            raise InversionFailure('cannot solve for %s in %r' % (what, self.tr))
        if len(solutions) > 1:
            logger.warning('%d branches when solving for %s, taking the first',
                           len(solutions), what)
        return solutions[0]

    def _solve_base(self):
        u, ux = ujet(0), ujet(1)
        if self.tr.T == t:
            self.mapping[t] = self.new[t]
        else:
            roots = sympy.solve(sympy.Eq(self.new[t], self.tr.T), t)
            self.mapping[t] = self._pick(roots, 't')
        equations = [sympy.Eq(self.new[x], _substitute(self.tr.X, {t: self.mapping[t]})),
                     sympy.Eq(self.new_jet(0), _substitute(self.tr.U, {t: self.mapping[t]})),
                     sympy.Eq(self.new_jet(1), _substitute(self.tr.V, {t: self.mapping[t]}))]
        try:
            solutions = sympy.solve(equations, [x, u, ux], dict=True)
        except NotImplementedError as e:
            raise InversionFailure(str(e)) from e
        solutions = [s for s in solutions if all(v in s for v in (x, u, ux))]
        chosen = self._pick(solutions, 'x, u, u_x')
        for var in (x, u, ux):
            self.mapping[var] = chosen[var]

    def extend(self, order: int):
        """Invert u~_k = D_x(u~_{k-1}) / D_x X up to the given order"""
        while len(self.prolongation) <= order:
            k = len(self.prolongation)
            self.prolongation.append(simplify(total_x(self.prolongation[-1]) / self.tr.dx_x))
            target = _substitute(self.prolongation[k], self.mapping)
            try:
                roots = sympy.solve(sympy.Eq(self.new_jet(k), target), ujet(k))
            except NotImplementedError as e:
                raise InversionFailure(str(e)) from e
            self.mapping[ujet(k)] = self._pick(roots, str(ujet(k)))

    def to_new(self, expr) -> sympy.Expr:
        """expr rewritten in the new coordinates, named like the old ones"""
        expr = sympy.sympify(expr)
        self.extend(max(order_of(expr), 1))
        rewritten = _substitute(expr, self.mapping)
        rename = {dummy: old for old, dummy in self.new.items()}
        return simplify(rewritten.xreplace(rename))


def transformed_rhs(tr: ContactTransformation, eq: EvolutionEquation) -> sympy.Expr:
    """H~ in the old coordinates"""
    u = ujet(0)
    rhs, t_t = eq.rhs, sympy.diff(tr.T, t)
    if tr.kind == POINT:
        dx_x, dx_u = tr.dx_x, total_x(tr.U)
        delta = sympy.diff(tr.X, x) * sympy.diff(tr.U, u) \
            - sympy.diff(tr.X, u) * sympy.diff(tr.U, x)
        return delta / (t_t * dx_x) * rhs + \
            (sympy.diff(tr.U, t) * dx_x - sympy.diff(tr.X, t) * dx_u) / (t_t * dx_x)
    return ((sympy.diff(tr.U, u) - sympy.diff(tr.X, u) * tr.V) * rhs
            + sympy.diff(tr.U, t) - sympy.diff(tr.X, t) * tr.V) / t_t


def apply_transformation(tr: ContactTransformation, eq: EvolutionEquation) -> EvolutionEquation:
    """The transformed equation u~_t~ = H~ in the new chart"""
    rhs = Chart(tr).to_new(transformed_rhs(tr, eq))
    return EvolutionEquation(rhs, eq.functions, name=eq.name and '%s~' % eq.name)


def transform_conserved_vector(tr: ContactTransformation, cv: ConservedVector,
                               eq: EvolutionEquation) -> ConservedVector:
    """F~ = F / D_x X and G~ = G / T_t + (D_t X / D_x X)(F / T_t), in the new chart"""
    dx_x = tr.dx_x
    if is_zero(dx_x).vanishes:
        raise DegenerateTransformation('D_x X vanishes')
    t_t = sympy.diff(tr.T, t)
    density = cv.density / dx_x
    flux = cv.flux / t_t + total_t(tr.X, eq) / dx_x * cv.density / t_t
    chart = Chart(tr)
    return ConservedVector(chart.to_new(density), chart.to_new(flux))


def prolongation(tr: ContactTransformation, order: int) -> List[sympy.Expr]:
    """[U, V, D_x V / D_x X, ...] up to the given order, in the old coordinates"""
    jets = [tr.U, tr.V]
    while len(jets) <= order:
        jets.append(simplify(total_x(jets[-1]) / tr.dx_x))
    return jets


def pull_back(tr: ContactTransformation, expr) -> sympy.Expr:
    """Expression in the new chart written in the old coordinates"""
    expr = sympy.sympify(expr)
    jets = prolongation(tr, max(order_of(expr), 1))
    mapping = {ujet(k): value for k, value in enumerate(jets)}
    mapping.update({t: tr.T, x: tr.X})
    return simplify(_substitute(expr, mapping))


def pull_back_conserved_vector(tr: ContactTransformation, cv: ConservedVector,
                               eq: EvolutionEquation) -> ConservedVector:
    """Inverse of transform_conserved_vector: F = F~ D_x X, G = T_t G~ - (D_t X / D_x X) F"""
    dx_x = tr.dx_x
    density = simplify(pull_back(tr, cv.density) * dx_x)
    flux = sympy.diff(tr.T, t) * pull_back(tr, cv.flux) - total_t(tr.X, eq) / dx_x * density
    return ConservedVector(density, simplify(flux))
