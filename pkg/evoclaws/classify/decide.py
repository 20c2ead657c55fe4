"""Decision procedure for the dimension of the space of conservation laws
of u_t = H(t,x,u,u_x,u_xx)

The stages run in order and the first that applies decides:

1. H is not fractionally linear in u_xx: no conservation laws.
2. H is linear: an infinite family F = h u, h solving the adjoint equation.
3. u_t = D_x^2 check_h with check_h_uu != 0: exactly the laws u and x u.
   u_t = D_x hat_h with hat_h not fractionally linear in u_x: only u.
4. Otherwise the polynomial (t,x) solver gives a lower bound, or the exact
   count when hat_h is linear in u_x. A lower bound is lifted to an infinite
   family when a library transformation makes the equation linear.
"""

from typing import Dict, List, Optional, Tuple
import sympy

from ..base import TimeContext, Verdict, set_logger
from ..base.exceptions import ClassifyError, ClawsError, JetError, ReductionFailure
from ..claws import (ADJOINT, COMPLETE, DEFAULT_DEGREE, HEURISTIC, Ansatz, Characteristic,
                     ConservedVector, canonical_conditions, char1_condition,
                     determining_system, flux_of, solve_determining)
from ..claws.determining import unknown
from ..expr.canonical import DEFAULT_SEED, apply_constraints, is_zero, simplify
from ..expr.printer import to_text
from ..expr.symbols import (FunctionSymbol, LinearConstraint, applications, backward_heat,
                            order_of, t, x, ujet)
from ..jet import (EvolutionEquation, antiderivative_x, divergence_test, euler,
                   fractional_linearity_test, total_x)
from .normalize import LIBRARY, EmittedSystem, normalize_char1, normalize_pair
from .potential import PotentialSystem, emit_potential_system
from .transform import (ContactTransformation, apply_transformation, pull_back,
                        pull_back_conserved_vector, transform_conserved_vector)

CHART_CAVEAT = ('lower bound in the given chart; contact-equivalent charts '
                'were not searched exhaustively')
FAMILY_NAMES = ['h'] + ['h%d' % i for i in range(1, 10)]

Entry = Tuple[ConservedVector, Characteristic]

logger = set_logger('decide')


class ClassificationReport:
    """Verdict together with everything computed on the way"""
    __slots__ = ['equation', 'verdict', 'basis', 'canonical_forms', 'transformations',
                 'families', 'emitted_systems', 'potential_systems', 'chart_caveat',
                 'completeness', 'evidence', 'failures', 'seed', 'timings']

    def __init__(self, equation: EvolutionEquation, seed: int = DEFAULT_SEED):
        self.equation = equation  # type: EvolutionEquation
        self.verdict = Verdict.undecided(0)  # type: Verdict
        self.basis = []  # type: List[Entry]
        self.canonical_forms = {}  # type: Dict[str, sympy.Expr]
        self.transformations = []  # type: List[ContactTransformation]
        self.families = []  # type: List[FunctionSymbol]
        self.emitted_systems = []  # type: List[EmittedSystem]
        self.potential_systems = []  # type: List[PotentialSystem]
        self.chart_caveat = None  # type: Optional[str]
        self.completeness = COMPLETE  # type: str
        # gate name -> symbolic_zero, numeric_sampled or witness
        self.evidence = {}  # type: Dict[str, str]
        self.failures = []  # type: List[str]
        self.seed = seed  # type: int
        self.timings = []  # type: List[str]

    def __repr__(self):
        return '<ClassificationReport %r: %r, %d laws>' % (self.equation, self.verdict,
                                                           len(self.basis))

    @property
    def characteristics(self) -> List[sympy.Expr]:
        return [char.multiplier for _, char in self.basis]


def divergence_forms(eq: EvolutionEquation,
                     evidence: Dict[str, str] = None) -> Dict[str, sympy.Expr]:
    """hat_h with H = D_x hat_h and check_h with H = D_x^2 check_h, when they
    exist; the zero tests deciding this are recorded in evidence"""
    evidence = {} if evidence is None else evidence
    forms = {}
    test = divergence_test(eq.rhs)
    evidence['divergence'] = test.evidence
    if not test.vanishes:
        return forms
    try:
        hat_h = simplify(antiderivative_x(eq.rhs, check=False))
    except JetError:
        return forms
    forms['hat_h'] = hat_h
    test = divergence_test(x * eq.rhs)
    evidence['second_divergence'] = test.evidence
    if test.vanishes:
        try:
            forms['check_h'] = simplify(x * hat_h - antiderivative_x(x * eq.rhs, check=False))
        except JetError:
            pass
    return forms


def linear_parts(eq: EvolutionEquation) -> Tuple[sympy.Expr, ...]:
    """(a2, a1, a0, b) with H = a2 u_xx + a1 u_x + a0 u + b"""
    jets = [ujet(k) for k in range(3)]
    a0, a1, a2 = [simplify(sympy.diff(eq.rhs, j)) for j in jets]
    source = simplify(eq.rhs - a2 * jets[2] - a1 * jets[1] - a0 * jets[0])
    return a2, a1, a0, source


def adjoint_constraint(a2, a1, a0) -> LinearConstraint:
    """f_t + (a2 f)_xx - (a1 f)_x + a0 f = 0 solved for f_t"""
    if is_zero(a2 - 1).vanishes and is_zero(a1).vanishes and is_zero(a0).vanishes:
        return backward_heat()
    coeffs = [(-(sympy.diff(a2, x, 2) - sympy.diff(a1, x) + a0), 0),
              (-(2 * sympy.diff(a2, x) - a1), 1),
              (-a2, 2)]
    terms = tuple((simplify(c), 1, order) for c, order in coeffs if not is_zero(c).vanishes)
    return LinearConstraint(ADJOINT, 0, terms)


def constraint_residual(constraint: LinearConstraint, weight) -> sympy.Expr:
    """f_t - rhs for a concrete f(t,x)"""
    residual = sympy.diff(weight, t)
    for coeff, _, order in constraint.terms:
        residual -= coeff * sympy.diff(weight, x, order)
    return residual


def polynomial_solutions(constraint: LinearConstraint, degree: int) -> List[sympy.Expr]:
    """Basis of the polynomial solutions in (t,x) up to total degree"""
    monomials = [t ** i * x ** j for i in range(degree + 1) for j in range(degree + 1 - i)]
    coeffs = sympy.symbols('c0:%d' % len(monomials))
    candidate = sum(c * m for c, m in zip(coeffs, monomials))
    numerator, _ = sympy.fraction(sympy.together(constraint_residual(constraint, candidate)))
    try:
        equations = sympy.Poly(sympy.expand(numerator), t, x).coeffs()
    except sympy.PolynomialError:
        return []
    matrix, _ = sympy.linear_eq_to_matrix(equations, coeffs)
    solutions = []
    for vector in matrix.nullspace():
        poly = sympy.expand(sum(v * m for v, m in zip(vector, monomials)))
        number, _ = sympy.Poly(poly, t, x).terms()[0][1].as_coeff_Mul()
        solutions.append(sympy.expand(poly / number))
    return sorted(solutions, key=lambda p: (sympy.Poly(p, t, x).total_degree(), to_text(p)))


def linear_entry(weight, homogeneous: EvolutionEquation, source) -> Entry:
    """(f u, flux) for the linear equation, the source contributing -int f b dx"""
    density = weight * ujet(0)
    flux = flux_of(density, homogeneous, weight)
    if not is_zero(source).vanishes:
        flux -= antiderivative_x(apply_constraints(weight * source), check=False)
    return ConservedVector(density, simplify(flux), reduced=True), Characteristic(weight)


class Classifier:
    """Runs the stages of the decision procedure on one equation at a time

    :param degree: degree of the polynomial density ansatz
    :param seed: seed recorded for numeric sampling
    :param emit_systems: keep unsolved transformation systems in the report
    """
    time_context = TimeContext()

    def __init__(self, degree: int = DEFAULT_DEGREE, seed: int = DEFAULT_SEED,
                 emit_systems: bool = False, verbose: bool = False, **_):
        self.degree = degree
        self.seed = seed
        self.emit_systems = emit_systems
        self.logger = set_logger(type(self).__name__, verbose=verbose)

    def _family_name(self, eq: EvolutionEquation) -> str:
        taken = {f.name for f in eq.functions} | {str(s) for s in eq.rhs.free_symbols}
        return next(name for name in FAMILY_NAMES if name not in taken)

    @time_context
    def linear_stage(self, report: ClassificationReport):
        eq = report.equation
        a2, a1, a0, source = linear_parts(eq)
        constraint = adjoint_constraint(a2, a1, a0)
        family = FunctionSymbol(self._family_name(eq), ('t', 'x'), constraint)
        homogeneous = EvolutionEquation(eq.rhs - source, eq.functions)
        for weight in polynomial_solutions(constraint, self.degree) + [family(t, x)]:
            try:
                report.basis.append(linear_entry(weight, homogeneous, source))
            except JetError as e:
                self.logger.warning('no closed-form flux for weight %s: %s', to_text(weight), e)
                report.failures.append('linear: %s' % e)
        report.families.append(family)
        report.verdict = Verdict.infinite()

    def _family_from_check(self, report: ClassificationReport, check_h):
        """F = f u with f solving the reduced condition f_t + f_xx check_h_u = 0"""
        eq = report.equation
        conditions = canonical_conditions(check_h)
        coeff = unknown('f', (t, x))
        rate = simplify(sympy.expand(conditions[-1]).coeff(sympy.Derivative(coeff, (x, 2))))
        if is_zero(rate - 1).vanishes:
            constraint = backward_heat()
        else:
            constraint = LinearConstraint(ADJOINT, 0, ((simplify(-rate), 1, 2),))
        family = FunctionSymbol(self._family_name(eq), ('t', 'x'), constraint)
        weight = family(t, x)
        density = weight * ujet(0)
        report.basis.append((ConservedVector(density, flux_of(density, eq, weight), reduced=True),
                             Characteristic(weight)))
        report.families.append(family)
        report.verdict = Verdict.infinite()

    @time_context
    def divergence_stage(self, report: ClassificationReport) -> bool:
        """Decide from the divergence forms alone; False when they do not suffice"""
        forms = report.canonical_forms
        u = ujet(0)
        if 'check_h' in forms:
            hat_h, check_h = forms['hat_h'], forms['check_h']
            test = is_zero(sympy.diff(check_h, u, 2))
            report.evidence['check_h_uu'] = test.evidence
            if test.vanishes:
                self._family_from_check(report, check_h)
                return True
            report.basis = [
                (ConservedVector(u, -hat_h, reduced=True), Characteristic(1)),
                (ConservedVector(x * u, simplify(check_h - x * hat_h), reduced=True),
                 Characteristic(x)),
            ]
            report.verdict = Verdict.exact(2)
            return True
        if 'hat_h' not in forms:
            return False
        test = fractional_linearity_test(forms['hat_h'], ujet(1))
        report.evidence['hat_h_fractionally_linear'] = test.evidence
        if not test.vanishes:
            report.basis = [(ConservedVector(u, -forms['hat_h'], reduced=True),
                             Characteristic(1))]
            report.verdict = Verdict.exact(1)
            return True
        return False

    @time_context
    def solver_stage(self, report: ClassificationReport):
        eq = report.equation
        hat_h = report.canonical_forms.get('hat_h')
        monomials = None
        exact = hat_h is not None and is_zero(sympy.diff(hat_h, ujet(1), 2)).vanishes
        if exact:
            monomials = [ujet(0)]
        try:
            system = determining_system(eq, Ansatz())
            solution = solve_determining(system, self.degree, monomials)
        except (ClawsError, JetError) as e:
            self.logger.warning('solver failed on %r: %s', eq, e)
            report.failures.append(str(e))
            report.completeness = HEURISTIC
            report.verdict = Verdict.undecided(0)
            report.chart_caveat = CHART_CAVEAT
            return
        report.basis = list(solution.basis)
        report.families = list(solution.families)
        report.failures += solution.failures
        report.completeness = solution.completeness
        if self.emit_systems and solution.residual:
            unknowns = sorted({to_text(app) for e in solution.residual for app in applications(e)})
            report.emitted_systems.append(EmittedSystem('determining', unknowns, solution.residual,
                                                        'unsolved (t,x) equations'))
        count = len(report.basis)
        if report.families:
            report.verdict = Verdict.infinite()
        elif exact and solution.completeness == COMPLETE:
            report.verdict = Verdict.exact(count)
        else:
            report.verdict = Verdict.at_least(count) if count else Verdict.undecided(0)
            report.chart_caveat = CHART_CAVEAT

    def _pulled_back_family(self, tr: ContactTransformation, family: FunctionSymbol,
                            image: EvolutionEquation, eq: EvolutionEquation) -> Entry:
        """The family f u of the linear image carried back to eq. A pull-back
        of second order is traded for sigma(T, X) D_x V with sigma_xx = f,
        available when the image has x-independent coefficients and no source."""
        a2, a1, a0, source = linear_parts(image)
        homogeneous = EvolutionEquation(image.rhs - source, image.functions)
        moved, _ = linear_entry(family(t, x), homogeneous, source)
        cv = pull_back_conserved_vector(tr, moved, eq)
        if order_of(cv.density) > 1:
            if any(sympy.diff(c, x) != 0 for c in (a2, a1, a0)) or source != 0:
                raise ReductionFailure('%r pulls the family back to order %d'
                                       % (tr, order_of(cv.density)))
            density = simplify(pull_back(tr, family(t, x)) * total_x(tr.V))
            if order_of(density) > 1:
                raise ReductionFailure('%r pulls the family back to order %d'
                                       % (tr, order_of(density)))
            multiplier = simplify(apply_constraints(euler(density)))
            cv = ConservedVector(density, flux_of(density, eq, multiplier), reduced=True)
            return cv, Characteristic(multiplier)
        return cv, Characteristic(simplify(apply_constraints(euler(cv.density))))

    @time_context
    def linearization_stage(self, report: ClassificationReport) -> bool:
        """Library transformations mapping the equation to a linear one carry
        the adjoint family back"""
        eq = report.equation
        for name, factory in LIBRARY:
            try:
                tr = factory()
                image = apply_transformation(tr, eq)
            except (ClassifyError, JetError) as e:
                self.logger.debug('%s does not apply: %s', name, e)
                continue
            if not image.linear:
                continue
            a2, a1, a0, _ = linear_parts(image)
            family = FunctionSymbol(self._family_name(eq), ('t', 'x'),
                                    adjoint_constraint(a2, a1, a0))
            try:
                entry = self._pulled_back_family(tr, family, image, eq)
            except (ClassifyError, ClawsError, JetError) as e:
                self.logger.warning('%s linearizes %r but the family does not pull back: %s',
                                    name, eq, e)
                report.failures.append('%s: %s' % (name, e))
                continue
            report.basis.append(entry)
            report.families.append(family)
            report.transformations.append(tr)
            report.verdict = Verdict.infinite()
            report.chart_caveat = None
            return True
        return False

    @time_context
    def normalization_stage(self, report: ClassificationReport):
        """Transformations to characteristic 1 and to the pair (1, x)"""
        basis = [(cv, char) for cv, char in report.basis
                 if not any(char.multiplier.has(f.func) for f in report.families)]
        targets = []
        if len(basis) == 2 and report.verdict == Verdict.exact(2):
            targets.append(('pair', lambda: normalize_pair(basis[0][0], basis[1][0],
                                                           report.equation)))
        if basis and not any(is_zero(char.multiplier - 1).vanishes for _, char in basis):
            first = basis[0][0]
            targets.append(('char1', lambda: normalize_char1(first, report.equation)))
        for name, build in targets:
            try:
                result = build()
            except (ClassifyError, ClawsError, JetError) as e:
                self.logger.warning('%s normalization failed: %s', name, e)
                report.failures.append('%s: %s' % (name, e))
                continue
            if isinstance(result, ContactTransformation):
                if not _is_identity(result):
                    report.transformations.append(result)
            elif self.emit_systems:
                report.emitted_systems.append(result)

    @time_context
    def potential_stage(self, report: ClassificationReport):
        try:
            report.potential_systems = emit_potential_system(report)
        except ClassifyError as e:
            self.logger.debug('%s', e)

    def _emit_form_conditions(self, report: ClassificationReport):
        """Conditions on F(t,x,u) and G0(t,x,u) in the divergence forms"""
        forms = report.canonical_forms
        unknowns = ['F(t,x,u)', 'G0(t,x,u)']
        if 'hat_h' in forms:
            report.emitted_systems.append(EmittedSystem(
                'char1', unknowns, [char1_condition(forms['hat_h'])],
                'u_t = D_x hat_h, G = -F_u hat_h + G0'))
        if 'check_h' in forms:
            report.emitted_systems.append(EmittedSystem(
                'canonical', unknowns + ['f(t,x)'], canonical_conditions(forms['check_h']),
                'u_t = D_x^2 check_h, G = -F_u check_h_u u_x + G0, F = f u'))

    def decide(self, eq: EvolutionEquation) -> ClassificationReport:
        report = ClassificationReport(eq, self.seed)
        test = fractional_linearity_test(eq.rhs, ujet(2))
        report.evidence['fractionally_linear'] = test.evidence
        if not test.vanishes:
            report.verdict = Verdict.exact(0)
        else:
            report.canonical_forms = divergence_forms(eq, report.evidence)
            if self.emit_systems:
                self._emit_form_conditions(report)
            if eq.linear:
                self.linear_stage(report)
            elif not self.divergence_stage(report):
                self.solver_stage(report)
                if report.verdict.kind in (Verdict.AT_LEAST, Verdict.UNDECIDED):
                    self.linearization_stage(report)
            self.normalization_stage(report)
            self.potential_stage(report)
        report.timings = self.time_context.lines()
        for line in report.timings:
            self.logger.debug('%s', line)
        self.logger.info('%r: %r', eq, report.verdict)
        return report


def _is_identity(tr: ContactTransformation) -> bool:
    return tr.T == t and tr.X == x and tr.U == ujet(0)


def decide(eq: EvolutionEquation, **options) -> ClassificationReport:
    """Classify eq; options are passed on to Classifier"""
    return Classifier(**options).decide(eq)


def normalized_images(report: ClassificationReport) -> List[Tuple]:
    """(transformation, image equation, its divergence forms, transported
    laws) for every transformation of the report"""
    eq = report.equation
    laws = [cv for cv, char in report.basis
            if not any(char.multiplier.has(f.func) for f in report.families)]
    images = []
    for tr in report.transformations:
        try:
            image = apply_transformation(tr, eq)
            moved = [transform_conserved_vector(tr, cv, eq) for cv in laws]
        except (ClassifyError, ClawsError, JetError) as e:
            logger.warning('cannot carry %r over %r: %s', eq, tr, e)
            continue
        images.append((tr, image, divergence_forms(image), moved))
    return images
