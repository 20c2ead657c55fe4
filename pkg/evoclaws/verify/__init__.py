"""Certificates for conserved vectors, characteristics and transformations.

A residual that cancels in canonical form (after rewriting constrained
function symbols) gets a symbolic certificate. Otherwise concrete bodies are
drawn for the function symbols and the residual is sampled at random
rational points; the certificate then lists every point it was evaluated at.
"""

import random
from typing import Dict, List, Optional, Type
import sympy

from ..base import random_rational, set_logger
from ..base.exceptions import (ClawsError, EvaluationError, JetError, Mismatch, NotConserved,
                               Refuted, VerifyError)
from ..claws import Characteristic, ConservedVector, characteristic_of, reduce_order
from ..classify import ContactTransformation, apply_transformation
from ..expr.canonical import (DEFAULT_SEED, TOLERANCE, apply_constraints, draw_functions,
                              evaluate, simplify, substitute_functions)
from ..expr.printer import to_text
from ..expr.symbols import constraint_of, functions_in, order_of, ujet, utjet
from ..jet import EvolutionEquation, euler, total_t, total_t_offshell, total_x

SYMBOLIC = 'symbolic_zero'
NUMERIC = 'numeric_sampled'
VERIFY_SAMPLES = 200

logger = set_logger('verify')


class Certificate:
    """Evidence that a residual vanishes"""
    __slots__ = ['kind', 'subject', 'residual', 'sample_count', 'max_abs_residual',
                 'samples', 'constraints', 'seed']

    def __init__(self, kind: str, subject: str, residual, sample_count: int = 0,
                 max_abs_residual: float = 0.0, samples: List[Dict] = (),
                 constraints: List[str] = (), seed: int = DEFAULT_SEED):
        self.kind = kind  # type: str
        self.subject = subject  # type: str
        self.residual = sympy.sympify(residual)  # type: sympy.Expr
        self.sample_count = sample_count  # type: int
        self.max_abs_residual = max_abs_residual  # type: float
        self.samples = list(samples)  # type: List[Dict]
        self.constraints = list(constraints)  # type: List[str]
        self.seed = seed  # type: int

    def __repr__(self):
        return '<Certificate %s %s>' % (self.kind, self.subject)

    @property
    def symbolic(self) -> bool:
        return self.kind == SYMBOLIC

    def to_dict(self) -> Dict:
        data = dict(kind=self.kind, subject=self.subject, residual=to_text(self.residual),
                    constraints=self.constraints)
        if self.kind == NUMERIC:
            data.update(sample_count=self.sample_count, seed=self.seed,
                        max_abs_residual=self.max_abs_residual, samples=self.samples)
        return data


def _constraints(expr) -> List[str]:
    return sorted('%s|%s' % (f.__name__, constraint_of(f).name)
                  for f in functions_in(expr) if constraint_of(f) is not None)


def certify(residual, subject: str, failure: Type[VerifyError] = Refuted,
            samples: int = VERIFY_SAMPLES, seed: int = DEFAULT_SEED,
            tolerance: float = TOLERANCE) -> Certificate:
    """Symbolic certificate if the residual cancels, else a sampled one;
    raises failure with the certificate when a sample does not vanish"""
    reduced = simplify(apply_constraints(residual))
    constraints = _constraints(residual)
    if reduced == 0:
        return Certificate(SYMBOLIC, subject, reduced, constraints=constraints, seed=seed)

    rng = random.Random(seed)
    bodies = draw_functions(reduced, rng)
    if bodies is None:
        raise VerifyError('cannot sample %s: no admissible bodies for its function symbols'
                          % subject)
    concrete = substitute_functions(reduced, bodies)
    symbols = sorted(concrete.free_symbols, key=str)
    points, largest, attempts = [], 0.0, 0
    while len(points) < samples and attempts < 4 * samples:
        attempts += 1
        point = {s: random_rational(rng) for s in symbols}
        try:
            value = evaluate(concrete, point)
        except EvaluationError:
            continue
        record = {str(s): str(v) for s, v in point.items()}
        points.append(record)
        largest = max(largest, abs(value))
        if abs(value) > tolerance:
            certificate = Certificate(NUMERIC, subject, reduced, len(points), largest,
                                      [record], constraints, seed)
            raise failure('%s does not vanish at %s (value %g)' % (subject, record, value),
                          certificate)
    if not points:
        raise VerifyError('no admissible sample point for %s' % subject)
    logger.debug('%s certified on %d samples', subject, len(points))
    return Certificate(NUMERIC, subject, reduced, len(points), largest, points,
                       constraints, seed)


def verify_conserved(cv: ConservedVector, eq: EvolutionEquation, **kwargs) -> Certificate:
    """D_t F + D_x G on solutions"""
    subject = 'D_t(%s) + D_x(%s)' % (to_text(cv.density), to_text(cv.flux))
    return certify(total_t(cv.density, eq) + total_x(cv.flux), subject, Refuted, **kwargs)


def characteristic_residual(cv: ConservedVector, multiplier,
                            eq: EvolutionEquation) -> sympy.Expr:
    """Off-shell D_t F + D_x G - lambda (u_t - H) - D_x(F_{u_x} (u_t - H))
    for a first-order density"""
    defect = utjet(0) - eq.rhs
    return (total_t_offshell(cv.density) + total_x(cv.flux) - multiplier * defect
            - total_x(sympy.diff(cv.density, ujet(1)) * defect))


def verify_characteristic(cv: ConservedVector, char: Characteristic, eq: EvolutionEquation,
                          **kwargs) -> Certificate:
    """lambda is the characteristic of (F, G). A density that cannot be
    reduced to first order is checked against its Euler derivative."""
    multiplier = sympy.sympify(getattr(char, 'multiplier', char))
    if order_of(cv.density) > 1:
        try:
            cv = reduce_order(cv, eq)
        except NotConserved as e:
            raise Mismatch('cannot reduce %r: %s' % (cv, e)) from e
        except (ClawsError, JetError) as e:
            logger.info('checking %s against its Euler derivative: %s', to_text(cv.density), e)
            subject = 'characteristic %s of %s' % (to_text(multiplier), to_text(cv.density))
            return certify(apply_constraints(euler(cv.density)) - multiplier, subject,
                           Mismatch, **kwargs)
    derived = characteristic_of(cv).multiplier
    subject = 'characteristic %s of %s' % (to_text(multiplier), to_text(cv.density))
    certify(derived - multiplier, subject, Mismatch, **kwargs)
    return certify(characteristic_residual(cv, multiplier, eq), subject, Mismatch, **kwargs)


def verify_transformation(tr: ContactTransformation, eq: EvolutionEquation,
                          expected: EvolutionEquation, **kwargs) -> Certificate:
    """The transformed right-hand side equals the expected one"""
    transformed = apply_transformation(tr, eq)
    subject = '%r maps %r to %r' % (tr, eq, expected)
    return certify(transformed.rhs - expected.rhs, subject, Mismatch, **kwargs)


def verify_report(report, **kwargs) -> List[Optional[Certificate]]:
    """Certificates for every basis entry of a classification report;
    None where sampling is impossible (unsampleable function families)"""
    certificates = []
    for cv, char in report.basis:
        try:
            certificate = verify_conserved(cv, report.equation, **kwargs)
            verify_characteristic(cv, char, report.equation, **kwargs)
        except (Refuted, Mismatch):
            raise
        except (VerifyError, ClawsError, JetError) as e:
            logger.info('%s', e)
            certificate = None
        certificates.append(certificate)
    return certificates
