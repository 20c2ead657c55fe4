"""Determining equations of reduced conserved vectors"""

from typing import List, NamedTuple, Sequence, Tuple
import sympy

from ..base.exceptions import SplitFailure
from ..expr.printer import to_text
from ..expr.symbols import t, x, ujet
from ..jet import EvolutionEquation, total_x

FULL_SIGNATURE = (t, x, ujet(0), ujet(1))


class Ansatz(NamedTuple):
    """Argument signatures of the density F and of G1 in G = -F_{u_x} H + G1"""
    density: Tuple[sympy.Symbol, ...] = FULL_SIGNATURE
    flux: Tuple[sympy.Symbol, ...] = FULL_SIGNATURE

    @classmethod
    def parse(cls, density: str, flux: str = None) -> 'Ansatz':
        """Signatures written as comma separated jet tokens, e.g. 't,x,u'"""
        lookup = {str(s): s for s in FULL_SIGNATURE}
        density_sig = tuple(lookup[s.strip()] for s in density.split(',') if s.strip())
        flux_sig = density_sig if flux is None else \
            tuple(lookup[s.strip()] for s in flux.split(',') if s.strip())
        return cls(density_sig, flux_sig)


def unknown(name: str, signature: Sequence[sympy.Symbol]):
    """Unknown function of the signature, or a constant for an empty one"""
    if not signature:
        return sympy.Symbol(name, real=True)
    return sympy.Function(name)(*signature)


class DeterminingSystem:
    """Linear homogeneous equations in the unknowns F and G1"""
    __slots__ = ['equation', 'ansatz', 'unknowns', 'equations', 'provenance']

    def __init__(self, equation: EvolutionEquation, ansatz: Ansatz, unknowns: List,
                 equations: List[sympy.Expr], provenance: List[str]):
        self.equation = equation  # type: EvolutionEquation
        self.ansatz = ansatz  # type: Ansatz
        self.unknowns = unknowns  # type: List[sympy.Expr]
        self.equations = equations  # type: List[sympy.Expr]
        self.provenance = provenance  # type: List[str]

    def __repr__(self):
        return '<DeterminingSystem %d equations in %s>' % (
            len(self.equations), ', '.join(map(to_text, self.unknowns)))

    def __iter__(self):
        return iter(zip(self.equations, self.provenance))


def reduced_condition(eq: EvolutionEquation, density, flux_part) -> sympy.Expr:
    """H (F_u - D_x F_{u_x}) + F_t + D_x G1"""
    characteristic = sympy.diff(density, ujet(0)) - total_x(sympy.diff(density, ujet(1)))
    return eq.rhs * characteristic + sympy.diff(density, t) + total_x(flux_part)


def _monomial_text(gens, powers) -> str:
    factors = ['%s^%d' % (g, p) if p > 1 else str(g) for g, p in zip(gens, powers) if p]
    return '*'.join(factors) or '1'


def split(expr, gens: Sequence[sympy.Expr]) -> List[Tuple[sympy.Expr, str]]:
    """Coefficients of the numerator of expr as a polynomial in gens"""
    numerator, _ = sympy.fraction(sympy.together(expr))
    numerator = sympy.expand(numerator)
    if numerator == 0:
        return []
    if not gens:
        return [(numerator, '1')]
    try:
        poly = sympy.Poly(numerator, *gens)
    except sympy.PolynomialError as e:
        raise SplitFailure('condition is not polynomial in %s' %
                           ', '.join(map(str, gens))) from e
    return [(sympy.expand(coeff), _monomial_text(gens, powers))
            for powers, coeff in poly.terms() if coeff != 0]


def determining_system(eq: EvolutionEquation, ansatz: Ansatz = Ansatz()) -> DeterminingSystem:
    """Substitute the ansatz into the reduced condition and split with respect
    to every jet variable outside the signatures"""
    allowed = set(FULL_SIGNATURE)
    if not set(ansatz.density) <= allowed or not set(ansatz.flux) <= allowed:
        raise ValueError('signatures must be drawn from t, x, u, u_x')
    density = unknown('F', ansatz.density)
    flux_part = unknown('G1', ansatz.flux)
    condition = reduced_condition(eq, density, flux_part)
    used = set(ansatz.density) | set(ansatz.flux)
    gens = [ujet(k) for k in range(3) if ujet(k) not in used]
    pieces = split(condition, gens)
    return DeterminingSystem(eq, ansatz, [density, flux_part],
                             [c for c, _ in pieces], [p for _, p in pieces])


def char1_condition(hat_h, density=None) -> sympy.Expr:
    """Condition on F(t,x,u) and G0(t,x,u) for a conservation law of
    u_t = D_x hat_h with G = -F_u hat_h + G0"""
    u, ux = ujet(0), ujet(1)
    density = unknown('F', (t, x, u)) if density is None else sympy.sympify(density)
    flux_part = unknown('G0', (t, x, u))
    return (sympy.diff(density, t)
            - (sympy.diff(density, x, u) + sympy.diff(density, u, 2) * ux) * hat_h
            + sympy.diff(flux_part, x) + sympy.diff(flux_part, u) * ux)


def canonical_conditions(check_h) -> List[sympy.Expr]:
    """Split conditions on F(t,x,u), G0(t,x,u) for u_t = D_x^2 check_h(t,x,u)
    with G = -F_u check_h_u u_x + G0, ending with the reduced condition on
    F = f(t,x) u"""
    u = ujet(0)
    density = unknown('F', (t, x, u))
    flux_part = unknown('G0', (t, x, u))
    coeff = unknown('f', (t, x))
    f_u = sympy.diff(density, u)
    return [
        sympy.diff(density, u, 2),
        f_u * sympy.diff(check_h, x, u) - sympy.diff(density, x, u) * sympy.diff(check_h, u)
        + sympy.diff(flux_part, u),
        sympy.diff(density, t) + f_u * sympy.diff(check_h, x, 2) + sympy.diff(flux_part, x),
        sympy.diff(coeff, t) + sympy.diff(coeff, x, 2) * sympy.diff(check_h, u),
    ]
