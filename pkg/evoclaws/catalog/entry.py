"""Catalog entries and the binding of their arbitrary elements"""

from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Tuple
import sympy

from ..base import Verdict
from ..base.exceptions import BadBinding, ExpressionError
from ..claws import ConservedVector
from ..classify import ContactTransformation
from ..expr.parser import parse
from ..expr.printer import to_text
from ..expr.symbols import FunctionSymbol, applications
from ..jet import EvolutionEquation

Bindings = Mapping[str, object]


class Expectations(NamedTuple):
    """What decide and verify must reproduce for an instantiated entry"""
    verdict: Optional[Verdict] = None
    basis: Tuple[Tuple[ConservedVector, sympy.Expr], ...] = ()
    transformations: Tuple[Tuple[ContactTransformation, sympy.Expr], ...] = ()
    families: Tuple[FunctionSymbol, ...] = ()
    provenance: str = ''

    @property
    def characteristics(self) -> List[sympy.Expr]:
        return [multiplier for _, multiplier in self.basis]


class CatalogEntry:
    """Named, instantiated catalog equation with its expectations"""
    __slots__ = ['name', 'bindings', 'equation', 'expectations']

    def __init__(self, name: str, bindings: Bindings, equation: EvolutionEquation,
                 expectations: Expectations):
        self.name = name  # type: str
        self.bindings = dict(bindings)  # type: Dict[str, object]
        self.equation = equation  # type: EvolutionEquation
        self.expectations = expectations  # type: Expectations

    def __repr__(self):
        return '<CatalogEntry %s %r>' % (self.name, self.equation)

    def to_dict(self) -> Dict:
        expected = self.expectations
        return dict(
            name=self.name,
            bindings={k: str(v) for k, v in sorted(self.bindings.items())},
            equation=to_text(self.equation.rhs),
            functions=[repr(f) for f in self.equation.functions],
            verdict=None if expected.verdict is None else repr(expected.verdict),
            basis=[dict(F=to_text(cv.density), G=to_text(cv.flux), characteristic=to_text(lam))
                   for cv, lam in expected.basis],
            transformations=[dict(tr.to_dict(), target=to_text(rhs))
                             for tr, rhs in expected.transformations],
            provenance=expected.provenance)


def check_keys(bindings: Bindings, allowed: Iterable[str]):
    stray = sorted(set(bindings) - set(allowed))
    if stray:
        raise BadBinding('unknown parameter(s) %s, expected some of %s'
                         % (', '.join(stray), ', '.join(sorted(allowed))))


def bind(bindings: Bindings, key: str, variables: Iterable[sympy.Symbol]) -> Optional[sympy.Expr]:
    """Parse the binding of key as an expression in the given variables,
    None when it is not bound"""
    value = bindings.get(key)
    if value is None:
        return None
    if isinstance(value, str):
        try:
            value = parse(value)
        except ExpressionError as e:
            raise BadBinding('%s = "%s": %s' % (key, value, e)) from e
    try:
        value = sympy.sympify(value)
    except sympy.SympifyError as e:
        raise BadBinding('%s = %r is not an expression' % (key, value)) from e
    stray = value.free_symbols - set(variables)
    if stray or applications(value):
        raise BadBinding('%s = %s may only depend on %s'
                         % (key, to_text(value), ', '.join(map(str, variables))))
    return value
