"""Jet coordinates, declared function symbols and their linear constraints"""

import re
import functools
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple
import sympy
from sympy.core.function import AppliedUndef

t = sympy.Symbol('t', real=True)
x = sympy.Symbol('x', real=True)

BREVE = 'breve'
# u, u_x, u_xx, u_xxx are spelled out, higher orders use u[k]
NAMED_ORDERS = 3
JET_NAME = re.compile(r'^u(?:_(x+)|\[(\d+)\])?$')
TJET_NAME = re.compile(r'^u_t(x*)$')


def jet_name(order: int) -> str:
    """Token for the x-derivative of u of the given order"""
    if order == 0:
        return 'u'
    if order <= NAMED_ORDERS:
        return 'u_' + 'x' * order
    return 'u[%d]' % order


@functools.lru_cache(maxsize=None)
def ujet(order: int) -> sympy.Symbol:
    """Jet coordinate u_k"""
    if order < 0:
        raise ValueError('Negative jet order %d' % order)
    return sympy.Symbol(jet_name(order), real=True)


@functools.lru_cache(maxsize=None)
def utjet(order: int) -> sympy.Symbol:
    """Off-shell coordinate for the mixed derivative u_t x...x"""
    return sympy.Symbol('u_t' + 'x' * order, real=True)


u, ux, uxx, uxxx = (ujet(k) for k in range(4))


def jet_order(symbol) -> Optional[int]:
    """Order of a u-jet symbol, None for anything else"""
    if not isinstance(symbol, sympy.Symbol):
        return None
    match = JET_NAME.match(symbol.name)
    if match is None:
        return None
    if match.group(1):
        return len(match.group(1))
    if match.group(2):
        return int(match.group(2))
    return 0


def tjet_order(symbol) -> Optional[int]:
    """Order of an off-shell u_t x..x symbol, None for anything else"""
    if not isinstance(symbol, sympy.Symbol):
        return None
    match = TJET_NAME.match(symbol.name)
    return None if match is None else len(match.group(1))


def jet_symbols(expr) -> List[sympy.Symbol]:
    """u-jet symbols occurring in expr, lowest order first"""
    found = [s for s in sympy.sympify(expr).free_symbols if jet_order(s) is not None]
    return sorted(found, key=jet_order)


def order_of(expr) -> int:
    """Highest jet order occurring in expr, -1 when it depends on t, x only"""
    orders = [jet_order(s) for s in jet_symbols(expr)]
    return max(orders) if orders else -1


def depends_on_jets(expr) -> bool:
    return order_of(expr) >= 0


class LinearConstraint(NamedTuple):
    """First-order evolution constraint f_{lead} = sum(coeff * d^order f / d slot^order)
    written over the slot symbols of a function symbol. Stored as a plain
    tuple so sympy can hash it as a class attribute."""
    name: str
    lead: int
    terms: Tuple[Tuple[sympy.Expr, int, int], ...]

    def rhs(self, application) -> sympy.Expr:
        """Right-hand side for a concrete application f(a_1, ..., a_n)"""
        func = application.func
        slots = slot_symbols(func)
        binding = dict(zip(slots, application.args))
        total = sympy.S.Zero
        for coeff, slot, order in self.terms:
            var = application.args[slot]
            term = application if order == 0 else sympy.Derivative(application, (var, order))
            total += coeff.xreplace(binding) * term
        return total

    @property
    def is_backward_heat(self) -> bool:
        return self.name == BACKWARD_HEAT


BACKWARD_HEAT = 'backward_heat'


def backward_heat(lead: int = 0, space: int = 1) -> LinearConstraint:
    """f_lead + f_space,space = 0"""
    return LinearConstraint(BACKWARD_HEAT, lead, ((sympy.Integer(-1), space, 2),))


def slot_symbols(func) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(name, real=True) for name in getattr(func, 'slots', ()))


def _breve_fdiff(self, argindex=1):
    """Declared derivative of an antiderivative atom in its last slot"""
    if argindex == len(self.args):
        return self.antiderivative_of(*self.args)
    return sympy.Function.fdiff(self, argindex)


@functools.lru_cache(maxsize=None)
def breve(func):
    """Antiderivative atom of func in its last slot: d/ds fbreve(..., s) = f(..., s)"""
    return sympy.Function(func.__name__ + BREVE, fdiff=_breve_fdiff,
                          antiderivative_of=func, slots=getattr(func, 'slots', ()))


def derivative_at(func, order: int, arg) -> sympy.Expr:
    """order-th derivative of a one-argument function evaluated at arg;
    a Subs object when arg is not a symbol"""
    slot = sympy.Dummy('xi')
    return sympy.diff(func(slot), slot, order).subs(slot, arg)


def is_breve(func) -> bool:
    return getattr(func, 'antiderivative_of', None) is not None


class FunctionSymbol:
    """A declared function symbol: a name, the slots it depends on and an
    optional linear constraint it satisfies (such as h_t + h_xx = 0)"""
    __slots__ = ['name', 'slots', 'constraint', 'func']

    def __init__(self, name: str, slots: Sequence[str],
                 constraint: Optional[LinearConstraint] = None):
        self.name = name  # type: str
        self.slots = tuple(slots)  # type: Tuple[str, ...]
        self.constraint = constraint  # type: Optional[LinearConstraint]
        kwargs = dict(slots=self.slots)
        if constraint is not None:
            kwargs['constraint'] = constraint
        self.func = sympy.Function(name, **kwargs)

    def __repr__(self):
        text = '%s(%s)' % (self.name, ','.join(self.slots))
        if self.constraint is not None:
            text += '|%s' % self.constraint.name
        return text

    def __eq__(self, other):
        return isinstance(other, FunctionSymbol) and self.func == other.func

    def __hash__(self):
        return hash(self.func)

    def __call__(self, *args):
        if not args:
            args = self.default_args
        if len(args) != self.arity:
            raise TypeError('%s takes %d arguments' % (self.name, self.arity))
        return self.func(*args)

    @property
    def arity(self) -> int:
        return len(self.slots)

    @property
    def default_args(self) -> Tuple[sympy.Symbol, ...]:
        """Slots spelled as jet tokens map to jet symbols, others to free symbols"""
        args = []
        for slot in slot_symbols(self.func):
            order = jet_order(slot)
            args.append(slot if order is None else ujet(order))
        return tuple(args)

    @property
    def breve(self):
        return breve(self.func)


def constraint_of(func) -> Optional[LinearConstraint]:
    return getattr(func, 'constraint', None)


def applications(expr) -> List[AppliedUndef]:
    """Function-symbol applications occurring in expr, in a stable order"""
    return sorted(sympy.sympify(expr).atoms(AppliedUndef), key=sympy.default_sort_key)


def functions_in(expr) -> List:
    """Distinct undefined function classes occurring in expr"""
    found = {app.func for app in applications(expr)}
    return sorted(found, key=lambda f: f.__name__)


def declared(symbols: Iterable[FunctionSymbol]) -> dict:
    """Name lookup for declarations, including antiderivative atoms"""
    table = {}
    for symbol in symbols:
        table[symbol.name] = symbol.func
        table[symbol.name + BREVE] = symbol.breve
    return table
