"""Recursive descent parser for jet expressions

Grammar (lowest precedence first):

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') unary)?
    atom   := NUMBER | JET | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'
            | NAME "'"+ '(' expr ')'

JET is one of u, u_x, u_xx, u_xxx or u[k]. diff(e, v[, n]) differentiates
n times in v, where v = x is the total derivative D_x. A''(w) is the second
derivative of a declared one-argument function evaluated at the expression w.
"""

import re
from typing import Iterable, List, NamedTuple, Sequence, Union
import sympy

from ..base.exceptions import NegativeOrder, ParseError, UndeclaredIdentifier
from .symbols import (BACKWARD_HEAT, FunctionSymbol, backward_heat, declared,
                      derivative_at, jet_order, ujet, t, x)

TOKENS = re.compile(r'''
    (?P<space>\s+)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<jet>u\[\s*-?\d+\s*\])
  | (?P<name>[A-Za-z][A-Za-z0-9_]*'*)
  | (?P<op>\*\*|[-+*/^(),])
''', re.VERBOSE)

ELEMENTARY = {
    'exp': sympy.exp,
    'ln': sympy.log,
    'log': sympy.log,
    'sin': sympy.sin,
    'cos': sympy.cos,
}
RESERVED = set(ELEMENTARY) | {'diff', 't', 'x'}
DECLARATION = re.compile(r'^\s*([A-Za-z][A-Za-z0-9_]*)\s*(?:\(([^)]*)\))?\s*(?:\|\s*(\w+))?\s*$')


class Token(NamedTuple):
    kind: str
    text: str
    position: int


def tokenize(source: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(source):
        match = TOKENS.match(source, position)
        if match is None:
            raise ParseError('unexpected character "%s"' % source[position], position)
        kind = match.lastgroup
        if kind != 'space':
            text = '^' if match.group() == '**' else match.group()
            tokens.append(Token(kind, text, position))
        position = match.end()
    tokens.append(Token('end', '', len(source)))
    return tokens


class Parser:
    """Parses one expression against a set of declared symbols"""

    def __init__(self, source: str, functions: dict, parameters: dict):
        self.source = source
        self.tokens = tokenize(source)
        self.index = 0
        self.functions = functions
        self.parameters = parameters

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def accept(self, text: str) -> bool:
        if self.current.kind == 'op' and self.current.text == text:
            self.index += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            raise ParseError('expected "%s" but found "%s"' % (text, self.current.text or 'end'),
                             self.current.position)

    def parse(self) -> sympy.Expr:
        result = self.expr()
        if self.current.kind != 'end':
            raise ParseError('unexpected "%s"' % self.current.text, self.current.position)
        return result

    def expr(self) -> sympy.Expr:
        result = self.term()
        while True:
            if self.accept('+'):
                result = result + self.term()
            elif self.accept('-'):
                result = result - self.term()
            else:
                return result

    def term(self) -> sympy.Expr:
        result = self.unary()
        while True:
            if self.accept('*'):
                result = result * self.unary()
            elif self.accept('/'):
                result = result / self.unary()
            else:
                return result

    def unary(self) -> sympy.Expr:
        if self.accept('-'):
            return -self.unary()
        if self.accept('+'):
            return self.unary()
        return self.power()

    def power(self) -> sympy.Expr:
        base = self.atom()
        if self.accept('^'):
            return base ** self.unary()
        return base

    def arguments(self) -> List[sympy.Expr]:
        self.expect('(')
        args = [self.expr()]
        while self.accept(','):
            args.append(self.expr())
        self.expect(')')
        return args

    def atom(self) -> sympy.Expr:
        token = self.current
        if token.kind == 'number':
            self.advance()
            return sympy.Rational(token.text)
        if token.kind == 'jet':
            self.advance()
            order = int(token.text[2:-1])
            if order < 0:
                raise NegativeOrder('derivative order %d is negative' % order, token.position)
            return ujet(order)
        if token.kind == 'name':
            return self.name()
        if self.accept('('):
            result = self.expr()
            self.expect(')')
            return result
        raise ParseError('unexpected "%s"' % (token.text or 'end'), token.position)

    def name(self) -> sympy.Expr:
        token = self.advance()
        name = token.text
        calls = self.current.kind == 'op' and self.current.text == '('
        if name.endswith("'"):
            return self.prime(token, calls)
        if name == 'diff' and calls:
            return self.derivative(token)
        if name in ELEMENTARY and calls:
            args = self.arguments()
            if len(args) != 1:
                raise ParseError('%s takes one argument' % name, token.position)
            return ELEMENTARY[name](args[0])
        if name in self.functions:
            if not calls:
                raise ParseError('function %s needs arguments' % name, token.position)
            func = self.functions[name]
            args = self.arguments()
            arity = len(getattr(func, 'slots', ())) or 1
            if len(args) != arity:
                raise ParseError('%s takes %d arguments, got %d' % (name, arity, len(args)),
                                 token.position)
            return func(*args)
        if name == 't':
            return t
        if name == 'x':
            return x
        order = jet_order(sympy.Symbol(name))
        if order is not None:
            return ujet(order)
        if name in self.parameters:
            return self.parameters[name]
        raise UndeclaredIdentifier('undeclared identifier "%s"' % name, token.position)

    def prime(self, token: Token, calls: bool) -> sympy.Expr:
        name = token.text.rstrip("'")
        order = len(token.text) - len(name)
        func = self.functions.get(name)
        if func is None:
            raise UndeclaredIdentifier('undeclared function "%s"' % name, token.position)
        if len(getattr(func, 'slots', ())) > 1 or not calls:
            raise ParseError("%s%s needs a one-argument function and one argument"
                             % (name, "'" * order), token.position)
        args = self.arguments()
        if len(args) != 1:
            raise ParseError('%s takes 1 arguments, got %d' % (name, len(args)), token.position)
        return derivative_at(func, order, args[0])

    def derivative(self, token: Token) -> sympy.Expr:
        self.expect('(')
        target = self.expr()
        self.expect(',')
        var_token = self.current
        var = self.atom()
        if not isinstance(var, sympy.Symbol):
            raise ParseError('can only differentiate with respect to a variable',
                             var_token.position)
        order = 1
        if self.accept(','):
            order_token = self.current
            negative = self.accept('-')
            if self.current.kind != 'number' or '.' in self.current.text:
                raise ParseError('derivative order must be an integer', order_token.position)
            order = int(self.advance().text)
            if negative:
                raise NegativeOrder('derivative order -%d is negative' % order,
                                    order_token.position)
        self.expect(')')
        if var == x:
            from ..jet import total_x
            for _ in range(order):
                target = total_x(target)
            return target
        return sympy.diff(target, var, order) if order else target


Declaration = Union[FunctionSymbol, str]


def parse_declaration(text: str) -> Declaration:
    """Parse 'A(u)', 'h(t,x)|backward_heat' or a bare parameter name 'k'"""
    match = DECLARATION.match(text)
    if match is None:
        raise ParseError('malformed declaration "%s"' % text)
    name, slots, constraint = match.groups()
    if name in RESERVED or jet_order(sympy.Symbol(name)) is not None:
        raise ParseError('"%s" is reserved' % name)
    if slots is None:
        if constraint:
            raise ParseError('parameter %s cannot carry a constraint' % name)
        return name
    slots = [s.strip() for s in slots.split(',') if s.strip()]
    if not slots:
        raise ParseError('function %s needs at least one slot' % name)
    if constraint is None:
        return FunctionSymbol(name, slots)
    if constraint != BACKWARD_HEAT or len(slots) != 2:
        raise ParseError('unknown constraint "%s" for %s' % (constraint, name))
    lead = slots.index('t') if 't' in slots else 0
    return FunctionSymbol(name, slots, backward_heat(lead, 1 - lead))


def _scope(declarations: Iterable[Declaration], parameters: Sequence[str]):
    functions = []
    names = list(parameters)
    for item in declarations:
        if isinstance(item, str):
            item = parse_declaration(item)
        if isinstance(item, FunctionSymbol):
            functions.append(item)
        else:
            names.append(item)
    return declared(functions), {n: sympy.Symbol(n, real=True) for n in names}


def parse(source: str, declarations: Iterable[Declaration] = (),
          parameters: Sequence[str] = ()) -> sympy.Expr:
    """Parse source into a jet expression. Raises ParseError (with the
    offending position), UndeclaredIdentifier or NegativeOrder."""
    functions, params = _scope(declarations, parameters)
    return Parser(source, functions, params).parse()
