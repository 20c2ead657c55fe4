from evoclaws.base import Zero
from evoclaws.base.exceptions import (DivisionByZero, DomainError, NegativeOrder, ParseError,
                                      UnassignedSymbol, UndeclaredIdentifier)
from evoclaws.expr import (FunctionSymbol, backward_heat, derivative_at, draw_functions, evaluate,
                           heat_polynomials, is_zero, simplify,
                           parse, parse_declaration, to_text, t, x, u, ux, uxx, ujet)
import random
import sympy
import unittest

A = FunctionSymbol('A', ('u',))
H = FunctionSymbol('h', ('t', 'x'), backward_heat())


class TestParser(unittest.TestCase):
    def test_jets_and_precedence(self):
        self.assertEqual(parse('u_x^2*u_xx + u[4]'), ux ** 2 * uxx + ujet(4))
        self.assertEqual(parse('-u^2'), -u ** 2)
        self.assertEqual(parse('2^3^2'), sympy.Integer(512))
        self.assertEqual(parse('u**2 - u^-2'), u ** 2 - u ** -2)
        self.assertEqual(parse('0.5*u'), sympy.Rational(1, 2) * u)
        self.assertEqual(parse('u[2]'), uxx)

    def test_declared_functions(self):
        self.assertEqual(parse('A(u)*u_x + Abreve(u)', [A]), A(u) * ux + A.breve(u))
        self.assertEqual(parse('h(t,x)*u', ['h(t,x)|backward_heat']), H(t, x) * u)
        self.assertEqual(parse('k*u', parameters=['k']), sympy.Symbol('k', real=True) * u)

    def test_total_derivative(self):
        expected = sympy.diff(A(u), u) * ux ** 2 + A(u) * uxx
        self.assertEqual(parse('diff(A(u)*u_x, x)', [A]), expected)
        self.assertEqual(parse('diff(u, x, 3)'), ujet(3))
        self.assertEqual(parse('diff(t*u, t)'), u)

    def test_errors(self):
        with self.assertRaises(ParseError) as ctx:
            parse('u +* 2')
        self.assertEqual(ctx.exception.position, 3)
        with self.assertRaises(UndeclaredIdentifier):
            parse('B(u)')
        with self.assertRaises(NegativeOrder):
            parse('u[-1]')
        with self.assertRaises(ParseError):
            parse('A(u, x)', [A])
        with self.assertRaises(ParseError):
            parse('(u + 1')

    def test_declarations(self):
        declared = parse_declaration('h(t,x)|backward_heat')
        self.assertTrue(declared.constraint.is_backward_heat)
        self.assertEqual(parse_declaration('k'), 'k')
        self.assertEqual(parse_declaration('A(u)').slots, ('u',))
        with self.assertRaises(ParseError):
            parse_declaration('f(x)|wave')
        with self.assertRaises(ParseError):
            parse_declaration('x')

    def test_printer_parses_back(self):
        for text in ('u_x^2/u_xx', 'exp(x)*u - ln(u_x)', 'A(u)*u_x + Abreve(u)',
                     'diff(h(t,x),x)*u - h(t,x)*u_x', 'u^(1/3) + sin(u)*cos(x)'):
            expr = parse(text, [A, H])
            self.assertEqual(parse(to_text(expr), [A, H]), expr)

    def test_primes(self):
        first = parse("A'(x*u)", [A])
        self.assertIsInstance(first, sympy.Subs)
        self.assertEqual(first, derivative_at(A.func, 1, x * u))
        self.assertTrue(to_text(first).startswith("A'("))
        self.assertEqual(parse(to_text(first), [A]), first)
        second = parse("A''(exp(x)*u) + u", [A])
        self.assertIn("A''(", to_text(second))
        self.assertEqual(parse(to_text(second), [A]), second)
        self.assertEqual(parse("A'(u)", [A]), sympy.diff(A(u), u))
        with self.assertRaises(UndeclaredIdentifier):
            parse("B'(u)")
        with self.assertRaises(ParseError):
            parse("A'", [A])
        with self.assertRaises(ParseError):
            parse("h'(t)", [H])

    def test_antiderivative_in_last_slot(self):
        g = FunctionSymbol('g', ('t', 'x'))
        expr = parse('gbreve(t,x) + g(t,x)', ['g(t,x)'])
        self.assertEqual(sympy.diff(expr, x), g(t, x) + sympy.diff(g(t, x), x))
        self.assertEqual(sympy.diff(g.breve(t, x), x), g(t, x))
        self.assertEqual(parse(to_text(g.breve(t, x)), [g]), g.breve(t, x))


class TestSimplify(unittest.TestCase):
    def test_exponentials_merge(self):
        self.assertEqual(simplify(sympy.exp(x) * sympy.exp(u)), sympy.exp(x + u))
        self.assertEqual(simplify(sympy.exp(x) * sympy.exp(u) - sympy.exp(x + u)), 0)
        self.assertEqual(simplify(sympy.exp(-x) * sympy.exp(x) * u), u)


class TestZero(unittest.TestCase):
    def test_certified(self):
        self.assertTrue(is_zero((u + 1) ** 2 - u ** 2 - 2 * u - 1).certified)
        self.assertTrue(is_zero(sympy.exp(x) * sympy.exp(-x) - 1).certified)

    def test_witness(self):
        test = is_zero(u - ux)
        self.assertEqual(test, Zero.NO)
        self.assertIn('u', test.witness)

    def test_probably_zero(self):
        test = is_zero(sympy.sin(u) ** 2 + sympy.cos(u) ** 2 - 1)
        self.assertTrue(test.vanishes)

    def test_constraint(self):
        h = H(t, x)
        self.assertTrue(is_zero(sympy.diff(h, t) + sympy.diff(h, x, 2)).certified)
        self.assertFalse(is_zero(sympy.diff(h, t) - sympy.diff(h, x, 2)).vanishes)

    def test_generic_function(self):
        self.assertFalse(is_zero(sympy.diff(A(u), u)).vanishes)
        self.assertTrue(is_zero(sympy.diff(A.breve(u), u) - A(u)).certified)

    def test_evidence(self):
        self.assertEqual(is_zero(u * (u + 1) - u ** 2 - u).evidence, 'symbolic_zero')
        self.assertEqual(is_zero(u - ux).evidence, 'witness')
        test = is_zero(sympy.sin(u) ** 2 + sympy.cos(u) ** 2 - 1)
        self.assertEqual(test.evidence, 'numeric_sampled')
        self.assertFalse(test.certified)

    def test_random_points(self):
        rng = random.Random(5)
        for _ in range(50):
            a, b = rng.randint(1, 9), rng.randint(1, 9)
            self.assertTrue(is_zero((u + a) * (ux - b) - u * ux + b * u - a * ux + a * b).certified)
            self.assertEqual(is_zero((u + a) * (ux - b) - u * ux).verdict, Zero.NO)

    def test_antiderivative_bodies(self):
        g = FunctionSymbol('g', ('t', 'x'))
        bodies = draw_functions(g.breve(t, x) + g(t, x), random.Random(0))
        base, body = bodies[g.func], bodies[g.breve]
        self.assertEqual(len(body.variables), 2)
        self.assertEqual(sympy.expand(sympy.diff(body.expr, body.variables[-1]) - base.expr), 0)

    def test_heat_polynomials(self):
        for p in heat_polynomials(t, x):
            self.assertEqual(sympy.expand(sympy.diff(p, t) + sympy.diff(p, x, 2)), 0)


class TestEvaluate(unittest.TestCase):
    def test_value(self):
        self.assertEqual(evaluate(u ** 2 + x, {'u': 2, 'x': 1}), 5.0)

    def test_errors(self):
        with self.assertRaises(DivisionByZero):
            evaluate(1 / u, {'u': 0})
        with self.assertRaises(DomainError):
            evaluate(sympy.log(u), {'u': -1})
        with self.assertRaises(UnassignedSymbol):
            evaluate(u + x, {'u': 1})
