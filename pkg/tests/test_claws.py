from evoclaws.base import Verdict
from evoclaws.base.exceptions import NotConserved, SplitFailure
from evoclaws.catalog import random_nonlinear
from evoclaws.claws import (Ansatz, ConservedVector, are_equivalent, canonical_conditions,
                            char1_condition, characteristic_of, determining_system,
                            eliminate_flux, flux_of, reduce_order, solve_determining, split,
                            strip_ux_linear)
from evoclaws.classify import decide
from evoclaws.expr import simplify, t, x, u, ux, uxx, ujet
from evoclaws.jet import EvolutionEquation, total_x
from sympy.core.function import AppliedUndef
import random
import sympy
import unittest

HEAT = EvolutionEquation(uxx)


class TestVectors(unittest.TestCase):
    def test_characteristic(self):
        cv = ConservedVector(sympy.exp(x) * u, 0)
        self.assertEqual(characteristic_of(cv).multiplier, sympy.exp(x))
        cv = ConservedVector(u * ux ** 2, 0)
        self.assertEqual(simplify(characteristic_of(cv).multiplier + ux ** 2 + 2 * u * uxx), 0)

    def test_conserved(self):
        self.assertTrue(ConservedVector(u, -ux).is_conserved(HEAT))
        self.assertTrue(ConservedVector(x * u, u - x * ux).is_conserved(HEAT))
        self.assertFalse(ConservedVector(u, u).is_conserved(HEAT))

    def test_equivalence(self):
        first, second = ConservedVector(u, -ux), ConservedVector(x * u, u - x * ux)
        self.assertFalse(are_equivalent(first, second, HEAT))
        shifted = ConservedVector(u + ux, -ux - uxx)
        self.assertTrue(are_equivalent(shifted, first, HEAT))
        with self.assertRaises(NotConserved):
            are_equivalent(ConservedVector(u, u), first, HEAT)

    def test_strip(self):
        stripped = strip_ux_linear(ConservedVector(u + ux * u ** 2, -ux), HEAT)
        self.assertEqual(simplify(stripped.density - u), 0)
        self.assertFalse(stripped.trivial)

    def test_reduce_order(self):
        reduced = reduce_order(ConservedVector(uxx, -ujet(3)), HEAT)
        self.assertTrue(reduced.trivial)
        self.assertTrue(reduced.reduced)
        reduced = reduce_order(ConservedVector(x * uxx, -x * ujet(3) + uxx), HEAT)
        self.assertTrue(reduced.trivial)

    def test_flux(self):
        self.assertEqual(flux_of(u, HEAT), -ux)
        self.assertEqual(simplify(flux_of(x * u, HEAT) - (u - x * ux)), 0)


class TestDetermining(unittest.TestCase):
    def test_split(self):
        pieces = split(t * u ** 2 + x * u + 3, [u])
        self.assertEqual(sorted(p for _, p in pieces), ['1', 'u', 'u^2'])
        self.assertEqual(split(u - u, [u]), [])
        with self.assertRaises(SplitFailure):
            split(sympy.sin(u) + u, [u])

    def test_ansatz(self):
        ansatz = Ansatz.parse('t,x,u')
        self.assertEqual(ansatz.density, (t, x, u))
        self.assertEqual(ansatz.flux, (t, x, u))
        with self.assertRaises(KeyError):
            Ansatz.parse('t,x,w')

    def test_determining_system(self):
        system = determining_system(HEAT)
        self.assertEqual(len(system.unknowns), 2)
        self.assertTrue(system.equations)
        self.assertIn('u_xx', [p for _, p in system])

    def test_canonical_conditions(self):
        f = sympy.Function('f')(t, x)
        conditions = canonical_conditions(u)
        self.assertEqual(conditions[3], sympy.diff(f, t) + sympy.diff(f, x, 2))

    def test_char1_condition(self):
        flux_part = sympy.Function('G0')(t, x, u)
        condition = char1_condition(ux, x * u)
        self.assertEqual(sympy.expand(condition.subs(flux_part, u).doit()), 0)
        self.assertNotEqual(sympy.expand(char1_condition(ux, u ** 2).subs(flux_part, 0).doit()), 0)

    def test_eliminate_flux(self):
        system = determining_system(HEAT, Ansatz(density=(t, x, u)))
        f = sympy.Function('f0')(t, x)
        equations, generators = eliminate_flux(system, f * u, [f])
        self.assertIn(ux, generators)
        self.assertEqual(len(equations), 1)
        heat = sympy.diff(f, t) + sympy.diff(f, x, 2)
        self.assertIn(0, (sympy.expand(equations[0] - heat), sympy.expand(equations[0] + heat)))
        self.assertEqual({a.func for a in equations[0].atoms(AppliedUndef)}, {f.func})

    def test_heat_density_in_t_x_u(self):
        solution = solve_determining(determining_system(HEAT, Ansatz(density=(t, x, u))), 2)
        self.assertEqual(len(solution.families), 1)
        family = solution.families[0]
        self.assertTrue(family.constraint.is_backward_heat)
        self.assertEqual(len(solution.basis), 1)
        cv, char = solution.basis[0]
        self.assertEqual(simplify(cv.density - family(t, x) * u), 0)
        self.assertEqual(simplify(char.multiplier - family(t, x)), 0)
        self.assertTrue(cv.is_conserved(HEAT))

    def test_heat_family(self):
        solution = solve_determining(determining_system(HEAT), monomials=[u])
        self.assertEqual(len(solution.families), 1)
        self.assertTrue(solution.families[0].constraint.is_backward_heat)
        self.assertEqual(len(solution.basis), 1)
        cv, _ = solution.basis[0]
        self.assertTrue(cv.is_conserved(HEAT))

    def test_quasilinear_exact(self):
        eq = EvolutionEquation(total_x(u ** 2 * ux))
        solution = solve_determining(determining_system(eq), monomials=[u])
        for cv, _ in solution.basis:
            self.assertTrue(cv.is_conserved(eq))


class TestNonlinearGate(unittest.TestCase):
    def test_random_nonlinear(self):
        rng = random.Random(7)
        equations = [random_nonlinear(rng, degree=rng.randint(2, 4)) for _ in range(50)]
        for eq in equations:
            self.assertFalse(eq.fractionally_linear, eq)
            self.assertEqual(decide(eq).verdict, Verdict.exact(0), eq)
        for eq in equations[:10]:
            solution = solve_determining(determining_system(eq), degree=1)
            self.assertEqual(len(solution.basis), 0, eq)

    def test_random_nonlinear_quadratic_densities(self):
        rng = random.Random(11)
        for _ in range(3):
            eq = random_nonlinear(rng, degree=2)
            solution = solve_determining(determining_system(eq), degree=2)
            self.assertEqual(len(solution.basis), 0, eq)
            self.assertEqual(solution.families, [], eq)
