from evoclaws.base import Verdict, random_coefficient
from evoclaws.base.exceptions import (DegenerateTransformation, DependentLaws, NoDivergenceForm,
                                      TrivialInput)
from evoclaws.catalog import (GENERIC_A, catalog_entry, dc_rhs, gate_equations, proportional,
                              table_entries)
from evoclaws.claws import ConservedVector, are_equivalent
from evoclaws.classify import (CONTACT, POINT, ContactTransformation, apply_transformation,
                               decide, divergence_forms, hodograph, legendre, normalize_char1,
                               normalize_pair, normalized_images, polynomial_solutions,
                               potential_systems, transform_conserved_vector)
from evoclaws.expr import (backward_heat, is_zero, order_of, parse, simplify, to_text, t, x, u, ux,
                           uxx)
from evoclaws.jet import EvolutionEquation, is_divergence, total_x
from evoclaws.verify import verify_report
import random
import sympy
import unittest

HEAT = EvolutionEquation(uxx)


class TestDivergenceForms(unittest.TestCase):
    def test_heat(self):
        forms = divergence_forms(HEAT)
        self.assertEqual(forms['hat_h'], ux)
        self.assertEqual(forms['check_h'], u)

    def test_generic_diffusion(self):
        eq = catalog_entry('dc', {'B': '0'}).equation
        forms = divergence_forms(eq)
        self.assertEqual(simplify(forms['hat_h'] - GENERIC_A(u) * ux), 0)
        self.assertEqual(simplify(forms['check_h'] - GENERIC_A.breve(u)), 0)

    def test_no_forms(self):
        self.assertEqual(divergence_forms(EvolutionEquation(u * uxx)), {})
        forms = divergence_forms(catalog_entry('dc', {'A': 'u', 'B': 'u'}).equation)
        self.assertIn('hat_h', forms)
        self.assertNotIn('check_h', forms)


class TestDecide(unittest.TestCase):
    def test_heat(self):
        report = decide(HEAT)
        self.assertEqual(report.verdict, Verdict.infinite())
        self.assertEqual(len(report.families), 1)
        self.assertTrue(report.families[0].constraint.is_backward_heat)
        self.assertEqual(report.transformations, [])
        for cv, _ in report.basis:
            self.assertTrue(cv.is_conserved(HEAT))

    def test_polynomial_solutions(self):
        solutions = polynomial_solutions(backward_heat(), 2)
        self.assertEqual(solutions[:2], [1, x])
        self.assertEqual(len(solutions), 3)
        self.assertTrue(proportional(solutions[2], x ** 2 - 2 * t))

    def test_two_laws(self):
        report = decide(catalog_entry('dc', {'A': 'u^-2', 'B': '0'}).equation)
        self.assertEqual(report.verdict, Verdict.exact(2))
        self.assertEqual(report.characteristics, [1, x])
        self.assertIn('check_h', report.canonical_forms)

    def test_one_law(self):
        report = decide(catalog_entry('dc', {'A': '1 + u^2', 'B': 'u'}).equation)
        self.assertEqual(report.verdict, Verdict.exact(1))
        self.assertEqual(report.characteristics, [1])

    def test_gate(self):
        for eq in gate_equations():
            report = decide(eq)
            self.assertEqual(report.verdict, Verdict.exact(0))
            self.assertEqual(report.basis, [])

    def test_linearizable(self):
        for name in ('L1', 'L2'):
            entry = catalog_entry(name)
            report = decide(entry.equation)
            self.assertEqual(report.verdict, Verdict.infinite(), name)
            self.assertTrue(report.transformations, name)
            self.assertTrue(report.families, name)

    def test_legendre_family_is_first_order(self):
        report = decide(catalog_entry('L2').equation)
        self.assertEqual(report.verdict, Verdict.infinite())
        family = report.families[0]
        laws = [cv for cv, char in report.basis if char.multiplier.has(family.func)]
        self.assertTrue(laws)
        for cv in laws:
            self.assertLessEqual(order_of(cv.density), 1)
        self.assertEqual(len(verify_report(report)), len(report.basis))

    def test_inhomogeneous_linear_parses_back(self):
        eq = EvolutionEquation(uxx + x * ux + t)
        report = decide(eq)
        self.assertEqual(report.verdict, Verdict.infinite())
        self.assertTrue(report.basis)
        for cv, _ in report.basis:
            for expr in (cv.density, cv.flux):
                text = to_text(expr)
                self.assertNotIn('Integral', text)
                self.assertEqual(simplify(parse(text, report.families) - expr), 0)
            self.assertTrue(cv.is_conserved(eq))

    def test_emitted_form_conditions(self):
        eq = catalog_entry('dc', {'A': 'u^-2', 'B': '0'}).equation
        names = [system.name for system in decide(eq, emit_systems=True).emitted_systems]
        self.assertIn('char1', names)
        self.assertIn('canonical', names)
        self.assertNotIn('char1', [system.name for system in decide(eq).emitted_systems])

    def test_evidence(self):
        report = decide(HEAT)
        self.assertEqual(report.evidence['fractionally_linear'], 'symbolic_zero')
        self.assertEqual(report.evidence['divergence'], 'symbolic_zero')
        self.assertEqual(report.evidence['second_divergence'], 'symbolic_zero')
        self.assertEqual(decide(EvolutionEquation(uxx ** 2)).evidence,
                         {'fractionally_linear': 'witness'})
        report = decide(catalog_entry('dc', {'A': '1 + u^2', 'B': 'u'}).equation)
        self.assertEqual(report.evidence['second_divergence'], 'witness')

    def test_constraints_never_lose_laws(self):
        counts = []
        for bindings in ({}, {'B': 'A'}, {'A': '1', 'B': '0'}):
            report = decide(catalog_entry('dc', bindings).equation)
            infinite = report.verdict.kind == Verdict.INFINITE
            counts.append(float('inf') if infinite else len(report.basis))
        self.assertEqual(counts, [1, 2, float('inf')])

    def test_degree_never_loses_laws(self):
        burgers = EvolutionEquation(uxx + u * ux)
        first, second = decide(burgers, degree=1), decide(burgers, degree=2)
        self.assertGreaterEqual(len(second.basis), len(first.basis))
        if first.verdict.kind == Verdict.EXACT:
            self.assertEqual(second.verdict, first.verdict)

    def test_basis_independence(self):
        for bindings in ({'A': 'u^-2', 'B': '0'}, {'A': 'u', 'B': 'u'}):
            entry = catalog_entry('dc', bindings)
            report = decide(entry.equation)
            (first, _), (second, _) = report.basis
            zero = ConservedVector(0, 0)
            for a, b in ((1, 0), (0, 1), (1, 1), (1, -1), (2, 3)):
                combination = a * first + b * second
                self.assertFalse(are_equivalent(combination, zero, entry.equation), (a, b))

    def test_potential_systems(self):
        report = decide(HEAT)
        names = [system.name for system in report.potential_systems]
        self.assertEqual(names, ['potential', 'potential_equation', 'second_potential',
                                 'pair_potential', 'second_potential_equation'])
        self.assertEqual(report.potential_systems[1].relations, [('v_t', uxx)])
        with self.assertRaises(NoDivergenceForm):
            potential_systems(None)

    def test_dimension_vocabulary(self):
        rng = random.Random(3)
        equations = [entry.equation for _, entry in table_entries()]
        equations += [catalog_entry(name).equation for name in ('heat', 'L1', 'L2')]
        equations += gate_equations()
        for _ in range(100):
            a = sum(sympy.Rational(random_coefficient(rng)) * u ** k for k in range(3))
            if sympy.diff(a, u) == 0:
                a += u
            b = sum(sympy.Rational(random_coefficient(rng)) * u ** k
                    for k in range(rng.randint(0, 3)))
            equations.append(EvolutionEquation(dc_rhs(a, b)))
        for eq in equations:
            report = decide(eq)
            if report.verdict.kind == Verdict.EXACT:
                self.assertIn(report.verdict.k, (0, 1, 2), eq)
            elif report.verdict.kind == Verdict.INFINITE:
                check_h = report.canonical_forms.get('check_h')
                linearizable = eq.linear or bool(report.transformations) or (
                    check_h is not None and simplify(sympy.diff(check_h, u, 2)) == 0)
                self.assertTrue(linearizable, eq)


class TestTransform(unittest.TestCase):
    def test_kinds(self):
        self.assertEqual(legendre().kind, CONTACT)
        self.assertEqual(legendre().V, x)
        self.assertEqual(hodograph().kind, POINT)
        self.assertEqual(simplify(hodograph().V - 1 / ux), 0)

    def test_degenerate(self):
        for T, X, U in ((x, x, u), (sympy.Integer(1), x, u), (t, u, u), (t, x, ux)):
            with self.assertRaises(DegenerateTransformation):
                ContactTransformation(T, X, U)

    def test_time_scaling(self):
        tr = ContactTransformation(2 * t, x, u)
        image = apply_transformation(tr, HEAT)
        self.assertEqual(simplify(image.rhs - uxx / 2), 0)
        moved = transform_conserved_vector(tr, ConservedVector(u, -ux), HEAT)
        self.assertEqual(moved.density, u)
        self.assertEqual(simplify(moved.flux + ux / 2), 0)
        self.assertTrue(moved.is_conserved(image))

    def test_identity(self):
        identity, law = ContactTransformation(), ConservedVector(x * u, u - x * ux)
        moved = transform_conserved_vector(identity, law, HEAT)
        self.assertEqual(simplify(moved.density - x * u), 0)
        self.assertEqual(simplify(moved.flux - u + x * ux), 0)

    def test_generic_exponential_chart(self):
        entry = catalog_entry('dc', {'B': 'A'})
        tr = ContactTransformation(t, sympy.exp(x), sympy.exp(-x) * u)
        image = apply_transformation(tr, entry.equation)
        expected = total_x(total_x(x * GENERIC_A.breve(x * u)))
        self.assertTrue(is_zero(image.rhs - expected).vanishes)
        self.assertTrue(is_divergence(image.rhs))
        self.assertTrue(is_divergence(x * image.rhs))
        text = to_text(image.rhs)
        self.assertIn("A'(", text)
        self.assertTrue(is_zero(parse(text, [GENERIC_A]) - image.rhs).vanishes)

    def test_generic_exponential_law(self):
        entry = catalog_entry('dc', {'B': 'A'})
        tr = ContactTransformation(t, sympy.exp(x), sympy.exp(-x) * u)
        law, multiplier = entry.expectations.basis[1]
        self.assertEqual(multiplier, sympy.exp(x))
        moved = transform_conserved_vector(tr, law, entry.equation)
        self.assertEqual(simplify(moved.density - x * u), 0)
        self.assertTrue(moved.is_conserved(apply_transformation(tr, entry.equation)))

    def test_normalized_images(self):
        report = decide(catalog_entry('dc', {'B': 'A'}).equation)
        images = normalized_images(report)
        self.assertEqual(len(images), len(report.transformations))
        self.assertTrue(images)
        _, image, forms, moved = images[0]
        self.assertIn('check_h', forms)
        self.assertTrue(forms['check_h'].has(GENERIC_A.breve))
        self.assertEqual(len(moved), 2)
        for cv in moved:
            self.assertTrue(cv.is_conserved(image))


class TestNormalize(unittest.TestCase):
    def test_pair(self):
        entry = catalog_entry('dc', {'A': 'u', 'B': 'u'})
        (first, _), (second, _) = entry.expectations.basis
        tr = normalize_pair(first, second, entry.equation)
        self.assertEqual(tr.X, sympy.exp(x))
        self.assertEqual(simplify(tr.U - sympy.exp(-x) * u), 0)
        image = apply_transformation(tr, entry.equation)
        self.assertTrue(is_divergence(image.rhs))
        self.assertTrue(is_divergence(x * image.rhs))

    def test_pair_errors(self):
        with self.assertRaises(DependentLaws):
            normalize_pair(ConservedVector(u, -ux), ConservedVector(2 * u, -2 * ux), HEAT)
        with self.assertRaises(TrivialInput):
            normalize_pair(ConservedVector(u, -ux), ConservedVector(ux, -uxx), HEAT)

    def test_point(self):
        entry = catalog_entry('dc', {'A': 'u', 'B': 'u'})
        second, _ = entry.expectations.basis[1]
        tr = normalize_char1(second, entry.equation)
        self.assertEqual(tr.U, sympy.exp(x) * u)
        self.assertEqual(tr.provenance, 'point: U = F')

    def test_legendre(self):
        eq = EvolutionEquation(-1 / uxx)
        cv = ConservedVector(ux ** 2 - 2 * t, 2 * ux / uxx)
        tr = normalize_char1(cv, eq)
        self.assertEqual(tr.provenance, 'legendre, U scaled by 2')
        self.assertEqual(simplify(tr.U - 2 * (x * ux - u)), 0)

    def test_trivial(self):
        with self.assertRaises(TrivialInput):
            normalize_char1(ConservedVector(ux, -uxx), HEAT)
