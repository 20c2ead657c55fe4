from evoclaws.base import Verdict
from evoclaws.base.exceptions import BadBinding, UnknownEntry
from evoclaws.catalog import (catalog_entry, check_report, dc_equivalence, dc_rhs, instantiate,
                              load_table, names, table_entries)
from evoclaws.claws import Characteristic
from evoclaws.classify import decide
from evoclaws.expr import simplify, t, x, u, ux, uxx
from evoclaws.jet import EvolutionEquation, total_x
from evoclaws.verify import verify_characteristic, verify_conserved, verify_transformation
import sympy
import unittest


class TestEntries(unittest.TestCase):
    def assertLawsCertified(self, entry):
        eq = entry.equation
        for cv, multiplier in entry.expectations.basis:
            self.assertTrue(verify_conserved(cv, eq).symbolic, entry)
            certificate = verify_characteristic(cv, Characteristic(multiplier), eq)
            self.assertTrue(certificate.symbolic, entry)

    def test_names(self):
        self.assertEqual(set(names()), {'dc', 'vcdc', 'heat', 'L1', 'L2', 'gate'})
        with self.assertRaises(UnknownEntry):
            instantiate('wave')

    def test_bad_bindings(self):
        for name, bindings in (('dc', {'C': 'u'}), ('dc', {'A': 'x'}), ('dc', {'A': '0'}),
                               ('dc', {'A': 'u +'}), ('gate', {'index': 10}),
                               ('gate', {'index': 'first'}), ('heat', {'A': 'u'})):
            with self.assertRaises(BadBinding, msg=str(bindings)):
                instantiate(name, bindings)

    def test_linearizable(self):
        for name in ('heat', 'L1', 'L2'):
            entry = catalog_entry(name)
            self.assertEqual(entry.expectations.verdict, Verdict.infinite())
            self.assertEqual(len(entry.expectations.basis), 6)
            self.assertLawsCertified(entry)
            for tr, rhs in entry.expectations.transformations:
                self.assertTrue(verify_transformation(tr, entry.equation,
                                                      EvolutionEquation(rhs)).symbolic)

    def test_diffusion_convection(self):
        for bindings in ({}, {'B': '0'}, {'B': 'A'}, {'A': '1', 'B': '0'}, {'A': '2', 'B': '3'},
                         {'A': 'u^-2', 'B': '0'}, {'A': 'u', 'B': 'u'}, {'A': 'u', 'B': '2'},
                         {'A': '1 + u^2', 'B': 'u'}):
            self.assertLawsCertified(catalog_entry('dc', bindings))

    def test_constant_coefficients(self):
        entry = catalog_entry('dc', {'A': '2', 'B': '3'})
        self.assertEqual(entry.expectations.verdict, Verdict.infinite())
        family, = entry.expectations.families
        self.assertFalse(family.constraint.is_backward_heat)
        self.assertEqual(entry.expectations.characteristics[1], x + 3 * t)

    def test_normalizing_transformation(self):
        entry = catalog_entry('dc', {'A': 'u', 'B': 'u'})
        (tr, rhs), = entry.expectations.transformations
        self.assertEqual(tr.X, sympy.exp(x))
        verify_transformation(tr, entry.equation, EvolutionEquation(rhs))
        entry = catalog_entry('dc', {'A': 'u', 'B': '2'})
        (tr, rhs), = entry.expectations.transformations
        self.assertEqual(tr.X, x + 2 * t)
        self.assertTrue(verify_transformation(tr, entry.equation,
                                              EvolutionEquation(rhs)).symbolic)

    def test_variable_coefficients(self):
        entry = catalog_entry('vcdc', {'A': 'u', 'B': '0', 'f': '1', 'g': '1', 'h': '0'})
        self.assertEqual(simplify(entry.equation.rhs - total_x(u * ux)), 0)
        self.assertEqual(entry.expectations.basis, ())
        generic = catalog_entry('vcdc')
        self.assertEqual({f.name for f in generic.equation.functions},
                         {'A', 'B', 'f', 'g', 'h'})
        with self.assertRaises(BadBinding):
            instantiate('vcdc', {'f': '0'})

    def test_gate(self):
        eq, expectations = instantiate('gate', {'index': 2})
        self.assertEqual(eq.rhs, sympy.exp(uxx))
        self.assertEqual(expectations.verdict, Verdict.exact(0))

    def test_to_dict(self):
        data = catalog_entry('heat').to_dict()
        self.assertEqual(data['equation'], 'u_xx')
        self.assertEqual(data['verdict'], 'Infinite')
        self.assertEqual(data['basis'][0]['F'], 'u')


class TestEquivalenceGroup(unittest.TestCase):
    def test_action(self):
        group = dc_equivalence((1, 2, 3, 2, 3, 5, 7))
        a, b = group.act(u, u)
        self.assertEqual(simplify(a - sympy.Rational(9, 10) * (u - 3)), 0)
        self.assertEqual(simplify(b - sympy.Rational(3, 10) * (u - 3) + sympy.Rational(7, 2)), 0)
        image = EvolutionEquation(dc_rhs(a, b))
        certificate = verify_transformation(group.transformation,
                                            EvolutionEquation(dc_rhs(u, u)), image)
        self.assertTrue(certificate.symbolic)

    def test_invalid(self):
        with self.assertRaises(BadBinding):
            dc_equivalence((1, 2, 3, 0, 3, 5, 7))
        with self.assertRaises(BadBinding):
            dc_equivalence((1, 2, 3, 2, 3, 5))
        with self.assertRaises(BadBinding):
            dc_equivalence((1, 2, 3, 2, 3, 5, x))


class TestTable(unittest.TestCase):
    def test_layout(self):
        table = load_table()
        self.assertEqual(len(table['rows']), 4)
        self.assertEqual([row['verdict'] for row in table['instances']],
                         ['Exact(2)', 'Exact(2)', 'Infinite', 'Exact(1)'])

    def test_reproduction(self):
        for row, entry in table_entries():
            report = decide(entry.equation)
            self.assertEqual(repr(report.verdict), row['verdict'], row['label'])
            self.assertEqual(check_report(report, entry.expectations), [], row['label'])
