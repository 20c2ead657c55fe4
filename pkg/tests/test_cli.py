from contextlib import redirect_stderr, redirect_stdout
from evoclaws.cli import BAD_INPUT, EQUATION, OK, REFUTED, get_args, run
from tests import RESOURCES
import io
import json
import unittest


def invoke(*argv):
    """Exit code, stdout and stderr of one cli run"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run(argv)
    return code, out.getvalue(), err.getvalue()


class TestArgs(unittest.TestCase):
    def test_defaults(self):
        args = get_args(['classify', 'u_xx'])
        self.assertEqual(args.output, 'json')
        self.assertEqual(args.functions, [])
        self.assertEqual(args.jobs, 1)
        args = get_args(['verify', '--text', '--functions', 'A(u)', 'u_xx', 'u', '0 - u_x'])
        self.assertEqual(args.output, 'text')
        self.assertIsNone(args.characteristic)

    def test_leading_minus(self):
        self.assertEqual(get_args(['classify', '--', '-1/u_xx']).equation, '-1/u_xx')
        self.assertIn('--', EQUATION)


class TestClassify(unittest.TestCase):
    def test_verdicts(self):
        for argv, verdict in ((['u_xx'], 'Infinite'),
                              (['--functions', 'A(u)', 'diff(A(u)*u_x, x)'], 'Exact(2)'),
                              (['u_xx^2'], 'Exact(0)')):
            code, out, _ = invoke('classify', *argv)
            self.assertEqual(code, OK)
            self.assertEqual(json.loads(out)['verdict'], verdict)

    def test_linearizable(self):
        for argv in (['--', '-1/u_xx'], ['u_xx/u_x^2']):
            code, out, _ = invoke('classify', *argv)
            self.assertEqual(code, OK, argv)
            data = json.loads(out)
            self.assertEqual(data['verdict'], 'Infinite', argv)
            self.assertTrue(data['transformations'], argv)
            self.assertNotIn('error', data)
            self.assertFalse([f for f in data['failures'] if f.startswith('verification')], argv)

    def test_report_fields(self):
        _, out, _ = invoke('classify', 'u_xx')
        data = json.loads(out)
        self.assertEqual(data['canonical_forms']['hat_h'], 'u_x')
        self.assertEqual(data['canonical_forms']['divergence'], 'current_variables')
        self.assertTrue(all(entry['certificate'] == 'symbolic_zero' for entry in data['basis']))
        self.assertEqual(data['families'], ['h(t,x)|backward_heat'])
        self.assertEqual(data['evidence']['fractionally_linear'], 'symbolic_zero')
        self.assertEqual(data['evidence']['divergence'], 'symbolic_zero')

    def test_deterministic(self):
        first = invoke('classify', 'diff(u^-2*u_x, x)')[1]
        second = invoke('classify', 'diff(u^-2*u_x, x)')[1]
        self.assertEqual(first, second)

    def test_bad_input(self):
        code, out, err = invoke('classify', 'u +* 2')
        self.assertEqual(code, BAD_INPUT)
        self.assertIn('ParseError', json.loads(out)['error'])
        self.assertIn('ParseError', err)
        code, _, _ = invoke('classify', 'u_x')
        self.assertEqual(code, BAD_INPUT)
        code, _, _ = invoke('classify')
        self.assertEqual(code, BAD_INPUT)

    def test_batch(self):
        code, out, _ = invoke('classify', '--file', str(RESOURCES.joinpath('equations.txt')))
        self.assertEqual(code, OK)
        self.assertEqual([data['verdict'] for data in json.loads(out)],
                         ['Infinite', 'Exact(2)', 'Exact(0)'])
        code, out, _ = invoke('classify', '--text', '--file',
                              str(RESOURCES.joinpath('equations.txt')))
        self.assertIn('Infinite', out)

    def test_missing_file(self):
        code, _, err = invoke('classify', '--file', str(RESOURCES.joinpath('missing.txt')))
        self.assertEqual(code, BAD_INPUT)
        self.assertIn('FileNotFoundError', err)


class TestVerify(unittest.TestCase):
    def test_certified(self):
        code, out, _ = invoke('verify', 'u_xx', 'u', '0 - u_x')
        self.assertEqual(code, OK)
        self.assertEqual(json.loads(out)['status'], 'certified')
        code, out, _ = invoke('verify', 'u_xx', 'x*u', 'u - x*u_x', 'x')
        self.assertEqual(code, OK)
        self.assertEqual(len(json.loads(out)['certificates']), 2)

    def test_refuted(self):
        code, out, _ = invoke('verify', 'u_xx', 'u', 'u')
        self.assertEqual(code, REFUTED)
        data = json.loads(out)
        self.assertEqual(data['status'], 'refuted')
        self.assertEqual(data['certificates'][0]['kind'], 'numeric_sampled')

    def test_mismatch(self):
        code, out, _ = invoke('verify', 'u_xx', 'u', '0 - u_x', 'x')
        self.assertEqual(code, REFUTED)
        self.assertEqual(json.loads(out)['status'], 'mismatch')


class TestReduce(unittest.TestCase):
    def test_heat(self):
        code, out, _ = invoke('reduce', 'u_xx')
        self.assertEqual(code, OK)
        forms = json.loads(out)['canonical_forms']
        self.assertEqual(forms['hat_h'], 'u_x')
        self.assertEqual(forms['check_h'], 'u')

    def test_no_divergence(self):
        code, out, _ = invoke('reduce', 'u_xx^2')
        self.assertEqual(code, OK)
        self.assertEqual(json.loads(out)['message'], 'no divergence structure; dim 0')

    def test_new_chart(self):
        argv = ('reduce', '--functions', 'A(u)', 'diff(A(u)*u_x, x) + A(u)*u_x')
        code, out, _ = invoke(*argv)
        self.assertEqual(code, OK)
        data = json.loads(out)
        self.assertNotIn('check_h', data['canonical_forms'])
        self.assertTrue(data['transformations'])
        image = data['normalized'][0]
        self.assertIn('Abreve', image['canonical_forms']['check_h'])
        self.assertEqual(len(image['laws']), 2)
        code, out, _ = invoke(*argv[:1], '--text', *argv[1:])
        self.assertEqual(code, OK)
        self.assertIn('u~_t~ = ', out)
        self.assertIn('check_h~ = ', out)


class TestTable(unittest.TestCase):
    def test_table(self):
        code, out, _ = invoke('table')
        self.assertEqual(code, OK)
        rows = json.loads(out)
        self.assertEqual(len(rows), 8)
        self.assertTrue(all(row['ok'] for row in rows))
