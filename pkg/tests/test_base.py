from evoclaws.base import TimeContext, Verdict, Zero, ZeroTest
import unittest


class TestVerdict(unittest.TestCase):
    def test_text(self):
        for text in ('Exact(0)', 'Exact(2)', 'AtLeast(1)', 'Undecided(0)', 'Infinite'):
            self.assertEqual(repr(Verdict.from_text(text)), text)
        self.assertEqual(Verdict.exact(2), 'Exact(2)')
        self.assertNotEqual(Verdict.exact(2), Verdict.at_least(2))
        self.assertIsNone(Verdict.infinite().k)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            Verdict('Plenty', 3)


class TestZeroTest(unittest.TestCase):
    def test_vanishes(self):
        self.assertTrue(ZeroTest(Zero.YES).vanishes)
        self.assertTrue(ZeroTest(Zero.YES).certified)
        self.assertTrue(ZeroTest(Zero.UNKNOWN, samples=3).vanishes)
        self.assertFalse(ZeroTest(Zero.UNKNOWN, samples=3).certified)
        self.assertFalse(ZeroTest(Zero.UNKNOWN).vanishes)
        self.assertFalse(ZeroTest(Zero.NO, witness={'u': '1'}, samples=1).vanishes)
        self.assertEqual(ZeroTest(Zero.NO), Zero.NO)


class TestTimeContext(unittest.TestCase):
    def test_record(self):
        context = TimeContext()

        @context
        def stage(value):
            return value * 2

        self.assertEqual(stage(2), 4)
        stage(3)
        self.assertEqual(context.record['stage']['trips'], 2)
        self.assertEqual(len(context.lines()), 1)
