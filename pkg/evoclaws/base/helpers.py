"""Utility functions for evoclaws components"""

import time
import random
import functools
from fractions import Fraction
from typing import Callable, List

# denominators and numerators of sampled rationals stay below this bound
SAMPLE_BOUND = 10 ** 4
# sampled magnitudes lie in [LOW, HIGH], with a random sign
LOW, HIGH = Fraction(1, 3), Fraction(3)


class TimeContext:
    """Records the time spent in decorated pipeline stages and stores the
    rolling latency (in ms) and number of trips per stage within a record"""
    def __init__(self):
        self.record = dict()

    def __call__(self, func: Callable):
        entry = self.record.setdefault(func.__name__, dict(avg=0.0, trips=0))

        @functools.wraps(func)
        def decorator(*args, **kwargs):
            """Decorator for function with a timed context"""
            start = time.perf_counter()
            try:
                return func(*args, **kwargs)
            finally:
                ms_elapsed = (time.perf_counter() - start) * 1000
                entry['avg'] = self.mean(entry['avg'], ms_elapsed, entry['trips'])
                entry['trips'] += 1
        return decorator

    @staticmethod
    def mean(previous_avg: float, new_value: float, num: int) -> float:
        """Rolling average"""
        return (previous_avg * num + new_value) / (num + 1)

    def lines(self) -> List[str]:
        """One line per stage that ran at least once"""
        return ['%-28s %9.2f ms x%d' % (name, entry['avg'], entry['trips'])
                for name, entry in sorted(self.record.items())
                if entry['trips']]


def random_rational(rng: random.Random) -> Fraction:
    """Draw a rational with |value| in [1/3, 3] whose numerator and
    denominator are bounded by SAMPLE_BOUND"""
    while True:
        den = rng.randint(1, SAMPLE_BOUND // 3)
        num = rng.randint(int(LOW * den) + 1, int(HIGH * den))
        value = Fraction(num, den)
        if LOW <= value <= HIGH:
            return value if rng.random() < 0.5 else -value


def random_coefficient(rng: random.Random, spread: int = 5) -> Fraction:
    """Small nonzero integer-over-integer coefficient for random test functions"""
    num = rng.choice([n for n in range(-spread, spread + 1) if n])
    return Fraction(num, rng.randint(1, spread))
