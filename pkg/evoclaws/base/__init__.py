"""Base classes and helpers shared by evoclaws components"""

from .logger import set_logger
from .helpers import TimeContext, random_coefficient, random_rational
from .types import Verdict, Zero, ZeroTest

__all__ = ['set_logger', 'TimeContext', 'random_coefficient', 'random_rational',
           'Verdict', 'Zero', 'ZeroTest']
