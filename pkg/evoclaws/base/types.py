"""Base value types for evoclaws"""

from enum import Enum
from typing import Dict, Optional


class Zero(Enum):
    """Outcome of a zero test"""
    YES = 'yes'
    NO = 'no'
    UNKNOWN = 'unknown'


class ZeroTest:
    """Zero-test verdict. A YES is certified by the canonical form (after
    declared constraints); UNKNOWN means every sample vanished, which is
    reported as probably zero but never as certified."""
    __slots__ = ['verdict', 'witness', 'samples']

    def __init__(self, verdict: Zero, witness: Optional[Dict] = None,
                 samples: int = 0):
        self.verdict = verdict  # type: Zero
        self.witness = witness  # type: Optional[Dict]
        self.samples = samples  # type: int

    def __repr__(self):
        if self.verdict is Zero.NO:
            return '<ZeroTest no witness=%s>' % self.witness
        if self.verdict is Zero.UNKNOWN:
            return '<ZeroTest probably-zero samples=%d>' % self.samples
        return '<ZeroTest yes>'

    def __eq__(self, other):
        if isinstance(other, Zero):
            return self.verdict is other
        return NotImplemented

    def __hash__(self):
        return hash(self.verdict)

    @property
    def certified(self) -> bool:
        """True only for a symbolic YES"""
        return self.verdict is Zero.YES

    @property
    def vanishes(self) -> bool:
        """True for YES, and for probably-zero backed by at least one sample"""
        return self.verdict is Zero.YES or (self.verdict is Zero.UNKNOWN and self.samples > 0)

    @property
    def evidence(self) -> str:
        """symbolic_zero, numeric_sampled or witness"""
        if self.verdict is Zero.YES:
            return 'symbolic_zero'
        if self.verdict is Zero.NO:
            return 'witness'
        return 'numeric_sampled'


class Verdict:
    """Dimension of the space of conservation laws, as far as decided:
    Exact(k), AtLeast(k), Infinite or Undecided(k found)"""
    EXACT = 'Exact'
    AT_LEAST = 'AtLeast'
    INFINITE = 'Infinite'
    UNDECIDED = 'Undecided'
    __slots__ = ['kind', 'k']

    def __init__(self, kind: str, k: Optional[int] = None):
        if kind not in (self.EXACT, self.AT_LEAST, self.INFINITE, self.UNDECIDED):
            raise ValueError('Unknown verdict kind "%s"' % kind)
        self.kind = kind  # type: str
        self.k = None if kind == self.INFINITE else int(k or 0)  # type: Optional[int]

    def __repr__(self):
        return self.kind if self.k is None else '%s(%d)' % (self.kind, self.k)

    def __eq__(self, other):
        if isinstance(other, str):
            return repr(self) == other
        if isinstance(other, Verdict):
            return (self.kind, self.k) == (other.kind, other.k)
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.k))

    @classmethod
    def exact(cls, k: int) -> 'Verdict':
        return cls(cls.EXACT, k)

    @classmethod
    def at_least(cls, k: int) -> 'Verdict':
        return cls(cls.AT_LEAST, k)

    @classmethod
    def infinite(cls) -> 'Verdict':
        return cls(cls.INFINITE)

    @classmethod
    def undecided(cls, k: int) -> 'Verdict':
        return cls(cls.UNDECIDED, k)

    @classmethod
    def from_text(cls, text: str) -> 'Verdict':
        """Inverse of repr, e.g. 'Exact(2)' or 'Infinite'"""
        text = text.strip()
        if text == cls.INFINITE:
            return cls.infinite()
        kind, _, rest = text.partition('(')
        return cls(kind, int(rest.rstrip(')')))
