import cmath
import math
from fractions import Fraction
from functools import total_ordering
from numbers import Rational
from typing import Union

__all__ = ['Phase', 'PhaseLike']

PhaseLike = Union['Phase', Fraction, int, str]


@total_ordering
class Phase:
    """an exact spider phase, stored as a rational multiple of pi

    The value is always normalized into the half-open range [0, 2), so
    ``Phase(5, 2) == Phase(1, 2)`` and ``-Phase(1, 2) == Phase(3, 2)``.

    >>> Phase(1, 4) + Phase(7, 4)
    Phase(0)
    """
    __slots__ = ('_value',)

    def __init__(self, numerator: Union[int, Fraction] = 0, denominator: int = 1) -> None:
        if isinstance(numerator, bool) or not isinstance(numerator, (int, Rational)):
            raise TypeError(f"numerator requires an int or Fraction, got '{type(numerator).__name__}'")
        if isinstance(denominator, bool) or not isinstance(denominator, int):
            raise TypeError(f"denominator requires an int, got '{type(denominator).__name__}'")
        if denominator == 0:
            raise ZeroDivisionError("phase denominator must be nonzero")
        self._value = Fraction(numerator) / denominator % 2

    @classmethod
    def from_any(cls, value: PhaseLike) -> 'Phase':
        """create a Phase from a Phase, a Fraction, an int or a 'p/q' string"""
        if isinstance(value, Phase):
            return value
        elif isinstance(value, str):
            return cls.from_str(value)
        elif isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        else:
            raise TypeError(f"can't convert '{type(value).__name__}' to Phase")

    @classmethod
    def from_str(cls, text: str) -> 'Phase':
        """parse 'p/q' or 'p' (units of pi)"""
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"invalid phase {text!r}, expected 'p/q' in units of pi") from None
        return cls(value)

    @property
    def numerator(self) -> int:
        return self._value.numerator

    @property
    def denominator(self) -> int:
        return self._value.denominator

    @property
    def fraction(self) -> Fraction:
        """the phase in units of pi"""
        return self._value

    def is_zero(self) -> bool:
        return self._value == 0

    def is_pi(self) -> bool:
        return self._value == 1

    def is_pauli(self) -> bool:
        """phase is 0 or pi"""
        return self._value.denominator == 1

    def is_clifford(self) -> bool:
        """phase is a multiple of pi/2"""
        return self._value.denominator <= 2

    def to_radians(self) -> float:
        return float(self._value) * math.pi

    def phasor(self) -> complex:
        """return e^(i*phase), exact for multiples of pi/2"""
        if self._value.denominator <= 2:
            return (1, 1j, -1, -1j)[int(self._value * 2)]
        return cmath.exp(1j * self.to_radians())

    def __add__(self, other: PhaseLike) -> 'Phase':
        if isinstance(other, str) or not isinstance(other, (Phase, int, Fraction)):
            return NotImplemented
        return Phase(self._value + Phase.from_any(other)._value)

    __radd__ = __add__

    def __sub__(self, other: PhaseLike) -> 'Phase':
        if isinstance(other, str) or not isinstance(other, (Phase, int, Fraction)):
            return NotImplemented
        return Phase(self._value - Phase.from_any(other)._value)

    def __neg__(self) -> 'Phase':
        return Phase(-self._value)

    def __mul__(self, other: int) -> 'Phase':
        if isinstance(other, bool) or not isinstance(other, int):
            return NotImplemented
        return Phase(self._value * other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Phase):
            return self._value == other._value
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._value == Phase(other)._value
        return NotImplemented

    def __lt__(self, other: 'Phase') -> bool:
        if not isinstance(other, Phase):
            return NotImplemented
        return self._value < other._value

    def __hash__(self) -> int:
        return hash(('Phase', self._value))

    def __bool__(self) -> bool:
        return self._value != 0

    def __str__(self) -> str:
        return str(self._value)

    def __repr__(self) -> str:
        if self._value.denominator == 1:
            return f"Phase({self._value.numerator})"
        return f"Phase({self._value.numerator}, {self._value.denominator})"
