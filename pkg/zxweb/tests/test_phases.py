import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from zxweb.phases import Phase

numerators = st.integers(min_value=-64, max_value=64)
denominators = st.integers(min_value=1, max_value=16)
phases = st.builds(Phase, numerators, denominators)


def test_normalization():
    assert Phase(5, 2) == Phase(1, 2)
    assert -Phase(1, 2) == Phase(3, 2)
    assert Phase(2) == Phase(0)
    assert Phase(-1, 4).fraction == Fraction(7, 4)
    assert Phase(2, 8).denominator == 4


def test_constructor_errors():
    with pytest.raises(TypeError):
        Phase(0.5)  # noqa
    with pytest.raises(TypeError):
        Phase(True)  # noqa
    with pytest.raises(ZeroDivisionError):
        Phase(1, 0)


@pytest.mark.parametrize(
    "text,expected", [
        ("1/4", Phase(1, 4)),
        (" 3/2 ", Phase(3, 2)),
        ("1", Phase(1)),
        ("-1/2", Phase(3, 2)),
        ("9/4", Phase(1, 4)),
    ]
)
def test_from_str(text, expected):
    assert Phase.from_str(text) == expected


@pytest.mark.parametrize("text", ["", "pi", "1/0", "0.25.1"])
def test_from_str_invalid(text):
    with pytest.raises(ValueError):
        Phase.from_str(text)


def test_from_any():
    p = Phase(1, 4)
    assert Phase.from_any(p) is p
    assert Phase.from_any("1/4") == p
    assert Phase.from_any(Fraction(1, 4)) == p
    assert Phase.from_any(1) == Phase(1)
    with pytest.raises(TypeError):
        Phase.from_any(0.25)  # noqa


def test_predicates():
    assert Phase(0).is_zero() and not Phase(0)
    assert Phase(1).is_pi()
    assert Phase(1).is_pauli() and Phase(0).is_pauli()
    assert not Phase(1, 2).is_pauli()
    assert Phase(3, 2).is_clifford()
    assert not Phase(1, 4).is_clifford()


def test_str_and_repr():
    assert str(Phase(1, 4)) == "1/4"
    assert str(Phase(1)) == "1"
    assert repr(Phase(1, 4)) == "Phase(1, 4)"
    assert repr(Phase(0)) == "Phase(0)"


def test_exact_phasors():
    assert Phase(0).phasor() == 1
    assert Phase(1, 2).phasor() == 1j
    assert Phase(1).phasor() == -1
    assert Phase(3, 2).phasor() == -1j


def test_ordering_and_hash():
    assert sorted([Phase(3, 2), Phase(1, 4), Phase(0)]) == [Phase(0), Phase(1, 4), Phase(3, 2)]
    assert len({Phase(1, 4), Phase(9, 4)}) == 1


@given(phases, phases)
def test_addition_commutes(a, b):
    assert a + b == b + a


@given(phases, phases, phases)
def test_addition_associates(a, b, c):
    assert (a + b) + c == a + (b + c)


@given(phases)
def test_negation_inverts(a):
    assert a + (-a) == Phase(0)
    assert a - a == Phase(0)


@given(phases)
def test_range(a):
    assert 0 <= a.fraction < 2


@given(phases, phases)
def test_phasor_is_a_homomorphism(a, b):
    assert cmath.isclose((a + b).phasor(), a.phasor() * b.phasor(), abs_tol=1e-12)


@given(phases, st.integers(min_value=-8, max_value=8))
def test_integer_multiples(a, k):
    expected = Phase(0)
    for _ in range(abs(k)):
        expected = expected + (a if k > 0 else -a)
    assert a * k == expected
    assert k * a == expected


@given(phases)
def test_str_roundtrip(a):
    assert Phase.from_str(str(a)) == a
