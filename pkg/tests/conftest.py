from fractions import Fraction

import pytest

from dilator import cocycle
from dilator.cylinder import CylinderFunction, ShiftSystem
from dilator.interaction import InteractionSystem

BIN = ShiftSystem((2,))


def ind(text, system=BIN):
    """Indicator of the cylinder named by ``text`` ("01", or "0|1" with two factors)."""
    return CylinderFunction.indicator(system, system.parse_word(text))


def word(text, system=BIN):
    return system.parse_word(text)


@pytest.fixture
def fair():
    return InteractionSystem(cocycle.fair())


@pytest.fixture
def biased():
    return InteractionSystem(cocycle.biased(Fraction(1, 3)))


@pytest.fixture
def relaxed():
    return InteractionSystem(cocycle.planted_relaxed())
