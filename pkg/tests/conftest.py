import pytest

from tensorlogic import parse_model

MATHEMATICIAN_TEXT = """\
domain john chris tom
pred mathematician: john chris
"""

LOVES_TEXT = """\
domain j m
rel loves/2: (j, j) (m, m) (m, j)
"""

BROWN_DOG_TEXT = """\
domain a b c
pred brown: b c
pred dog: a b
"""

# Three atoms, every greek human, one non-greek human.
GREEK_TEXT = """\
domain socrates plato confucius
pred greek: socrates plato
pred human: socrates plato confucius
"""


@pytest.fixture
def mathematician_model():
    return parse_model(MATHEMATICIAN_TEXT)


@pytest.fixture
def loves_model():
    return parse_model(LOVES_TEXT)


@pytest.fixture
def brown_dog_model():
    return parse_model(BROWN_DOG_TEXT)


@pytest.fixture
def greek_model():
    return parse_model(GREEK_TEXT)
