import pytest

from commutant_forge import catalog, conformal_2d
from commutant_forge.enveloping import EnvelopingAlgebra
from commutant_forge.polynomials import default_names, parse_polynomial

XNAMES = default_names(6)
PBW_NAMES = default_names(6, "X")


@pytest.fixture(scope="session")
def c2():
    return conformal_2d()


@pytest.fixture(scope="session")
def chains():
    return catalog()


@pytest.fixture(scope="session")
def env(c2):
    return EnvelopingAlgebra(c2)


def poly(text):
    return parse_polynomial(text, XNAMES)
