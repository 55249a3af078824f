import pytest

from stabparts import named_group

ZOO = (
    "D6",
    "D10",
    "AGL(1,5)",
    "J",
    "AGammaL(1,9)",
    "AGL(2,3)",
    "Sym(4)",
    "C4",
    "Product(D6,D6)",
)


@pytest.fixture(scope="session")
def zoo():
    return {name: named_group(name) for name in ZOO}


@pytest.fixture(scope="session")
def jxj():
    return named_group("Product(J,J)")
