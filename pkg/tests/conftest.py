import pytest

from aggraded import LocalModule, LocalRing
from aggraded.poly import FreeLayout, PolyRing

P = 32003


@pytest.fixture(scope="session")
def semigroup_ring():
    """R = k[[X,Y,Z]]/(XZ - Y^3, YZ - X^4, Z^2 - X^3 Y^2), i.e. k[[t^4,t^5,t^11]]."""
    cover = PolyRing(["X", "Y", "Z"], P)
    return LocalRing(
        cover,
        [
            cover.from_string("X*Z - Y^3"),
            cover.from_string("Y*Z - X^4"),
            cover.from_string("Z^2 - X^3*Y^2"),
        ],
    )


@pytest.fixture(scope="session")
def semigroup_module(semigroup_ring):
    """M = R/<X> over the semigroup ring."""
    cover = semigroup_ring.cover
    return LocalModule(semigroup_ring, FreeLayout(1), [cover.from_string("X")])


@pytest.fixture(scope="session")
def regular3():
    """Localized k[x1,x2,x3]."""
    return LocalRing(PolyRing(["x1", "x2", "x3"], P), [])


@pytest.fixture(scope="session")
def squares_module(regular3):
    """M = S/(x1^2, x2^2, x3^2), pure of type (0,2,4,6)."""
    cover = regular3.cover
    return LocalModule(
        regular3,
        FreeLayout(1),
        [cover.from_string("x1^2"), cover.from_string("x2^2"), cover.from_string("x3^2")],
    )


@pytest.fixture(scope="session")
def plane():
    """Localized k[x,y]."""
    return LocalRing(PolyRing(["x", "y"], P), [])
