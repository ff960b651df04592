import pytest

from divring.algebra import matrix_algebra, quaternion
from divring.exactfield import QQ
from divring.subfield import build_subfield


@pytest.fixture(scope="session")
def H():
    """Rational Hamilton quaternions (-1, -1 / Q)."""
    return quaternion(QQ, -1, -1)


@pytest.fixture(scope="session")
def Ki(H):
    """K = Q(i) inside H, coefficients printed in terms of i."""
    return build_subfield(H, H.i, var="i")


@pytest.fixture(scope="session")
def M2():
    return matrix_algebra(QQ, 2)
