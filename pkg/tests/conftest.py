import pytest

from rankforge import FieldSpec, default_field


@pytest.fixture(scope="session")
def f4():
    """F_4 = F_2[a]/(a^2 + a + 1)."""
    return default_field(2, 2)


@pytest.fixture(scope="session")
def f8():
    return default_field(2, 3)


@pytest.fixture(scope="session")
def f9():
    return default_field(3, 2)


@pytest.fixture(scope="session")
def f16():
    return default_field(2, 4)


@pytest.fixture(scope="session")
def tower16():
    """F_16 as a degree-2 extension of F_4 (true two-level tower)."""
    return FieldSpec(2, 2, 2)


def basis_elements(spec, n):
    """The first n power-basis elements 1, alpha, alpha^2, ..."""
    return [spec.element(spec.from_digits([1 if i == j else 0 for i in range(spec.m)]))
            for j in range(n)]
