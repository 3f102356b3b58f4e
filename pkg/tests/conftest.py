import pytest

from convlab import build_sieve, tabulate


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(10_000)


@pytest.fixture(scope="session")
def sieve_1m():
    return build_sieve(1_000_000)


@pytest.fixture(scope="session")
def sieve_10m():
    return build_sieve(10_000_000)


@pytest.fixture(scope="session")
def dtable_10m(sieve_10m):
    # shared by the convergence sweep tests; ~40 MB, built once
    return tabulate(sieve_10m, "divisor", 10_000_000)


@pytest.fixture(scope="session")
def dtable_small(sieve_small):
    return tabulate(sieve_small, "divisor", 10_000)
