from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from eqlat.corpus import boolean, build_named, chain, enumerate_semilattices, omega

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def small_semilattices():
    """Pool of bare structures with up to five elements, plus two decorated ones."""
    pool = list(enumerate_semilattices(5))
    pool.append(omega(3).structure)
    pool.append(omega(5).structure)
    return pool


@pytest.fixture(scope="session")
def tiny_semilattices():
    """Pool with at most four elements, small enough for relation-scan oracles."""
    pool = list(enumerate_semilattices(4))
    pool.append(omega(3).structure)
    return pool


@pytest.fixture(scope="session")
def b2():
    return boolean(2).structure


@pytest.fixture(scope="session")
def b3():
    return boolean(3).structure


@pytest.fixture(scope="session")
def chain3():
    return chain(2).structure


@pytest.fixture(scope="session")
def k_entry():
    return build_named("k_lattice")
