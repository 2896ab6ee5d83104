from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from borelq.algebra import UqBorel
from borelq.cartan import cartan_datum
from borelq.hopf import BorelHopf
from borelq.quotient import FiniteHopf, quotient_spec

settings.register_profile("borelq", deadline=None, derandomize=True, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("borelq")


@pytest.fixture(scope="session")
def algebras():
    return {t: UqBorel(cartan_datum(t)) for t in ("A1", "A2", "B2", "G2")}


@pytest.fixture(scope="session")
def A1(algebras):
    return algebras["A1"]


@pytest.fixture(scope="session")
def A2(algebras):
    return algebras["A2"]


@pytest.fixture(scope="session")
def hopf_A1(A1):
    return BorelHopf(A1)


@pytest.fixture(scope="session")
def hopf_A2(A2):
    return BorelHopf(A2)


@pytest.fixture(scope="session")
def finite():
    cache: dict = {}

    def get(r: int, t: str = "A1") -> FiniteHopf:
        if (t, r) not in cache:
            cache[(t, r)] = FiniteHopf(quotient_spec(cartan_datum(t), r))
        return cache[(t, r)]

    return get
