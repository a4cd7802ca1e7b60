"""Shared fixtures: the diamond demo instance and seeded samplers."""

import random

import pytest

from cocycle_forge.cochain import TwoCochain
from cocycle_forge.gauge import Gauge
from cocycle_forge.scalars import RingAuto, ScalarDomain, enumerate_autos, enumerate_units, random_scalar
from cocycle_forge.semigroup import SquareFreeSemigroup


def make_diamond():
    """Idempotents e1..e4, arrows e1->e2->e4 and e1->e3->e4, no nonzero
    arrow.arrow products."""
    return SquareFreeSemigroup.validate(
        ["e1", "e2", "e3", "e4"],
        [("s12", "e1", "e2"), ("s13", "e1", "e3"),
         ("s24", "e2", "e4"), ("s34", "e3", "e4")],
        {},
    )


def make_demo_cocycle(domain, sg=None):
    """The demo twist: alpha is the Frobenius on s34 only, xi = 1."""
    sg = sg or make_diamond()
    return TwoCochain(sg, domain, alpha={"s34": RingAuto.frobenius(domain, 1)})


def random_gauge(sg, domain, rng):
    """A seeded random gauge; mu drawn from the automorphism list when the
    domain is enumerable, otherwise random conjugations."""
    if domain.kind == "rational_quaternion":
        mu = {e: RingAuto.inner(domain, random_scalar(domain, rng, nonzero=True))
              for e in sg.idempotents}
        eta = {s: random_scalar(domain, rng, nonzero=True) for s in sg.elements}
        return Gauge(sg, domain, mu, eta)
    autos = enumerate_autos(domain)
    if domain.kind == "finite_field":
        units = enumerate_units(domain)
        eta = {s: rng.choice(units) for s in sg.elements}
    else:
        eta = {s: random_scalar(domain, rng, nonzero=True) for s in sg.elements}
    mu = {e: rng.choice(autos) for e in sg.idempotents}
    return Gauge(sg, domain, mu, eta)


@pytest.fixture(scope="session")
def gf4():
    return ScalarDomain.finite_field(2, 2)


@pytest.fixture(scope="session")
def gf9():
    return ScalarDomain.finite_field(3, 2)


@pytest.fixture(scope="session")
def gf2():
    return ScalarDomain.finite_field(2, 1)


@pytest.fixture(scope="session")
def quat():
    return ScalarDomain.quaternion()


@pytest.fixture(scope="session")
def rat():
    return ScalarDomain.rational()


@pytest.fixture(scope="session")
def diamond():
    return make_diamond()


@pytest.fixture()
def demo_gf4(diamond, gf4):
    return make_demo_cocycle(gf4, diamond)


@pytest.fixture()
def demo_gf9(diamond, gf9):
    return make_demo_cocycle(gf9, diamond)


@pytest.fixture()
def rng():
    return random.Random(20240401)
