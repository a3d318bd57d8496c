from fractions import Fraction
import random

import pytest

from gcfloer.polytope import WoodwardParams, build_cut_polytope
from gcfloer.potential import leading_potential


@pytest.fixture(scope="session")
def fixture_params() -> WoodwardParams:
    return WoodwardParams(n=3, r=5, lam1=10, lam2=0, lam3=-1)


@pytest.fixture(scope="session")
def cut_polytope(fixture_params):
    return build_cut_polytope(fixture_params)


@pytest.fixture(scope="session")
def cut_potential(cut_polytope):
    return leading_potential(cut_polytope)


@pytest.fixture(scope="session")
def lifted_points(fixture_params):
    from gcfloer.critsolve import lift_all

    return lift_all(fixture_params)


def random_strengthened_params(rng: random.Random) -> WoodwardParams:
    """A random parameter set satisfying the strengthened constraints,
    built so validity holds by construction and double-checked."""
    from gcfloer.polytope import STRENGTHENED, validate_params

    n = rng.randint(3, 8)
    den = rng.choice([1, 2, 3, 4, 6])
    lam2 = Fraction(rng.randint(-6, 6), den)
    gap = Fraction(rng.randint(1, 12), den)  # lam2 - lam3
    lam3 = lam2 - gap
    # r beyond every strengthened bound, with a strict rational margin
    margin = Fraction(rng.randint(1, 8), den)
    r = max(
        lam2 + (n + 1) * gap,
        Fraction((n + 4) * lam2 - (n + 2) * lam3, 2),
    ) + margin
    lam1 = r + Fraction(rng.randint(1, 9), den)
    p = WoodwardParams(n=n, r=r, lam1=lam1, lam2=lam2, lam3=lam3)
    assert validate_params(p, STRENGTHENED) == []
    return p
