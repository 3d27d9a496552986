import random
from fractions import Fraction

import pytest

from geoprove.corpus import corpus_path
from geoprove.dsl import load_construction
from geoprove.polycore import Polynomial, Ring


def random_poly(rng: random.Random, ring: Ring, max_terms=4, max_deg=3, coeff=5, rational=True):
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        exps = [0] * len(ring)
        for _ in range(rng.randint(0, max_deg)):
            exps[rng.randrange(len(ring))] += 1
        num = rng.randint(-coeff, coeff)
        den = rng.randint(1, coeff) if rational else 1
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + Fraction(num, den)
    return Polynomial(ring, terms)


def assert_canonical(p: Polynomial):
    for mono, c in p.terms.items():
        assert isinstance(c, Fraction)
        assert c != 0
        assert c.denominator > 0
        assert all(e >= 0 for e in mono) and len(mono) == len(p.ring)


def same_up_to_scalar(p: Polynomial, q: Polynomial) -> bool:
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if p.terms.keys() != q.terms.keys():
        return False
    mono = next(iter(p.terms))
    return p * q.terms[mono] == q * p.terms[mono]


@pytest.fixture
def corpus():
    return lambda name: load_construction(corpus_path(name))


@pytest.fixture
def xy():
    return Ring(["x", "y"])


def raw_system(ring, hypotheses, thesis, free=()):
    """A PolySystem built directly from polynomials, with no geometry behind it."""
    from geoprove.algebraizer import PolySystem

    free = tuple(free)
    return PolySystem(
        ring=ring,
        hypotheses=list(hypotheses),
        labels=[f"H{i + 1}" for i in range(len(hypotheses))],
        thesis=thesis,
        thesis_label="thesis",
        free=free,
        dependent=tuple(v for v in ring.names if v not in free),
        coords={},
        free_points=(),
    )
