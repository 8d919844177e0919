"""Random generators for expressions and Seifert data used by property tests."""

import math
import random
from fractions import Fraction

from mapdeg.model import (
    ManifoldExpression,
    MixedHyperbolicPieces,
    MonodromyMatrix,
    NilOther,
    NontrivialGraph,
    PSLtilde,
    S2xS1,
    Seifert,
    Spherical,
    SphericalFamily,
    TorusBundle,
    TorusSemiBundle,
    Hyperbolic,
    seifert,
)

LABELS = ["a", "x1", "weeks", "m.2", "g-7", "Q_3"]


def random_spherical(rng, max_order=1000):
    while True:
        kind = rng.choice(["lens", "lens", "prism", "tet", "oct", "ico"])
        if kind == "lens":
            p = rng.randint(1, 200)
            q = rng.choice([q for q in range(p) if math.gcd(p, q) == 1])
            params = (p, q)
            base = p
        elif kind == "prism":
            n = rng.randint(1, 60)
            params, base = (n,), 4 * n
        else:
            params, base = (), {"tet": 24, "oct": 48, "ico": 120}[kind]
        m = rng.choice([1, 1, 1, rng.randint(1, 20)])
        if math.gcd(m, base) != 1 or base * m > max_order:
            continue
        return Spherical(SphericalFamily(kind, params, m))


def _random_fiber(rng, max_a=12):
    a = rng.randint(2, max_a)
    b = rng.choice([b for b in range(1, a) if math.gcd(a, b) == 1])
    return a, b


def random_h2xe1(rng, max_alpha=1000):
    """A Seifert piece with chi_orb < 0 and e = 0, alpha <= max_alpha."""
    while True:
        fibers = [_random_fiber(rng) for _ in range(rng.randint(0, 3))]
        frac = sum((Fraction(b, a) for a, b in fibers), Fraction(0)) % 1
        if frac:
            q, p = frac.denominator, frac.numerator
            fibers.append((q, q - p))
        total = sum(Fraction(b, a) for a, b in fibers)
        assert total.denominator == 1
        if math.prod(a for a, _ in fibers) > max_alpha:
            continue
        orientable = rng.random() < 0.7
        genus = rng.randint(0, 3) if orientable else rng.randint(1, 4)
        s = seifert(orientable, genus, -int(total), fibers)
        chi = Fraction(2 - 2 * genus if orientable else 2 - genus) - sum(
            (1 - Fraction(1, a) for a, _ in fibers), Fraction(0))
        if chi < 0:
            return Seifert(s)


def random_monodromy(rng):
    while True:
        a, b, c = (rng.randint(-6, 6) for _ in range(3))
        if a != 0 and (1 + b * c) % a == 0:
            d = (1 + b * c) // a
            return MonodromyMatrix(a, b, c, d)


def random_seifert_invariants(rng, max_fibers=6, max_a=40):
    orientable = rng.random() < 0.6
    genus = rng.randint(0, 4) if orientable else rng.randint(1, 5)
    fibers = [_random_fiber(rng, max_a) for _ in range(rng.randint(0, max_fibers))]
    return seifert(orientable, genus, rng.randint(-5, 5), fibers)


def random_infinite_piece(rng):
    kind = rng.choice(["sph", "h2", "tb", "tsb", "nil", "s2"])
    if kind == "sph":
        return random_spherical(rng)
    if kind == "h2":
        return random_h2xe1(rng)
    if kind == "tb":
        return TorusBundle(random_monodromy(rng))
    if kind == "tsb":
        return TorusSemiBundle(rng.choice(LABELS))
    if kind == "nil":
        return NilOther(rng.choice(LABELS))
    return S2xS1()


def random_infinite_expression(rng, max_factors=4):
    return ManifoldExpression(tuple(random_infinite_piece(rng) for _ in range(rng.randint(1, max_factors))))


_FINITE = [Hyperbolic, PSLtilde, NontrivialGraph, MixedHyperbolicPieces]


def random_seifert_piece(rng):
    """Seifert piece of any accepted geometry (S3 data is rejected by the model)."""
    from mapdeg.errors import UnsupportedInputError
    from mapdeg.geometry import classify_geometry

    while True:
        p = Seifert(random_seifert_invariants(rng, max_fibers=4, max_a=12))
        try:
            classify_geometry(p)
        except UnsupportedInputError:
            continue
        return p


def random_piece(rng):
    x = rng.random()
    if x < 0.2:
        return rng.choice(_FINITE)(rng.choice(LABELS))
    if x < 0.35:
        return random_seifert_piece(rng)
    return random_infinite_piece(rng)


def random_expression(rng, max_factors=4):
    return ManifoldExpression(tuple(random_piece(rng) for _ in range(rng.randint(1, max_factors))))


def rng_for(seed):
    return random.Random(seed)
