"""Prime pieces of closed oriented 3-manifolds and their exact invariants.

All values here are immutable.  Constructors validate their invariants and
raise :class:`~mapdeg.errors.InvalidInputError` naming the violated
constraint, so anything that exists is well formed.

Seifert convention: a fibration is recorded as ``(orientable, genus, b,
[(a1, b1), ...])`` with ``0 < bi < ai`` and ``gcd(ai, bi) = 1``.  Its Euler
number is ``-(b + sum(bi / ai))``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvalidInputError

LABEL_RE = re.compile(r"[A-Za-z0-9_.\-]+\Z")

# |pi_1| of the base spherical space forms.
SPHERICAL_KINDS = ("lens", "prism", "tet", "oct", "ico")
_FIXED_ORDERS = {"tet": 24, "oct": 48, "ico": 120}


def _require(ok: bool, constraint: str, message: str | None = None) -> None:
    if not ok:
        raise InvalidInputError(constraint, message)


# ---------------------------------------------------------------------------
# Seifert invariants


@dataclass(frozen=True)
class SeifertInvariants:
    """Normalized Seifert data.  Use :func:`seifert` to build from raw input."""

    base_orientable: bool
    base_genus: int
    euler_b: int
    exceptional_fibers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        _require(self.base_genus >= 0, "genus>=0")
        _require(self.base_orientable or self.base_genus >= 1,
                 "crosscaps>=1", "non-orientable base needs at least one crosscap")
        for a, b in self.exceptional_fibers:
            _require(a >= 2, "a>=2", f"fiber index {a} must be at least 2")
            _require(math.gcd(a, b) == 1, "gcd(a,b)=1", f"fiber ({a},{b}) is not coprime")
            _require(0 < b < a, "0<b<a", f"fiber ({a},{b}) is not normalized")
        _require(list(self.exceptional_fibers) == sorted(self.exceptional_fibers),
                 "fibers sorted")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.exceptional_fibers)

    def sort_key(self):
        return (not self.base_orientable, self.base_genus, self.euler_b, self.exceptional_fibers)


def seifert(orientable: bool, genus: int, euler_b: int, fibers=()) -> SeifertInvariants:
    """Build normalized Seifert invariants from raw fiber pairs.

    Each ``(a, b)`` is reduced to ``0 < b < a`` by moving ``b // a`` into the
    obstruction term; this keeps the Euler number fixed.
    """
    fibers = [(int(a), int(b)) for a, b in fibers]
    euler_b = int(euler_b)
    out = []
    for a, b in fibers:
        _require(a >= 2, "a>=2", f"fiber index {a} must be at least 2")
        _require(math.gcd(a, b) == 1, "gcd(a,b)=1", f"fiber ({a},{b}) is not coprime")
        q, r = divmod(b, a)
        euler_b += q
        out.append((a, r))
    return SeifertInvariants(bool(orientable), int(genus), euler_b, tuple(sorted(out)))


def normalize_seifert(s: SeifertInvariants) -> SeifertInvariants:
    return seifert(s.base_orientable, s.base_genus, s.euler_b, s.exceptional_fibers)


def alpha(s: SeifertInvariants) -> int:
    """Product of the exceptional fiber indices; 1 when there are none."""
    return math.prod(s.indices)


def chi_orb(s: SeifertInvariants) -> Fraction:
    """Orbifold Euler characteristic of the base."""
    chi = Fraction(2 - 2 * s.base_genus if s.base_orientable else 2 - s.base_genus)
    for a in s.indices:
        chi -= 1 - Fraction(1, a)
    return chi


def euler_number(s: SeifertInvariants) -> Fraction:
    return -(s.euler_b + sum((Fraction(b, a) for a, b in s.exceptional_fibers), Fraction(0)))


# ---------------------------------------------------------------------------
# Torus bundle monodromy


@dataclass(frozen=True)
class MonodromyMatrix:
    m11: int
    m12: int
    m21: int
    m22: int

    def __post_init__(self):
        _require(self.det == 1, "det=1",
                 f"monodromy determinant is {self.det}, expected 1")

    @property
    def det(self) -> int:
        return self.m11 * self.m22 - self.m12 * self.m21

    @property
    def trace(self) -> int:
        return self.m11 + self.m22

    def is_plus_minus_identity(self) -> bool:
        return self.m12 == 0 and self.m21 == 0 and self.m11 == self.m22 and abs(self.m11) == 1

    def sort_key(self):
        return (self.m11, self.m12, self.m21, self.m22)


# ---------------------------------------------------------------------------
# Spherical space forms


@dataclass(frozen=True)
class SphericalFamily:
    """A named spherical space form, optionally extended by a coprime cyclic group.

    ``params`` is ``(p, q)`` for lens spaces, ``(n,)`` for prism manifolds and
    empty for the three polyhedral families.
    """

    kind: str
    params: tuple[int, ...] = ()
    cyclic: int = 1

    def __post_init__(self):
        _require(self.kind in SPHERICAL_KINDS, "known family", f"unknown spherical family {self.kind!r}")
        if self.kind == "lens":
            _require(len(self.params) == 2, "lens(p,q)")
            p, q = self.params
            _require(p >= 1, "p>=1", f"lens order {p} must be at least 1")
            _require(math.gcd(p, q) == 1, "gcd(p,q)=1", f"gcd({p},{q}) = {math.gcd(p, q)}")
            _require(0 <= q < p, "0<=q<p", f"lens parameter q={q} must satisfy 0 <= q < {p}")
        elif self.kind == "prism":
            _require(len(self.params) == 1, "prism(n)")
            _require(self.params[0] >= 1, "n>=1", f"prism parameter {self.params[0]} must be at least 1")
        else:
            _require(self.params == (), f"{self.kind} takes no parameters")
        _require(self.cyclic >= 1, "m>=1", f"cyclic factor {self.cyclic} must be at least 1")
        base = self.base_order
        _require(math.gcd(self.cyclic, base) == 1, "gcd(m,order)=1",
                 f"cyclic factor {self.cyclic} is not coprime to base order {base}")

    @property
    def base_order(self) -> int:
        if self.kind == "lens":
            return self.params[0]
        if self.kind == "prism":
            return 4 * self.params[0]
        return _FIXED_ORDERS[self.kind]

    def sort_key(self):
        return (SPHERICAL_KINDS.index(self.kind), self.params, self.cyclic)


def pi1_order(s: SphericalFamily) -> int:
    """Order of the fundamental group of a spherical space form."""
    return s.base_order * s.cyclic


# ---------------------------------------------------------------------------
# Prime descriptors


class PrimeDescriptor:
    """Base class for the prime-piece variants below."""

    rank = 99

    def sort_key(self):
        return (self.rank,)

    def __str__(self):
        from .dsl import render_piece

        return render_piece(self)


@dataclass(frozen=True, eq=True)
class _Labelled(PrimeDescriptor):
    label: str

    def __post_init__(self):
        _require(bool(LABEL_RE.match(self.label)), "label",
                 f"invalid label {self.label!r}")

    def sort_key(self):
        return (self.rank, self.label)


@dataclass(frozen=True, eq=True)
class Spherical(PrimeDescriptor):
    family: SphericalFamily
    rank = 0

    def sort_key(self):
        return (self.rank, self.family.sort_key())


@dataclass(frozen=True, eq=True)
class Seifert(PrimeDescriptor):
    invariants: SeifertInvariants
    rank = 1

    def sort_key(self):
        return (self.rank, self.invariants.sort_key())


@dataclass(frozen=True, eq=True)
class TorusBundle(PrimeDescriptor):
    matrix: MonodromyMatrix
    rank = 2

    def sort_key(self):
        return (self.rank, self.matrix.sort_key())


@dataclass(frozen=True, eq=True)
class TorusSemiBundle(_Labelled):
    rank = 3


@dataclass(frozen=True, eq=True)
class NilOther(_Labelled):
    rank = 4


@dataclass(frozen=True, eq=True)
class S2xS1(PrimeDescriptor):
    rank = 5


@dataclass(frozen=True, eq=True)
class Hyperbolic(_Labelled):
    rank = 6


@dataclass(frozen=True, eq=True)
class PSLtilde(_Labelled):
    rank = 7


@dataclass(frozen=True, eq=True)
class NontrivialGraph(_Labelled):
    rank = 8


@dataclass(frozen=True, eq=True)
class MixedHyperbolicPieces(_Labelled):
    rank = 9


@dataclass(frozen=True)
class ManifoldExpression:
    """A connected sum of prime pieces, kept in input order."""

    factors: tuple[PrimeDescriptor, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        _require(len(self.factors) >= 1, "nonempty", "a connected sum needs at least one factor")

    def normalize(self) -> ManifoldExpression:
        return ManifoldExpression(tuple(sorted(self.factors, key=lambda p: p.sort_key())))

    def doubled(self) -> ManifoldExpression:
        """``N # N`` regrouped as ``R # R`` for each prime factor ``R``."""
        return ManifoldExpression(tuple(p for p in self.factors for _ in range(2)))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def __str__(self):
        from .dsl import render

        return render(self)
