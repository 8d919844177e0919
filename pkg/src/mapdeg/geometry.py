"""Thurston geometry and degree class of each prime piece.

Seifert pieces are sorted by the sign of the base orbifold Euler
characteristic and whether the Euler number vanishes:

    =========  =======  =========
    chi_orb    e = 0    e != 0
    =========  =======  =========
    > 0        S2xE1    S3
    = 0        E3       Nil
    < 0        H2xE1    PSLtilde
    =========  =======  =========

Torus bundles are sorted by the trace of the monodromy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .errors import UnsupportedInputError
from .model import (
    ManifoldExpression,
    MixedHyperbolicPieces,
    NilOther,
    NontrivialGraph,
    PrimeDescriptor,
    PSLtilde,
    S2xS1,
    Seifert,
    SeifertInvariants,
    Spherical,
    TorusBundle,
    TorusSemiBundle,
    Hyperbolic,
    alpha,
    chi_orb,
    euler_number,
    pi1_order,
)


class Geometry(str, enum.Enum):
    H3 = "H3"
    PSLtilde = "PSLtilde"
    H2xE1 = "H2xE1"
    Sol = "Sol"
    Nil = "Nil"
    E3 = "E3"
    S3 = "S3"
    S2xE1 = "S2xE1"
    NontrivialGraph = "NontrivialGraph"
    MixedWithHyperbolic = "MixedWithHyperbolic"


FINITE_GEOMETRIES = frozenset(
    {Geometry.H3, Geometry.PSLtilde, Geometry.NontrivialGraph, Geometry.MixedWithHyperbolic}
)


class ClassKind(str, enum.Enum):
    C1 = "C1_Spherical"
    C2 = "C2_H2xE1"
    C3 = "C3_TorusBundleOrSemi"
    C4 = "C4_NilOther"
    C5 = "C5_S2xS1"
    FINITE = "Finite"


class FiniteReason(str, enum.Enum):
    """Why a target has finite D(M, N) for every M."""

    HYPERBOLIC = "hyperbolic"                      # volume bound on hyperbolic targets
    HYPERBOLIC_PIECE = "hyperbolic-piece"          # simplicial volume of a hyperbolic JSJ piece
    SEIFERT_VOLUME = "seifert-volume"              # PSL~ geometry has positive Seifert volume
    GRAPH_MANIFOLD = "graph-manifold"              # virtually positive Seifert volume


_FINITE_REASON = {
    Geometry.H3: FiniteReason.HYPERBOLIC,
    Geometry.MixedWithHyperbolic: FiniteReason.HYPERBOLIC_PIECE,
    Geometry.PSLtilde: FiniteReason.SEIFERT_VOLUME,
    Geometry.NontrivialGraph: FiniteReason.GRAPH_MANIFOLD,
}

TAG_GEOMETRY_NOTE = "unresolved (tag-level input)"


@dataclass(frozen=True)
class DegreeClass:
    """One of the five infinite classes, or Finite.

    ``order`` is set for C1, ``alpha`` for C2 and ``reason`` for Finite.
    ``heuristic`` marks Seifert Nil pieces sorted into C4 by base orbifold.
    """

    kind: ClassKind
    order: int | None = None
    alpha: int | None = None
    reason: FiniteReason | None = None
    heuristic: bool = False

    @property
    def is_finite(self) -> bool:
        return self.kind is ClassKind.FINITE

    @property
    def short(self) -> str:
        return self.kind.name if self.kind is not ClassKind.FINITE else "Finite"


def seifert_geometry(s: SeifertInvariants) -> Geometry:
    """Geometry of a Seifert fibration, including the S3 case."""
    chi = chi_orb(s)
    flat = euler_number(s) == 0
    if chi > 0:
        return Geometry.S2xE1 if flat else Geometry.S3
    if chi == 0:
        return Geometry.E3 if flat else Geometry.Nil
    return Geometry.H2xE1 if flat else Geometry.PSLtilde


def _check_supported(s: SeifertInvariants, geom: Geometry) -> None:
    if geom is Geometry.S3:
        raise UnsupportedInputError(
            "not-spherical-sfs",
            "Seifert data with S3 geometry is not accepted; "
            "write the piece as lens(p,q), prism(n), tet, oct or ico",
        )
    if geom is Geometry.S2xE1 and not s.base_orientable:
        raise UnsupportedInputError(
            "not-prime-sfs",
            "Seifert data over the projective plane with e = 0 is RP3 # RP3, "
            "which is not prime; enter its prime factors instead",
        )


def classify_geometry(p: PrimeDescriptor) -> Geometry:
    if isinstance(p, Spherical):
        return Geometry.S3
    if isinstance(p, S2xS1):
        return Geometry.S2xE1
    if isinstance(p, Hyperbolic):
        return Geometry.H3
    if isinstance(p, PSLtilde):
        return Geometry.PSLtilde
    if isinstance(p, NontrivialGraph):
        return Geometry.NontrivialGraph
    if isinstance(p, MixedHyperbolicPieces):
        return Geometry.MixedWithHyperbolic
    if isinstance(p, NilOther):
        return Geometry.Nil
    if isinstance(p, TorusSemiBundle):
        return Geometry.Sol
    if isinstance(p, Seifert):
        geom = seifert_geometry(p.invariants)
        _check_supported(p.invariants, geom)
        return geom
    if isinstance(p, TorusBundle):
        a = p.matrix
        t = abs(a.trace)
        if t > 2:
            return Geometry.Sol
        if a.is_plus_minus_identity() or t <= 1:
            return Geometry.E3
        return Geometry.Nil
    raise TypeError(f"not a prime descriptor: {p!r}")


def geometry_note(p: PrimeDescriptor) -> str | None:
    if isinstance(p, TorusSemiBundle):
        return TAG_GEOMETRY_NOTE
    return None


# Euclidean base orbifolds whose Nil/E3 Seifert spaces are torus bundles or
# semi-bundles, keyed by (orientable, genus, fiber indices).
_BUNDLE_BASES = {
    (True, 1, ()),            # torus
    (False, 2, ()),           # Klein bottle
    (True, 0, (2, 2, 2, 2)),  # pillowcase
    (False, 1, (2, 2)),       # RP2(2,2)
}


def degree_class(p: PrimeDescriptor) -> DegreeClass:
    geom = classify_geometry(p)
    if geom in FINITE_GEOMETRIES:
        return DegreeClass(ClassKind.FINITE, reason=_FINITE_REASON[geom])
    if isinstance(p, Spherical):
        return DegreeClass(ClassKind.C1, order=pi1_order(p.family))
    if isinstance(p, S2xS1):
        return DegreeClass(ClassKind.C5)
    if isinstance(p, (TorusBundle, TorusSemiBundle)):
        return DegreeClass(ClassKind.C3)
    if isinstance(p, NilOther):
        return DegreeClass(ClassKind.C4)
    assert isinstance(p, Seifert)
    s = p.invariants
    if geom is Geometry.H2xE1:
        return DegreeClass(ClassKind.C2, alpha=alpha(s))
    if geom is Geometry.S2xE1:
        return DegreeClass(ClassKind.C5)
    if geom is Geometry.E3:
        return DegreeClass(ClassKind.C3)
    # Nil
    base = (s.base_orientable, s.base_genus, s.indices)
    if base in _BUNDLE_BASES:
        return DegreeClass(ClassKind.C3)
    return DegreeClass(ClassKind.C4, heuristic=True)


@dataclass(frozen=True)
class NormalForm:
    """Factors of a connected sum bucketed by degree class.

    ``p_list`` holds spherical pieces, ``q_list`` H2xE1 pieces, ``u_list``
    torus bundle class pieces, ``v_list`` the remaining Nil pieces and
    ``s_count`` the number of S2xS1 summands.
    """

    p_list: tuple[PrimeDescriptor, ...] = ()
    q_list: tuple[PrimeDescriptor, ...] = ()
    u_list: tuple[PrimeDescriptor, ...] = ()
    v_list: tuple[PrimeDescriptor, ...] = ()
    s_count: int = 0
    finite_list: tuple[PrimeDescriptor, ...] = ()
    orders: tuple[int, ...] = field(default=(), compare=False)
    alphas: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if not self.orders and self.p_list:
            object.__setattr__(self, "orders", tuple(pi1_order(p.family) for p in self.p_list))
        if not self.alphas and self.q_list:
            object.__setattr__(self, "alphas", tuple(alpha(q.invariants) for q in self.q_list))


def normal_form(m: ManifoldExpression) -> NormalForm:
    buckets: dict[ClassKind, list] = {k: [] for k in ClassKind}
    for p in m.factors:
        buckets[degree_class(p).kind].append(p)
    return NormalForm(
        p_list=tuple(buckets[ClassKind.C1]),
        q_list=tuple(buckets[ClassKind.C2]),
        u_list=tuple(buckets[ClassKind.C3]),
        v_list=tuple(buckets[ClassKind.C4]),
        s_count=len(buckets[ClassKind.C5]),
        finite_list=tuple(buckets[ClassKind.FINITE]),
    )
