"""Mapping degree finiteness for closed oriented 3-manifolds.

Parse a connected sum of prime pieces, classify each piece, decide whether
some domain manifold has infinitely many mapping degrees onto it, and build
explicit witness degrees with a checkable construction certificate.
"""

from .dsl import ParseError, parse, render
from .errors import (
    InvalidInputError,
    MapdegError,
    NoFamilyError,
    NotDecomposableError,
    NoWitnessError,
    UnsupportedInputError,
)
from .families import (
    AllIntegers,
    APPlusOne,
    FourthPowersMod12,
    OddSquares,
    Shifted,
    WitnessFourth,
    combined_base,
    enumerate_family,
    family_for_class,
    member,
    witness_family,
)
from .geometry import ClassKind, DegreeClass, Geometry, NormalForm, classify_geometry, degree_class, normal_form
from .model import (
    ManifoldExpression,
    MonodromyMatrix,
    SeifertInvariants,
    SphericalFamily,
    alpha,
    chi_orb,
    euler_number,
    pi1_order,
    seifert,
)
from .witness import (
    build_witness,
    decide_exists_infinite,
    decide_self_infinite,
    four_forms,
    validate_recipe,
)

__version__ = "0.1.0"
