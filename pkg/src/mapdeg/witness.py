"""Decisions on degree-set finiteness and the explicit witness construction.

For a target ``N`` whose prime factors all lie in infinite degree classes,
``d(N, l) = (B*l + 1)**4`` with ``B = 12 * prod|pi_1(P_i)| * prod alpha(Q_j)``
is a self-map degree of every factor, so ``d(N, l) + 1`` is realized by a
pi_1-surjective map ``N # N -> N``.  The certificate records the two
constructions used: pinching ``R # R -> R v R`` and folding (degree goes up
by one), then gluing equal-degree maps across a connected sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .errors import NotDecomposableError, NoWitnessError
from .families import (
    fourth_root_congruent,
    family_for_class,
    isqrt_exact,
    member,
    combined_base,
)
from .geometry import (
    ClassKind,
    DegreeClass,
    Geometry,
    NormalForm,
    classify_geometry,
    degree_class,
    normal_form,
)
from .model import ManifoldExpression, PrimeDescriptor

DEFAULT_L_VALUES = (0, 1, 2, 3, 4)


@dataclass(frozen=True)
class FactorRow:
    descriptor: PrimeDescriptor
    geometry: Geometry
    degree_class: DegreeClass


@dataclass(frozen=True)
class Verdict:
    exists_infinite: bool
    self_infinite: bool
    per_factor: tuple[FactorRow, ...]
    blocking_factors: tuple[FactorRow, ...]


def factor_rows(m: ManifoldExpression) -> tuple[FactorRow, ...]:
    return tuple(FactorRow(p, classify_geometry(p), degree_class(p)) for p in m.factors)


def decide_exists_infinite(m: ManifoldExpression) -> Verdict:
    rows = factor_rows(m)
    blockers = tuple(r for r in rows if r.degree_class.is_finite)
    return Verdict(
        exists_infinite=not blockers,
        self_infinite=_self_infinite(rows),
        per_factor=rows,
        blocking_factors=blockers,
    )


def _self_infinite(rows) -> bool:
    if len(rows) == 1:
        return not rows[0].degree_class.is_finite
    return all(r.degree_class.kind in (ClassKind.C1, ClassKind.C5) for r in rows)


def decide_self_infinite(m: ManifoldExpression) -> bool:
    """Whether N has infinitely many self-map degrees.

    A prime N qualifies iff it lies in one of the five infinite classes
    (geometry S3, S2xE1, E3, Nil, Sol or H2xE1).  A composite N qualifies
    iff every factor is spherical or S2xS1.
    """
    return _self_infinite(factor_rows(m))


# ---------------------------------------------------------------------------
# Four forms


@dataclass(frozen=True)
class FourForms:
    """``d`` written as ``C1*order + 1``, ``C2*alpha + 1``, ``(2C3+1)^2``, ``(12C4+1)^4``.

    ``c3``/``c4`` are None when the form does not hold and was not required.
    """

    d: int
    c1_list: tuple[tuple[int, int], ...]
    c2_list: tuple[tuple[int, int], ...]
    c3: int | None
    c4: int | None

    def check(self) -> bool:
        d = self.d
        return (
            all(c * m + 1 == d for m, c in self.c1_list)
            and all(c * a + 1 == d for a, c in self.c2_list)
            and (self.c3 is None or (2 * self.c3 + 1) ** 2 == d)
            and (self.c4 is None or (12 * self.c4 + 1) ** 4 == d)
        )


def four_forms(d: int, n: NormalForm) -> FourForms:
    c1 = []
    for order in n.orders:
        q, r = divmod(d - 1, order)
        if r:
            raise NotDecomposableError("C1", f"{d} - 1 is not divisible by |pi_1| = {order}")
        c1.append((order, q))
    c2 = []
    for a in n.alphas:
        q, r = divmod(d - 1, a)
        if r:
            raise NotDecomposableError("C2", f"{d} - 1 is not divisible by alpha = {a}")
        c2.append((a, q))

    root = isqrt_exact(d)
    c3 = (root - 1) // 2 if root is not None and root % 2 else None
    if c3 is None and n.u_list:
        raise NotDecomposableError("C3", f"{d} is not an odd square")

    r4 = fourth_root_congruent(d, 12)
    c4 = (r4 - 1) // 12 if r4 is not None else None
    if c4 is None and n.v_list:
        raise NotDecomposableError("C4", f"{d} is not a fourth power of an integer = 1 mod 12")
    return FourForms(d, tuple(c1), tuple(c2), c3, c4)


# ---------------------------------------------------------------------------
# Map recipes


@dataclass(frozen=True)
class SelfMap:
    """A self-map of a prime factor with degree in the factor's class family."""

    factor: PrimeDescriptor
    degree: int
    parameter: int
    kind = "SelfMap"
    pi1_surjective = None


@dataclass(frozen=True)
class Pinch:
    """R # R -> R v R -> R, identity on one wedge summand: degree + 1."""

    inner: "MapRecipe"
    degree: int
    kind = "Pinch"
    pi1_surjective = True

    @property
    def children(self):
        return (self.inner,)


@dataclass(frozen=True)
class ConnectedSum:
    """Glue equal-degree maps across the summing spheres."""

    children: tuple["MapRecipe", ...]
    degree: int
    kind = "ConnectedSum"
    pi1_surjective = True


MapRecipe = Union[SelfMap, Pinch, ConnectedSum]


def pinch(inner: MapRecipe) -> Pinch:
    return Pinch(inner, inner.degree + 1)


def connected_sum(children) -> ConnectedSum:
    children = tuple(children)
    return ConnectedSum(children, children[0].degree)


@dataclass(frozen=True)
class RecipeCheck:
    ok: bool
    degree: int | None
    diagnostics: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def validate_recipe(r: MapRecipe) -> RecipeCheck:
    """Re-check the degree bookkeeping of a recipe tree.

    Stops at the first violation, depth first.
    """
    problem = _first_violation(r)
    if problem:
        return RecipeCheck(False, None, (problem,))
    return RecipeCheck(True, r.degree)


def _first_violation(r) -> str | None:
    if isinstance(r, SelfMap):
        c = degree_class(r.factor)
        if c.is_finite:
            return f"{r.factor}: finite degree class has no self-map family"
        fam = family_for_class(c)
        got = member(fam, r.degree)
        if not got:
            return f"{r.factor}: degree {r.degree} is not in {fam}"
        if got.l != r.parameter:
            return f"{r.factor}: parameter {r.parameter} does not produce degree {r.degree} (expected {got.l})"
        return None
    if isinstance(r, Pinch):
        problem = _first_violation(r.inner)
        if problem:
            return problem
        if r.degree != r.inner.degree + 1:
            return f"pinch degree {r.degree} ≠ inner degree {r.inner.degree} + 1"
        return None
    if isinstance(r, ConnectedSum):
        if not r.children:
            return "connected sum with no summands"
        for child in r.children:
            problem = _first_violation(child)
            if problem:
                return problem
        degrees = [c.degree for c in r.children]
        for d in degrees[1:]:
            if d != degrees[0]:
                return f"unequal child degrees {degrees[0]} ≠ {d}"
        if r.degree != degrees[0]:
            return f"connected sum degree {r.degree} ≠ common child degree {degrees[0]}"
        return None
    return f"unknown recipe node {r!r}"


def recipe_to_json(r: MapRecipe) -> dict:
    out = {"kind": r.kind, "degree": str(r.degree), "pi1_surjective": r.pi1_surjective}
    if isinstance(r, SelfMap):
        out["factor"] = str(r.factor)
        out["parameter"] = str(r.parameter)
        out["children"] = []
    else:
        out["children"] = [recipe_to_json(c) for c in r.children]
    return out


# ---------------------------------------------------------------------------
# Witness package


@dataclass(frozen=True)
class WitnessPackage:
    source: ManifoldExpression
    domain: ManifoldExpression
    base: int
    samples: tuple[tuple[int, int], ...]
    four_forms: tuple[FourForms, ...]
    recipe: MapRecipe
    recipe_l: int

    @property
    def domain_description(self) -> str:
        return "N # N"


def witness_degree(base: int, l: int) -> int:
    return (base * l + 1) ** 4 + 1


def build_witness(m: ManifoldExpression, l_values=DEFAULT_L_VALUES) -> WitnessPackage:
    verdict = decide_exists_infinite(m)
    if not verdict.exists_infinite:
        raise NoWitnessError(
            [(row.descriptor, row.degree_class.reason.value) for row in verdict.blocking_factors]
        )
    l_values = list(l_values)
    if not l_values:
        raise ValueError("need at least one l value")
    nf = normal_form(m)
    base = combined_base(nf)
    samples, forms = [], []
    for l in l_values:
        d = (base * l + 1) ** 4
        ff = four_forms(d, nf)
        if not ff.check():
            raise AssertionError(f"four forms failed to verify for l={l}")
        samples.append((l, d + 1))
        forms.append(ff)

    d0 = (base * l_values[0] + 1) ** 4
    pinches = []
    for row in verdict.per_factor:
        fam = family_for_class(row.degree_class)
        got = member(fam, d0)
        if not got:
            raise AssertionError(f"{row.descriptor}: {d0} not in {fam}")
        pinches.append(pinch(SelfMap(row.descriptor, d0, got.l)))
    recipe = connected_sum(pinches)

    return WitnessPackage(
        source=m,
        domain=m.doubled(),
        base=base,
        samples=tuple(samples),
        four_forms=tuple(forms),
        recipe=recipe,
        recipe_l=l_values[0],
    )
