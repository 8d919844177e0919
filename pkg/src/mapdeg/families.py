"""Symbolic infinite sets of degrees.

Families are never materialized.  Membership is decided by modular
arithmetic and exact integer root extraction; enumeration walks the
parameter space in increasing order of the member values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count, islice
from typing import Iterator, NamedTuple

from .errors import NoFamilyError, NoWitnessError
from .geometry import ClassKind, DegreeClass, NormalForm


def isqrt_exact(d: int) -> int | None:
    """Nonnegative square root of ``d`` if it is a perfect square."""
    if d < 0:
        return None
    r = math.isqrt(d)
    return r if r * r == d else None


def ifourth_root(d: int) -> int:
    """floor(d ** (1/4)) for d >= 0, computed exactly."""
    if d < 0:
        raise ValueError("fourth root of a negative integer")
    return math.isqrt(math.isqrt(d))


def ifourth_root_exact(d: int) -> int | None:
    if d < 0:
        return None
    r = ifourth_root(d)
    return r if r ** 4 == d else None


class DegreeFamily:
    """Base class of the family variants."""

    kind = ""

    def parameters(self) -> dict:
        return {}

    def to_json(self) -> dict:
        params = {}
        for k, v in self.parameters().items():
            params[k] = v.to_json() if isinstance(v, DegreeFamily) else str(v)
        return {"kind": self.kind, "parameters": params}


@dataclass(frozen=True)
class AllIntegers(DegreeFamily):
    kind = "AllIntegers"

    def __str__(self):
        return "Z"


@dataclass(frozen=True)
class APPlusOne(DegreeFamily):
    """{l * modulus + 1 : l in Z}"""

    modulus: int
    kind = "APPlusOne"

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")

    def parameters(self):
        return {"modulus": self.modulus}

    def __str__(self):
        return f"{{{self.modulus}l+1}}"


@dataclass(frozen=True)
class OddSquares(DegreeFamily):
    kind = "OddSquares"

    def __str__(self):
        return "{(2l+1)^2}"


@dataclass(frozen=True)
class FourthPowersMod12(DegreeFamily):
    """{l^4 : l = 1 mod 12}"""

    kind = "FourthPowersMod12"

    def __str__(self):
        return "{l^4 : l=1 mod 12}"


@dataclass(frozen=True)
class WitnessFourth(DegreeFamily):
    """{(base * l + 1)^4 : l in Z}"""

    base: int
    kind = "WitnessFourth"

    def __post_init__(self):
        if self.base < 12 or self.base % 12:
            raise ValueError("witness base must be a positive multiple of 12")

    def parameters(self):
        return {"base": self.base}

    def __str__(self):
        return f"{{({self.base}l+1)^4}}"


@dataclass(frozen=True)
class Shifted(DegreeFamily):
    inner: DegreeFamily
    offset: int
    kind = "Shifted"

    def __post_init__(self):
        if isinstance(self.inner, Shifted):
            raise ValueError("Shifted families nest at most one level")

    def parameters(self):
        return {"inner": self.inner, "offset": self.offset}

    def __str__(self):
        sign = "+" if self.offset >= 0 else "-"
        return f"{self.inner} {sign} {abs(self.offset)}"


class Membership(NamedTuple):
    """Result of :func:`member`.

    ``l`` is the family parameter and ``root`` the exact integer root for
    square and fourth-power families.
    """

    ok: bool
    l: int | None = None
    root: int | None = None

    def __bool__(self):
        return self.ok


_NO = Membership(False)


def family_for_class(c: DegreeClass) -> DegreeFamily:
    if c.kind is ClassKind.C1:
        return APPlusOne(c.order)
    if c.kind is ClassKind.C2:
        return APPlusOne(c.alpha)
    if c.kind is ClassKind.C3:
        return OddSquares()
    if c.kind is ClassKind.C4:
        return FourthPowersMod12()
    if c.kind is ClassKind.C5:
        return AllIntegers()
    raise NoFamilyError(f"finite degree class ({c.reason.value if c.reason else '?'}) has no infinite family")


def fourth_root_congruent(d: int, modulus: int) -> int | None:
    """Root r with r**4 == d and r = 1 mod modulus, choosing among +-r."""
    r = ifourth_root_exact(d)
    if r is None:
        return None
    if (r - 1) % modulus == 0:
        return r
    if (-r - 1) % modulus == 0:
        return -r
    return None


def member(f: DegreeFamily, d: int) -> Membership:
    if isinstance(f, AllIntegers):
        return Membership(True, d)
    if isinstance(f, APPlusOne):
        l, rem = divmod(d - 1, f.modulus)
        return Membership(True, l) if rem == 0 else _NO
    if isinstance(f, OddSquares):
        r = isqrt_exact(d)
        if r is None or r % 2 == 0:
            return _NO
        return Membership(True, (r - 1) // 2, r)
    if isinstance(f, FourthPowersMod12):
        r = fourth_root_congruent(d, 12)
        return _NO if r is None else Membership(True, r, r)
    if isinstance(f, WitnessFourth):
        r = fourth_root_congruent(d, f.base)
        return _NO if r is None else Membership(True, (r - 1) // f.base, r)
    if isinstance(f, Shifted):
        return member(f.inner, d - f.offset)
    raise TypeError(f"not a degree family: {f!r}")


def _roots_pm1(modulus: int) -> Iterator[int]:
    """Nonnegative r with r = +-1 mod modulus, increasing."""
    if modulus <= 2:
        yield from count(1 if modulus == 2 else 0, 2 if modulus == 2 else 1)
        return
    for k in count():
        if k:
            yield k * modulus - 1
        yield k * modulus + 1


def members_from(f: DegreeFamily, lo: int) -> Iterator[int]:
    """Members of ``f`` that are >= ``lo``, in increasing order."""
    if isinstance(f, AllIntegers):
        yield from count(lo)
    elif isinstance(f, APPlusOne):
        start = lo + ((1 - lo) % f.modulus)
        yield from count(start, f.modulus)
    elif isinstance(f, OddSquares):
        r = math.isqrt(lo - 1) + 1 if lo > 0 else 0
        r += 1 - r % 2
        for k in count(r, 2):
            yield k * k
    elif isinstance(f, (FourthPowersMod12, WitnessFourth)):
        modulus = 12 if isinstance(f, FourthPowersMod12) else f.base
        for r in _roots_pm1(modulus):
            if r ** 4 >= lo:
                yield r ** 4
    elif isinstance(f, Shifted):
        for d in members_from(f.inner, lo - f.offset):
            yield d + f.offset
    else:
        raise TypeError(f"not a degree family: {f!r}")


def enumerate_family(f: DegreeFamily, n: int) -> list[int]:
    """The ``n`` smallest nonnegative members of ``f``, increasing."""
    if n < 1:
        raise ValueError("count must be at least 1")
    return list(islice(members_from(f, 0), n))


def combined_base(n: NormalForm) -> int:
    """12 times the product of all spherical orders and H2xE1 alphas."""
    if n.finite_list:
        from .geometry import degree_class

        raise NoWitnessError([(p, degree_class(p).reason.value) for p in n.finite_list])
    return 12 * math.prod(n.orders) * math.prod(n.alphas)


def witness_family(n: NormalForm) -> Shifted:
    return Shifted(WitnessFourth(combined_base(n)), 1)
