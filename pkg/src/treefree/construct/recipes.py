"""Parameter records for every witness construction.

Sequence parameters are optional: when omitted they are drawn from the seed.
When given, they are repeated cyclically along the spine, so a recipe
describes one infinite layout and every truncation length reads a prefix of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar


class RecipeError(ValueError):
    pass


@dataclass(frozen=True)
class CaseRecipe:
    variant: ClassVar[str] = ""

    def check(self, ell: int | None) -> None:
        """Validate parameters against the bounds of the case (``ell`` when relevant)."""


def _within(name: str, seq: tuple[int, ...] | None, allowed: set[int]) -> None:
    if seq is None:
        return
    if not seq:
        raise RecipeError(f"{name} must be nonempty")
    bad = sorted(set(seq) - allowed)
    if bad:
        raise RecipeError(f"{name} values {bad} outside allowed {sorted(allowed)}")


@dataclass(frozen=True)
class Monarchy(CaseRecipe):
    variant: ClassVar[str] = "Monarchy"
    girth: int | None = None

    def check(self, ell):
        if self.girth is not None and self.girth < 3:
            raise RecipeError("girth must be at least 3")


@dataclass(frozen=True)
class Stardom(CaseRecipe):
    """``eps[i]`` selects H0 (0) or H1 (1) for the link between a_i and a_{i+1}."""

    variant: ClassVar[str] = "Stardom"
    eps: tuple[int, ...] | None = None

    def check(self, ell):
        _within("eps", self.eps, {0, 1})


@dataclass(frozen=True)
class Proto(CaseRecipe):
    variant: ClassVar[str] = "Proto"
    girth: int | None = None


@dataclass(frozen=True)
class IA(CaseRecipe):
    variant: ClassVar[str] = "IA"
    girth: int | None = None


@dataclass(frozen=True)
class IB(CaseRecipe):
    """Interval lengths from {3l-3, 6l}; the gap length defaults to l."""

    variant: ClassVar[str] = "IB"
    p: tuple[int, ...] | None = None
    gap: int | None = None

    def check(self, ell):
        if self.p is not None and any(x < 3 * ell - 3 for x in self.p):
            raise RecipeError(f"interval lengths must be at least 3l-3 = {3 * ell - 3}")
        if self.gap is not None and self.gap < ell:
            raise RecipeError("gap must be at least l")


@dataclass(frozen=True)
class IC(CaseRecipe):
    variant: ClassVar[str] = "IC"
    p: tuple[int, ...] | None = None
    girth: int | None = None

    def check(self, ell):
        _within("p", self.p, {2, 3})


@dataclass(frozen=True)
class IIA(CaseRecipe):
    variant: ClassVar[str] = "IIA"
    girth: int | None = None


@dataclass(frozen=True)
class IIB(CaseRecipe):
    """Intervals have length 1, except length 2 at indices divisible by the spacing when the bit is set."""

    variant: ClassVar[str] = "IIB"
    bits: tuple[int, ...] | None = None
    spacing: int | None = None

    def check(self, ell):
        _within("bits", self.bits, {0, 1})
        if self.spacing is not None and self.spacing < 2:
            raise RecipeError("spacing must be at least 2")


@dataclass(frozen=True)
class IIIA(CaseRecipe):
    variant: ClassVar[str] = "IIIA"
    q: tuple[int, ...] | None = None

    def check(self, ell):
        _within("q", self.q, {1, 2})


@dataclass(frozen=True)
class IIIB(CaseRecipe):
    variant: ClassVar[str] = "IIIB"
    p: tuple[int, ...] | None = None

    def check(self, ell):
        _within("p", self.p, {2, 3})


@dataclass(frozen=True)
class IIIC(CaseRecipe):
    variant: ClassVar[str] = "IIIC"
    q: tuple[int, ...] | None = None

    def check(self, ell):
        _within("q", self.q, {1, 2})


@dataclass(frozen=True)
class IIID(CaseRecipe):
    """``gaps`` are successive differences of the set S (each 2 or 3); ``q`` is used off the special shape."""

    variant: ClassVar[str] = "IIID"
    gaps: tuple[int, ...] | None = None
    q: tuple[int, ...] | None = None

    def check(self, ell):
        _within("gaps", self.gaps, {2, 3})
        _within("q", self.q, {1, 2})


@dataclass(frozen=True)
class IVA(CaseRecipe):
    variant: ClassVar[str] = "IVA"
    q: tuple[int, ...] | None = None

    def check(self, ell):
        _within("q", self.q, {1, 2})


@dataclass(frozen=True)
class IVB(CaseRecipe):
    variant: ClassVar[str] = "IVB"
    q: tuple[int, ...] | None = None

    def check(self, ell):
        _within("q", self.q, {0, 1})


@dataclass(frozen=True)
class IVC(CaseRecipe):
    """Greedy interval placement on a ball of the regular tree; the seed orders candidates
    and, unless ``start_depth`` is given, picks the depth where the first interval starts.

    Target interval lengths come from {3l-3, 6l}; an interval stops early at the truncation boundary.
    """

    variant: ClassVar[str] = "IVC"
    placement_seed: int | None = None
    radius: int | None = None
    p: tuple[int, ...] | None = None
    start_depth: int | None = None

    def check(self, ell):
        if self.p is not None and (not self.p or any(x < 3 * ell - 3 for x in self.p)):
            raise RecipeError(f"interval lengths must be at least 3l-3 = {3 * ell - 3}")
        if self.radius is not None and self.radius < 1:
            raise RecipeError("radius must be positive")
        if self.start_depth is not None and self.start_depth < 0:
            raise RecipeError("start_depth must be nonnegative")


@dataclass(frozen=True)
class IVD(CaseRecipe):
    variant: ClassVar[str] = "IVD"
    p: tuple[int, ...] | None = None
    girth: int | None = None

    def check(self, ell):
        _within("p", self.p, {1, 2})


@dataclass(frozen=True)
class IVDprime(CaseRecipe):
    variant: ClassVar[str] = "IVDprime"
    p: tuple[int, ...] | None = None
    girth: int | None = None

    def check(self, ell):
        _within("p", self.p, {1, 2})


RECIPES: dict[str, type[CaseRecipe]] = {
    cls.variant: cls
    for cls in (Monarchy, Stardom, Proto, IA, IB, IC, IIA, IIB, IIIA, IIIB, IIIC, IIID, IVA, IVB, IVC, IVD, IVDprime)
}


def default_recipe(variant: str) -> CaseRecipe:
    try:
        return RECIPES[variant]()
    except KeyError:
        raise RecipeError(f"unknown recipe variant {variant!r}") from None
