"""Finite presentations and builders for the Whitehead and pretzel families."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .errors import HypothesisError, InvalidSlopeError, MissingGeneratorError
from .words import Generator, Word, conjugate, invert, substitute


@dataclass(frozen=True)
class Presentation:
    """Generators plus relators; each relation ``L = R`` is kept as ``L·R̄``."""

    generators: tuple[Generator, ...]
    relators: tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError(f"duplicate generator names in {gens}")
        rels = tuple(self.relators)
        for i, r in enumerate(rels):
            if not isinstance(r, Word):
                raise TypeError(f"relator {i} is not a Word")
            if r.is_identity():
                raise ValueError(f"relator {i} is empty after free reduction")
            unknown = r.generators() - set(gens)
            if unknown:
                raise MissingGeneratorError(f"relator {i} uses unknown generators {sorted(unknown)}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)

    def with_relators(self, *extra: Word, name: str = "") -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra), name or self.name)

    def check_word(self, w: Word) -> None:
        unknown = w.generators() - set(self.generators)
        if unknown:
            raise MissingGeneratorError(f"word uses generators {sorted(unknown)} not in {list(self.generators)}")

    def __str__(self):
        rels = ", ".join(str(r) for r in self.relators)
        return f"⟨{', '.join(self.generators)} | {rels}⟩"


@dataclass(frozen=True)
class Slope:
    """A filling slope ``m/n`` with ``n >= 0``; ``1/0`` is the meridian itself."""

    m: int
    n: int

    def __post_init__(self):
        m, n = int(self.m), int(self.n)
        if n < 0:
            m, n = -m, -n
        if n == 0:
            if abs(m) != 1:
                raise InvalidSlopeError(f"slope {self.m}/{self.n}: a slope with n = 0 must be 1/0")
            m = 1
        elif gcd(m, n) != 1:
            raise InvalidSlopeError(f"slope {self.m}/{self.n}: numerator and denominator must be coprime")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "n", n)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        text = text.strip()
        try:
            if "/" in text:
                m, n = text.split("/")
                return cls(int(m), int(n))
            return cls(int(text), 1)
        except ValueError as exc:
            if isinstance(exc, InvalidSlopeError):
                raise
            raise InvalidSlopeError(f"cannot parse slope {text!r}; expected p/q") from None

    @property
    def is_infinite(self) -> bool:
        return self.n == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise InvalidSlopeError("1/0 has no rational value")
        return Fraction(self.m, self.n)

    def __str__(self):
        return f"{self.m}/{self.n}"


_a = Word.gen("a")
_b = Word.gen("b")


def whitehead_exterior() -> Presentation:
    """Wirtinger presentation of the Whitehead link exterior, meridians ``a`` and ``b``."""
    lhs = Word.parse("abaBAbab")
    rhs = Word.parse("babABaba")
    return Presentation(("a", "b"), (lhs * invert(rhs),), name="W")


def longitude_word() -> Word:
    """Longitude of the ``a`` component: ``b̄^{abāb̄} · b`` reduced to ``babāb̄abā``."""
    return conjugate(invert(_b), Word.parse("abAB")) * _b


def b_longitude_word() -> Word:
    # The two components are interchangeable by an isotopy swapping a and b.
    return substitute(longitude_word(), {"a": _b, "b": _a})


def _check_filling_slope(slope: Slope) -> None:
    if slope.n < 1:
        raise InvalidSlopeError(f"filling slope {slope} must have denominator n >= 1")


def whitehead_filled(slope: Slope) -> Presentation:
    """Fill the ``a`` component along ``m/n``: adds the relator ``λⁿ·aᵐ``."""
    _check_filling_slope(slope)
    filling = longitude_word() ** slope.n * Word.gen("a", slope.m)
    return whitehead_exterior().with_relators(filling, name=f"W({slope})")


def double_filled(slope1: Slope, slope2: Slope) -> Presentation:
    """Fill the ``a`` component along ``slope1`` then the ``b`` component along ``slope2``.

    The ``b`` longitude is the image of the ``a`` longitude under ``a <-> b``.
    """
    base = whitehead_filled(slope1)
    second = b_longitude_word() ** slope2.n * Word.gen("b", slope2.m)
    return base.with_relators(second, name=f"W({slope1})({slope2})")


def pretzel(n: int) -> Presentation:
    """Two-generator one-relator presentation of the link group of P(-2, 3, 2n)."""
    if n == 0:
        raise HypothesisError(
            "pretzel(0) is excluded: P(-2,3,0) is a connected sum of the trefoil "
            "and the Hopf link, which has a different presentation"
        )
    b_pow = Word.gen("b", -(n - 1))
    lhs = _a * b_pow * Word.parse("aBab")
    rhs = Word.parse("baBa") * b_pow * _a
    return Presentation(("a", "b"), (lhs * invert(rhs),), name=f"P(-2,3,{2 * n})")


def presentation_from_relations(generators: Sequence[Generator], relations: Sequence[tuple[Word, Word]]) -> Presentation:
    return Presentation(tuple(generators), tuple(lhs * invert(rhs) for lhs, rhs in relations))
