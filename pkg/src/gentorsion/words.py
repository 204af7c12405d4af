"""Free-group words over an open alphabet of named generators.

A :class:`Word` is always freely reduced.  Inverses are written with a bar
(``ā``) when rendered for humans; the compact text syntax used on the command
line writes a generator in lowercase and its inverse in uppercase, so
``"bAb"`` is ``b ā b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from .errors import MissingGeneratorError

Generator = str

_BAR = "̄"


class Letter(NamedTuple):
    gen: Generator
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)

    def __str__(self):
        return self.gen + _BAR if self.sign < 0 else self.gen


def _free_reduce(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for letter in letters:
        if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


def _coerce_letters(letters: Iterable) -> list[Letter]:
    out = []
    for item in letters:
        gen, sign = item
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign!r}")
        if not isinstance(gen, str) or not gen:
            raise ValueError(f"generator name must be a non-empty string, got {gen!r}")
        out.append(Letter(gen, sign))
    return out


@dataclass(frozen=True)
class Word:
    """A freely reduced word; the empty word is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(_coerce_letters(self.letters)))

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls) -> "Word":
        return cls(())

    @classmethod
    def gen(cls, name: Generator, power: int = 1) -> "Word":
        sign = 1 if power >= 0 else -1
        return cls((Letter(name, sign),) * abs(power))

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse the case-encoded syntax: ``a`` is a generator, ``A`` its inverse.

        Whitespace is ignored, as is a lone ``1`` or ``e`` denoting the identity.
        """
        stripped = "".join(text.split())
        if stripped in ("1", "e", "ε"):
            return cls.identity()
        letters = []
        for ch in stripped:
            if not ch.isascii() or not ch.isalpha():
                raise ValueError(f"unexpected character {ch!r} in word {text!r}")
            letters.append(Letter(ch.lower(), 1 if ch.islower() else -1))
        return cls(letters)

    # -- basic protocol ---------------------------------------------------

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return Word(self.letters[index])
        return self.letters[index]

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.letters + other.letters)

    def __pow__(self, k: int) -> "Word":
        if k < 0:
            return self.inverse() ** (-k)
        return Word(self.letters * k)

    def __xor__(self, conjugator: "Word") -> "Word":
        # w ^ x is the conjugate x̄ w x, mirroring the exponent notation.
        return conjugate(self, conjugator)

    def inverse(self) -> "Word":
        return invert(self)

    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> set[Generator]:
        return {letter.gen for letter in self.letters}

    def exponent_sum(self, gen: Generator) -> int:
        return sum(letter.sign for letter in self.letters if letter.gen == gen)

    def __str__(self):
        if not self.letters:
            return "ε"
        return "".join(str(letter) for letter in self.letters)

    def __repr__(self):
        return f"Word({self.to_text()!r})" if self._single_char() else f"Word({self.letters!r})"

    def _single_char(self) -> bool:
        return all(len(l.gen) == 1 and l.gen.islower() for l in self.letters)

    def to_text(self) -> str:
        """Inverse of :meth:`parse`; only defined for single lowercase generator names."""
        if not self._single_char():
            raise ValueError("text syntax needs single lowercase generator names")
        if not self.letters:
            return "1"
        return "".join(l.gen if l.sign > 0 else l.gen.upper() for l in self.letters)


WordLike = Union[Word, Sequence]


def reduce(letters: Iterable) -> Word:
    """Return the freely reduced word of a raw letter sequence."""
    if isinstance(letters, Word):
        return letters
    return Word(tuple(letters))


def invert(w: Word) -> Word:
    return Word(tuple(letter.inverse() for letter in reversed(w.letters)))


def conjugate(g: Word, x: Word) -> Word:
    """``g^x = x̄ g x``."""
    return Word(invert(x).letters + g.letters + x.letters)


def commutator(g: Word, h: Word) -> Word:
    """``[g, h] = ḡ h̄ g h``."""
    return Word(invert(g).letters + invert(h).letters + g.letters + h.letters)


def product(words: Iterable[Word]) -> Word:
    letters: list[Letter] = []
    for w in words:
        letters.extend(w.letters)
    return Word(letters)


def substitute(w: Word, assignment: Mapping[Generator, Word]) -> Word:
    """Apply the homomorphism determined by ``assignment`` to ``w``."""
    letters: list[Letter] = []
    for letter in w.letters:
        try:
            image = assignment[letter.gen]
        except KeyError:
            raise MissingGeneratorError(f"generator {letter.gen!r} has no image") from None
        letters.extend(image.letters if letter.sign > 0 else invert(image).letters)
    return Word(letters)


def cyclic_reduction(w: Word) -> tuple[Word, Word]:
    """Split ``w = p · core · p̄`` with ``core`` cyclically reduced; return ``(p, core)``."""
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2 and letters[i] == letters[j - 1].inverse():
        i += 1
        j -= 1
    return Word(letters[:i]), Word(letters[i:j])


def find_conjugator(u: Word, v: Word) -> Word | None:
    """Return some ``x`` with ``u^x == v`` in the free group, or None.

    Two words are conjugate exactly when their cyclic reductions are cyclic
    rotations of each other.
    """
    p, core_u = cyclic_reduction(u)
    q, core_v = cyclic_reduction(v)
    if len(core_u) != len(core_v):
        return None
    n = len(core_u)
    if n == 0:
        return Word.identity()
    for k in range(n):
        # core_u = alpha·beta and core_v = beta·alpha = alpha^{-1} core_u alpha
        if core_u.letters[k:] + core_u.letters[:k] == core_v.letters:
            alpha = Word(core_u.letters[:k])
            # u = p core_u p̄ and v = q ᾱ core_u α q̄, so x = p α q̄
            return p * alpha * invert(q)
    return None
