import itertools
import re

import pytest

from gentorsion.words import Letter, Word

# -- independent oracles -----------------------------------------------------
# These work on plain strings in the case syntax (a, A = ā) and share no code
# with gentorsion.words.

_PAIR = re.compile(r"aA|Aa|bB|Bb|cC|Cc")


def naive_reduce(text: str) -> str:
    """Free reduction by repeated substring deletion until a fixed point."""
    text = text.replace(" ", "")
    while True:
        new = _PAIR.sub("", text, count=1)
        if new == text:
            return text
        text = new


def naive_inverse(text: str) -> str:
    return text[::-1].swapcase()


def naive_conjugate(g: str, x: str) -> str:
    return naive_reduce(naive_inverse(x) + g + x)


def naive_commutator(g: str, h: str) -> str:
    return naive_reduce(naive_inverse(g) + naive_inverse(h) + g + h)


def perm_eval(text: str, images: dict, degree: int) -> tuple:
    """Evaluate a case-syntax word on points 1..d, applying letters left to right."""
    point_map = {i: i for i in range(1, degree + 1)}
    for ch in text:
        img = images[ch.lower()]
        step = {i: img[i - 1] for i in range(1, degree + 1)}
        if ch.isupper():
            step = {v: k for k, v in step.items()}
        point_map = {i: step[point_map[i]] for i in point_map}
    return tuple(point_map[i] for i in range(1, degree + 1))


def all_perms(degree: int):
    return [list(p) for p in itertools.permutations(range(1, degree + 1))]


W = Word.parse


# -- acceptance reporting ----------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
