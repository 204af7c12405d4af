"""Exhaustive search for homomorphisms onto small symmetric groups.

Permutations are stored 0-based internally and written 1-based (one-line
notation) in certificates.  Words act on the right: the image of ``w = x·y``
applies ``x`` first, then ``y``, so evaluation composes left to right in the
same order as word concatenation.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import MissingGeneratorError, WitnessFormatError
from .presentations import Presentation
from .words import Generator, Word


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        if not images:
            raise WitnessFormatError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise WitnessFormatError(f"not a permutation of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_one_line(cls, values: Sequence[int]) -> "Permutation":
        """Build from 1-based one-line notation, e.g. ``[2, 1, 3]``."""
        return cls(tuple(int(v) - 1 for v in values))

    def one_line(self) -> list[int]:
        return [i + 1 for i in self.images]

    @property
    def degree(self) -> int:
        return len(self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply ``self`` first, then ``other``."""
        q = other.images
        return Permutation(tuple(q[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))


@dataclass(frozen=True)
class QuotientWitness:
    """Generator images in ``S_degree``; certifies non-triviality of an element."""

    degree: int
    images: Mapping[Generator, Permutation] = field(hash=False)

    def __hash__(self):
        return hash((self.degree, tuple(sorted((g, p.images) for g, p in self.images.items()))))


def _tables(images: Mapping[Generator, Permutation]) -> dict[tuple[Generator, int], tuple[int, ...]]:
    table = {}
    for gen, perm in images.items():
        table[gen, 1] = perm.images
        table[gen, -1] = perm.inverse().images
    return table


def _evaluate_raw(w: Word, table, degree: int) -> tuple[int, ...]:
    current = tuple(range(degree))
    for letter in w.letters:
        q = table[letter]
        current = tuple([q[i] for i in current])
    return current


def evaluate(w: Word, images: Mapping[Generator, Permutation]) -> Permutation:
    """Image of ``w`` under the homomorphism given by ``images``."""
    degrees = {p.degree for p in images.values()}
    if len(degrees) != 1:
        raise WitnessFormatError(f"generator images have mismatched degrees {sorted(degrees)}")
    missing = w.generators() - set(images)
    if missing:
        raise MissingGeneratorError(f"no image for generators {sorted(missing)}")
    (degree,) = degrees
    return Permutation(_evaluate_raw(w, _tables(images), degree))


def check_homomorphism(p: Presentation, images: Mapping[Generator, Permutation]) -> bool:
    """True iff every relator of ``p`` maps to the identity permutation."""
    missing = set(p.generators) - set(images)
    if missing:
        raise MissingGeneratorError(f"no image for generators {sorted(missing)}")
    extra = set(images) - set(p.generators)
    if extra:
        raise WitnessFormatError(f"images given for unknown generators {sorted(extra)}")
    degrees = {perm.degree for perm in images.values()}
    if len(degrees) > 1:
        raise WitnessFormatError(f"generator images have mismatched degrees {sorted(degrees)}")
    return all(evaluate(r, images).is_identity() for r in p.relators)


def candidate_count(p: Presentation, degree: int) -> int:
    count = 1
    for _ in p.generators:
        count *= len(_perms(degree))
    return count


_PERM_CACHE: dict[int, list[tuple[int, ...]]] = {}


def _perms(degree: int) -> list[tuple[int, ...]]:
    if degree not in _PERM_CACHE:
        # itertools yields permutations of range(d) in lexicographic order
        _PERM_CACHE[degree] = list(itertools.permutations(range(degree)))
    return _PERM_CACHE[degree]


def iter_candidates(p: Presentation, degree: int, first: Sequence[int] | None = None) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Generator-image tuples at ``degree`` in lexicographic order.

    ``first`` optionally restricts the first generator's image to the given
    indices into the lexicographic permutation list (used to shard work).
    """
    perms = _perms(degree)
    heads = perms if first is None else [perms[i] for i in first]
    tails = [perms] * (len(p.generators) - 1)
    for head in heads:
        for rest in itertools.product(*tails):
            yield (head,) + rest


def _inverse_raw(perm: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    return tuple(inv)


def _search_degree(p: Presentation, element: Word, degree: int, first: Sequence[int] | None = None):
    """First separating tuple at one degree (within an optional shard), or None."""
    gens = p.generators
    identity = tuple(range(degree))
    words = [r.letters for r in p.relators]
    target = element.letters
    for candidate in iter_candidates(p, degree, first):
        table = {}
        for gen, perm in zip(gens, candidate):
            table[gen, 1] = perm
            table[gen, -1] = _inverse_raw(perm)
        ok = True
        for letters in words:
            current = identity
            for letter in letters:
                q = table[letter]
                current = tuple([q[i] for i in current])
            if current != identity:
                ok = False
                break
        if not ok:
            continue
        current = identity
        for letter in target:
            q = table[letter]
            current = tuple([q[i] for i in current])
        if current != identity:
            return candidate
    return None


def _shard_worker(args):
    p, element, degree, first = args
    return _search_degree(p, element, degree, first)


def find_quotient_witness(
    p: Presentation, element: Word, max_degree: int, workers: int = 1
) -> QuotientWitness | None:
    """Lexicographically first permutation quotient separating ``element`` from 1.

    Degrees are tried in increasing order from 2.  Returns None when no
    homomorphism into ``S_d`` with ``d <= max_degree`` sends ``element`` to a
    non-identity permutation.  With ``workers > 1`` each degree is sharded by
    the first generator's image and the smallest hit across shards wins, so
    the answer does not depend on the worker count.
    """
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    p.check_word(element)
    if element.is_identity():
        return None
    for degree in range(2, max_degree + 1):
        if workers <= 1 or not p.generators:
            hit = _search_degree(p, element, degree)
        else:
            n_heads = len(_perms(degree))
            shards = [range(i * n_heads // workers, (i + 1) * n_heads // workers) for i in range(workers)]
            shards = [list(s) for s in shards if len(s)]
            with ProcessPoolExecutor(max_workers=len(shards)) as pool:
                hits = list(pool.map(_shard_worker, [(p, element, degree, s) for s in shards]))
            found = [h for h in hits if h is not None]
            hit = min(found) if found else None
        if hit is not None:
            return QuotientWitness(degree, {g: Permutation(img) for g, img in zip(p.generators, hit)})
    return None
