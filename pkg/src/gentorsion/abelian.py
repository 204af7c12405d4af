"""Abelianization of finitely presented groups via Smith normal form.

All arithmetic uses Python integers, so intermediate entries never overflow.
The relation matrix has one row per relator and one column per generator;
``H_1`` is the cokernel ``Z^k / rowspace(M)``.  With ``D = U·M·V`` an element
with exponent-sum row vector ``e`` has coordinates ``e·V`` against the
diagonal of ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import MissingGeneratorError
from .presentations import Presentation
from .words import Word


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
            raise ValueError(f"entries do not match shape {self.rows}x{self.cols}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("column count is required for a matrix with no rows")
            cols = len(rows[0])
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, size: int) -> "IntMatrix":
        return cls(size, size, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in self.entries),
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)),
        )

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]

    def diagonal(self) -> list[int]:
        return [self.entries[i][i] for i in range(min(self.rows, self.cols))]

    def is_diagonal(self) -> bool:
        return all(self.entries[i][j] == 0 for i in range(self.rows) for j in range(self.cols) if i != j)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


def _snf_inplace(a: list[list[int]], u: list[list[int]], v: list[list[int]]) -> None:
    rows = len(a)
    cols = len(v)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(rows, cols)):
        while True:
            nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not nonzero:
                return
            _, pi, pj = min(nonzero)
            swap_rows(t, pi)
            swap_cols(t, pj)
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        done = False
            if not done:
                continue
            # pivot row and column are clear; enforce divisibility of the rest
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad, t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(D, U, V)`` with ``D = U·M·V``, ``U`` and ``V`` unimodular.

    ``D`` is diagonal with non-negative entries ``d_1 | d_2 | ...``, zeros last.
    """
    a = m.tolist()
    u = IntMatrix.identity(m.rows).tolist()
    v = IntMatrix.identity(m.cols).tolist()
    _snf_inplace(a, u, v)
    return (
        IntMatrix(m.rows, m.cols, tuple(map(tuple, a))),
        IntMatrix(m.rows, m.rows, tuple(map(tuple, u))),
        IntMatrix(m.cols, m.cols, tuple(map(tuple, v))),
    )


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s`` with ``d_i | d_{i+1}`` and every ``d_i >= 2``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        torsion = tuple(int(d) for d in self.torsion)
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(d < 2 for d in torsion):
            raise ValueError(f"torsion coefficients must be >= 2, got {torsion}")
        if any(torsion[i + 1] % torsion[i] for i in range(len(torsion) - 1)):
            raise ValueError(f"torsion coefficients must form a divisibility chain, got {torsion}")
        object.__setattr__(self, "torsion", torsion)

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianImage:
    free_coords: tuple[int, ...]
    torsion_coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "free_coords", tuple(int(x) for x in self.free_coords))
        object.__setattr__(self, "torsion_coords", tuple(int(x) for x in self.torsion_coords))

    def is_zero(self) -> bool:
        return not any(self.free_coords) and not any(self.torsion_coords)

    def fits(self, group: AbelianGroup) -> bool:
        return (
            len(self.free_coords) == group.free_rank
            and len(self.torsion_coords) == len(group.torsion)
            and all(0 <= x < d for x, d in zip(self.torsion_coords, group.torsion))
        )


def relation_matrix(p: Presentation) -> IntMatrix:
    """Exponent sums, one row per relator and one column per generator."""
    return IntMatrix(
        len(p.relators),
        len(p.generators),
        tuple(tuple(r.exponent_sum(g) for g in p.generators) for r in p.relators),
    )


@dataclass(frozen=True)
class Abelianization:
    """The canonical decomposition of ``H_1`` together with the coordinate change."""

    generators: tuple[str, ...]
    group: AbelianGroup
    diagonal: tuple[int, ...]
    right: IntMatrix

    def image_of_vector(self, exponents: Sequence[int]) -> AbelianImage:
        coords = [sum(e * self.right[i, j] for i, e in enumerate(exponents)) for j in range(len(exponents))]
        free, torsion = [], []
        for j, c in enumerate(coords):
            d = self.diagonal[j] if j < len(self.diagonal) else 0
            if d == 0:
                free.append(c)
            elif d > 1:
                torsion.append(c % d)
        return AbelianImage(tuple(free), tuple(torsion))

    def image(self, w: Word) -> AbelianImage:
        unknown = w.generators() - set(self.generators)
        if unknown:
            raise MissingGeneratorError(f"word uses generators {sorted(unknown)} not in {list(self.generators)}")
        return self.image_of_vector([w.exponent_sum(g) for g in self.generators])


@lru_cache(maxsize=256)
def abelianize(p: Presentation) -> Abelianization:
    d, _, v = smith_normal_form(relation_matrix(p))
    k = len(p.generators)
    diag = [d[i, i] if i < d.rows else 0 for i in range(k)]
    torsion = tuple(x for x in diag if x > 1)
    free_rank = sum(1 for x in diag if x == 0)
    return Abelianization(p.generators, AbelianGroup(free_rank, torsion), tuple(diag), v)


def homology(p: Presentation) -> AbelianGroup:
    """First homology (abelianization) of the presented group."""
    return abelianize(p).group


def abelian_image(w: Word, p: Presentation) -> AbelianImage:
    return abelianize(p).image(w)
