import itertools
import random
from fractions import Fraction
from math import gcd, lcm

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gentorsion.abelian import (
    AbelianGroup,
    AbelianImage,
    IntMatrix,
    abelian_image,
    homology,
    relation_matrix,
    smith_normal_form,
)
from gentorsion.errors import MissingGeneratorError
from gentorsion.presentations import Presentation, Slope, double_filled, pretzel, whitehead_exterior, whitehead_filled
from gentorsion.words import Letter, Word, commutator

W = Word.parse


def check_snf(m: IntMatrix):
    d, u, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.det()) == 1 and abs(v.det()) == 1
    assert d.is_diagonal()
    diag = d.diagonal()
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y % x == 0) if x else y == 0
    return d


def random_matrix(rnd, max_dim=6, bound=20):
    r, c = rnd.randint(1, max_dim), rnd.randint(1, max_dim)
    return IntMatrix.from_rows([[rnd.randint(-bound, bound) for _ in range(c)] for _ in range(r)])


# -- brute-force cokernel oracle ---------------------------------------------


def _inverse_fraction(rows):
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(rows)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def order_histogram_by_enumeration(rows):
    """Element-order counts of Z^k / rowspace(rows) for a square nonsingular matrix."""
    k = len(rows)
    inv = _inverse_fraction(rows)
    det = abs(IntMatrix.from_rows(rows).det())

    def order_of(x):
        # t*x lies in the lattice exactly when t clears every denominator of x M^-1
        t = 1
        for j in range(k):
            t = lcm(t, sum(x[i] * inv[i][j] for i in range(k)).denominator)
        return t

    box = list(itertools.product(range(det), repeat=k))
    hist = {}
    for x in box:
        t = order_of(x)
        hist[t] = hist.get(t, 0) + 1
    lattice_hits = hist[1]
    return len(box) // lattice_hits, {t: c // lattice_hits for t, c in hist.items()}


def order_histogram_of(group: AbelianGroup):
    assert group.free_rank == 0
    hist = {}
    for x in itertools.product(*[range(d) for d in group.torsion]):
        t = 1
        for xi, d in zip(x, group.torsion):
            t = lcm(t, d // gcd(xi, d))
        hist[t] = hist.get(t, 0) + 1
    return hist


def _group_of_matrix(rows):
    d, _, _ = smith_normal_form(IntMatrix.from_rows(rows))
    diag = d.diagonal()
    return AbelianGroup(sum(1 for x in diag if x == 0), tuple(x for x in diag if x > 1))


FIXTURES = [
    [[2, 0], [0, 3]],
    [[4, 0], [0, 6]],
    [[2, 4], [6, 8]],
    [[12, 0], [0, 15]],
    [[5]],
    [[7, 3], [2, 5]],
    [[2, 0, 0], [0, 4, 0], [0, 0, 2]],
    [[3, 1, 0], [0, 3, 1], [1, 0, 3]],
    [[10, 4], [4, 10]],
]


@pytest.mark.parametrize("rows", FIXTURES)
def test_cokernel_matches_enumeration(rows):
    group = _group_of_matrix(rows)
    order, hist = order_histogram_by_enumeration(rows)
    assert order <= 200
    assert group.order == order
    assert order_histogram_of(group) == hist


def test_snf_examples():
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert d.diagonal() == [1, 6]
    z = IntMatrix.zeros(2, 3)
    d, u, v = smith_normal_form(z)
    assert d == z and u == IntMatrix.identity(2) and v == IntMatrix.identity(3)
    d, _, _ = smith_normal_form(IntMatrix.from_rows([[5]]))
    assert d.diagonal() == [5]


def test_snf_random():
    rnd = random.Random(2024)
    for _ in range(200):
        check_snf(random_matrix(rnd))


def test_snf_empty_shapes():
    m = IntMatrix(0, 3, ())
    d, u, v = smith_normal_form(m)
    assert d.rows == 0 and v == IntMatrix.identity(3)


def test_relation_matrix_examples():
    assert relation_matrix(whitehead_exterior()).tolist() == [[0, 0]]
    assert relation_matrix(whitehead_filled(Slope(5, 1))).tolist() == [[0, 0], [5, 0]]
    free = Presentation(("a", "b", "c"), ())
    m = relation_matrix(free)
    assert (m.rows, m.cols) == (0, 3)
    assert homology(free) == AbelianGroup(3)


def test_homology_examples():
    assert str(homology(whitehead_filled(Slope(5, 1)))) == "Z + Z/5"
    assert str(homology(double_filled(Slope(5, 1), Slope(5, 2)))) == "Z/5 + Z/5"
    assert str(homology(pretzel(4))) == "Z + Z"
    assert str(homology(double_filled(Slope(5, 1), Slope(1, 0)))) == "Z/5"
    assert str(homology(whitehead_filled(Slope(0, 1)))) == "Z + Z"


def test_homology_of_fillings_grid():
    for n in range(1, 5):
        for m in range(-12, 13):
            if m == 0 or gcd(m, n) != 1:
                continue
            expected = AbelianGroup(1, (abs(m),) if abs(m) > 1 else ())
            assert homology(whitehead_filled(Slope(m, n))) == expected, (m, n)


def test_abelian_image_examples():
    p = whitehead_filled(Slope(5, 1))
    img = abelian_image(W("a"), p)
    assert img.free_coords == (0,)
    assert len(img.torsion_coords) == 1 and gcd(img.torsion_coords[0], 5) == 1
    assert abelian_image(commutator(W("a"), W("b")), p).is_zero()
    assert abelian_image(Word(), p).is_zero()
    with pytest.raises(MissingGeneratorError):
        abelian_image(W("c"), p)


words = st.lists(st.tuples(st.sampled_from("ab"), st.sampled_from([1, -1])), max_size=30).map(Word)


@settings(max_examples=200)
@given(words, words, st.sampled_from([(5, 1), (5, 2), (7, 3), (12, 5)]))
def test_abelian_image_is_a_homomorphism(u, v, mn):
    p = double_filled(Slope(*mn), Slope(3, 2))
    group = homology(p)
    iu, iv, iuv = abelian_image(u, p), abelian_image(v, p), abelian_image(u * v, p)
    assert iuv.free_coords == tuple(x + y for x, y in zip(iu.free_coords, iv.free_coords))
    assert iuv.torsion_coords == tuple((x + y) % d for x, y, d in zip(iu.torsion_coords, iv.torsion_coords, group.torsion))


def test_abelian_group_validation():
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(0, (4, 6))
    assert str(AbelianGroup(0)) == "0"
    assert AbelianImage((0,), (3,)).fits(AbelianGroup(1, (5,)))
    assert not AbelianImage((0,), (5,)).fits(AbelianGroup(1, (5,)))
