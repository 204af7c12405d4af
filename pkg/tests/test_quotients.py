import pytest

from gentorsion.errors import WitnessFormatError
from gentorsion.presentations import Presentation, pretzel, whitehead_filled, Slope
from gentorsion.quotients import (
    Permutation,
    candidate_count,
    check_homomorphism,
    evaluate,
    find_quotient_witness,
    iter_candidates,
)
from gentorsion.words import Word, commutator

from conftest import all_perms, perm_eval

W = Word.parse
AB = commutator(W("a"), W("b"))
TREFOIL = Presentation(("a", "b"), (W("abaBAB"),), name="trefoil")


def _oracle_first_witness(relators: list[str], element: str, degree: int):
    """First separating (a, b) pair at one degree, by plain enumeration."""
    ident = tuple(range(1, degree + 1))
    for pa in all_perms(degree):
        for pb in all_perms(degree):
            imgs = {"a": pa, "b": pb}
            if all(perm_eval(r, imgs, degree) == ident for r in relators) and perm_eval(element, imgs, degree) != ident:
                return pa, pb
    return None


def test_permutation_basics():
    p = Permutation.from_one_line([2, 3, 1])
    assert p.images == (1, 2, 0)
    assert p.one_line() == [2, 3, 1]
    assert p.then(p.inverse()).is_identity()
    with pytest.raises(WitnessFormatError):
        Permutation((0, 0, 1))


def test_evaluation_composes_left_to_right():
    x = Permutation.from_one_line([2, 1, 3])
    y = Permutation.from_one_line([1, 3, 2])
    img = evaluate(W("ab"), {"a": x, "b": y})
    # apply x first: 1 -> 2 -> 3
    assert img.one_line()[0] == 3
    assert img.one_line() == list(perm_eval("ab", {"a": [2, 1, 3], "b": [1, 3, 2]}, 3))


def test_trefoil_has_degree_three_witness():
    w = find_quotient_witness(TREFOIL, AB, 3)
    assert w is not None and w.degree == 3
    oracle = _oracle_first_witness(["abaBAB"], "ABab", 3)
    assert (w.images["a"].one_line(), w.images["b"].one_line()) == tuple(oracle)
    assert _oracle_first_witness(["abaBAB"], "ABab", 2) is None


def test_identity_element_never_separated():
    assert find_quotient_witness(TREFOIL, Word(), 4) is None
    assert find_quotient_witness(pretzel(2), Word(), 3) is None


def test_pretzel_one_witness():
    w = find_quotient_witness(pretzel(1), AB, 6)
    assert w is not None
    imgs = {g: p.one_line() for g, p in w.images.items()}
    rel = pretzel(1).relators[0].to_text()
    ident = tuple(range(1, w.degree + 1))
    assert perm_eval(rel, imgs, w.degree) == ident
    assert perm_eval("ABab", imgs, w.degree) != ident
    # minimal degree found by the search; degree 2 quotients are abelian
    assert w.degree == 3
    assert imgs == {"a": [1, 3, 2], "b": [2, 1, 3]}


def test_check_homomorphism():
    p = pretzel(3)
    ident = Permutation.identity(4)
    assert check_homomorphism(p, {"a": ident, "b": ident})
    rel = p.relators[0].to_text()
    violators = [
        (pa, pb) for pa in all_perms(4) for pb in all_perms(4)
        if perm_eval(rel, {"a": pa, "b": pb}, 4) != (1, 2, 3, 4)
    ]
    assert violators
    for pa, pb in violators:
        assert not check_homomorphism(p, {"a": Permutation.from_one_line(pa), "b": Permutation.from_one_line(pb)})
    w = find_quotient_witness(p, AB, 4)
    assert check_homomorphism(p, w.images)
    with pytest.raises(WitnessFormatError):
        check_homomorphism(p, {"a": Permutation.identity(3), "b": Permutation.identity(4)})


def test_determinism_and_workers():
    p = whitehead_filled(Slope(5, 1))
    first = find_quotient_witness(p, AB, 5)
    assert first == find_quotient_witness(p, AB, 5)
    assert find_quotient_witness(p, AB, 5, workers=3) == first


@pytest.mark.parametrize("degree,expected", [(2, 4), (3, 36)])
def test_enumeration_is_complete(degree, expected):
    cands = list(iter_candidates(TREFOIL, degree))
    assert len(cands) == expected == candidate_count(TREFOIL, degree)
    assert len(set(cands)) == expected
    assert cands == sorted(cands)


def test_max_degree_validated():
    with pytest.raises(ValueError):
        find_quotient_witness(TREFOIL, AB, 1)
