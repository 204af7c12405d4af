"""Certificate generators for the Whitehead fillings and the pretzel links P(-2,3,2n).

Each generator builds the conjugate product, writes it in the free group as a
product of conjugated relators, and turns that factorization into an
:class:`IdentityProof` whose steps peel the factors off one at a time from
the left.  Everything produced here is checked again by
:func:`gentorsion.certify.verify_certificate`, which shares none of this code.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Sequence

from .abelian import abelian_image, homology
from .certify import AbelianWitness, GtCertificate, IdentityProof, ProofStep, conjugate_product, verify_certificate
from .errors import GenTorsionError, HypothesisError, QuotientSearchError
from .presentations import Slope, double_filled, longitude_word, pretzel, whitehead_exterior, whitehead_filled
from .quotients import find_quotient_witness
from .words import Letter, Word, commutator, conjugate, find_conjugator, invert, product

A = Word.gen("a")
B = Word.gen("b")

DEFAULT_MAX_DEGREE = 6


@dataclass(frozen=True)
class ConjugateProduct:
    base: Word
    conjugators: tuple[Word, ...]
    expansion: Word = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "conjugators", tuple(self.conjugators))
        object.__setattr__(self, "expansion", conjugate_product(self.base, self.conjugators))

    def __len__(self):
        return len(self.conjugators)


@dataclass(frozen=True)
class RelatorFactor:
    """The word ``x̄ · r_i^{sign} · x`` for relator ``i`` of some presentation."""

    relator_index: int
    sign: int
    conjugator: Word


def expand_factors(relators: Sequence[Word], factors: Sequence[RelatorFactor]) -> Word:
    return product(
        conjugate(relators[f.relator_index] ** f.sign, f.conjugator) for f in factors
    )


def proof_from_factors(start: Word, relators: Sequence[Word], factors: Sequence[RelatorFactor]) -> IdentityProof:
    """Turn ``start = f_1 · f_2 ⋯ f_t`` (freely) into a relator-insertion proof.

    Step ``j`` splices ``f_j^{-1}`` at position 0, which cancels the leading
    factor, so the word after step ``j`` is the reduced product of the rest.
    """
    if expand_factors(relators, factors) != start:
        raise GenTorsionError("factorization does not reproduce the start word")
    steps = tuple(ProofStep(0, f.relator_index, -f.sign, f.conjugator) for f in factors)
    return IdentityProof(start, steps)


# -- Whitehead link fillings -------------------------------------------------


def _check_whitehead(m: int, n: int) -> None:
    if n < 1:
        raise HypothesisError(f"requires n >= 1 (got n = {n})")
    if m < 2 * n:
        raise HypothesisError(f"requires m >= 2n (got m = {m}, n = {n})")


def filling_relator_word(m: int, n: int) -> Word:
    """``(babāb̄abā)ⁿ·aᵐ``, the filling relation of slope ``m/n`` on the ``a`` component."""
    if n < 1:
        raise HypothesisError(f"requires n >= 1 (got n = {n})")
    return longitude_word() ** n * Word.gen("a", m)


def filling_relator_conjugates(m: int, n: int) -> Word:
    """The same relation written with the longitude as ``b̄^{abāb̄}·b``."""
    if n < 1:
        raise HypothesisError(f"requires n >= 1 (got n = {n})")
    lon = conjugate(invert(B), Word.parse("abAB")) * B
    return lon ** n * Word.gen("a", m)


def wirtinger_substitute() -> Word:
    """``U = a^{b̄ā}·a^b``; in the exterior group ``b a b̄ ā b̄ a b = U·ā``."""
    return conjugate(A, Word.parse("BA")) * conjugate(A, B)


def meridian_conjugate_form(m: int, n: int) -> ConjugateProduct:
    """``U U^{a²} ⋯ U^{a^{2(n-1)}} a^{m-2n}`` as conjugates of ``a``.

    Each ``U^{a^{2j}}`` contributes conjugators ``b̄ā·a^{2j}`` and ``b·a^{2j}``;
    the trailing ``a^{m-2n}`` contributes ``m - 2n`` trivial conjugators.
    """
    _check_whitehead(m, n)
    conjugators = []
    for j in range(n):
        tail = Word.gen("a", 2 * j)
        conjugators.append(Word.parse("BA") * tail)
        conjugators.append(B * tail)
    conjugators.extend(Word.identity() for _ in range(m - 2 * n))
    return ConjugateProduct(A, conjugators)


def _wirtinger_factors(n: int) -> list[RelatorFactor]:
    # b a b̄ ā b̄ a b · a · Ū is a conjugate of the Wirtinger relator: E = r^x.
    r = whitehead_exterior().relators[0]
    e = Word.parse("baBABab") * A * invert(wirtinger_substitute())
    x = find_conjugator(r, e)
    if x is None:
        raise GenTorsionError("internal: the substitution relation is not a conjugate of the Wirtinger relator")
    # (U ā²)ⁿ aᵐ = Ē L Ē L ⋯ Ē L aᵐ = ∏_j (Ē)^{L̄^j} · Lⁿ aᵐ with L the longitude
    lon_inv = invert(longitude_word())
    return [RelatorFactor(0, -1, x * lon_inv ** j) for j in range(n)]


def _whitehead_proof(m: int, n: int, expansion: Word) -> IdentityProof:
    filled = whitehead_filled(Slope(m, n))
    factors = _wirtinger_factors(n) + [RelatorFactor(1, 1, Word.identity())]
    return proof_from_factors(expansion, filled.relators, factors)


def whitehead_certificate(m: int, n: int) -> GtCertificate:
    """Certificate that ``a`` is a generalized torsion element of ``π₁(W(m/n))``.

    Needs ``n >= 1``, ``m >= 2n`` and ``gcd(m, n) = 1``; uses exactly ``k = m``
    conjugates of ``a``.
    """
    _check_whitehead(m, n)
    if gcd(m, n) != 1:
        raise HypothesisError(f"requires gcd(m, n) = 1 (got m = {m}, n = {n})")
    filled = whitehead_filled(Slope(m, n))
    cp = meridian_conjugate_form(m, n)
    proof = _whitehead_proof(m, n, cp.expansion)
    witness = AbelianWitness(abelian_image(A, filled), homology(filled))
    return _checked(GtCertificate(filled, A, cp.conjugators, proof, witness))


def filled_quotient_certificate(m: int, n: int, r: Slope) -> GtCertificate:
    """Certificate for ``a`` after a further filling of slope ``r`` on the ``b`` component.

    The identity proof is reused verbatim: the relators of ``W(m/n)`` keep
    their indices and the new relator is appended after them.
    """
    base = whitehead_certificate(m, n)
    filled = double_filled(Slope(m, n), r)
    witness = AbelianWitness(abelian_image(A, filled), homology(filled))
    if witness.image.is_zero():
        raise GenTorsionError(f"a has trivial image in H_1 = {witness.group}; the abelian witness fails")
    return _checked(GtCertificate(filled, A, base.conjugators, base.triviality, witness))


def weeks_certificate() -> GtCertificate:
    return filled_quotient_certificate(5, 1, Slope(5, 2))


# -- pretzel links P(-2, 3, 2n) ---------------------------------------------


def decompose_commutator(w: Word) -> list[Word]:
    """Conjugators ``c_i`` with ``[a, w] = ∏ [a, b]^{c_i}`` for ``w`` over ``{ā, b}``.

    Unrolls ``[a, uv] = [a, v]·[a, u]^v`` from the left: one factor per ``b``
    in ``w`` whose conjugator is the suffix after it, last letter first.
    Letters ``ā`` contribute nothing because ``[a, ā] = 1``.
    """
    bad = [l for l in w.letters if l not in (Letter("a", -1), Letter("b", 1))]
    if bad:
        raise HypothesisError(f"word must contain only ā and b (found {Word(bad[:1])})")
    letters = w.letters
    out = []
    for i in reversed(range(len(letters))):
        if letters[i] == Letter("b", 1):
            out.append(Word(letters[i + 1 :]))
    return out


def pretzel_relation_word(n: int) -> Word:
    """``b ā b^{n-1} ā b``, which commutes with ``a`` in the pretzel group."""
    if n < 1:
        raise HypothesisError(f"requires n >= 1 (got n = {n})")
    return B * Word.parse("A") * B ** (n - 1) * Word.parse("A") * B


def _pretzel_factors() -> list[RelatorFactor]:
    # The relation U a^b = a^{b̄} U conjugated by b reads U^b a^{b²} Ū^b = a,
    # and [a, w] = ā · a^w collapses to a single conjugate of the relator by ba.
    return [RelatorFactor(0, 1, Word.parse("ba"))]


def pretzel_certificate(n: int, max_degree: int = DEFAULT_MAX_DEGREE, workers: int = 1) -> GtCertificate:
    """Certificate that ``[a, b]`` is a generalized torsion element of the P(-2,3,2n) group.

    Uses ``n + 1`` conjugates of ``[a, b]``; non-triviality comes from the
    lexicographically first permutation quotient of degree at most
    ``max_degree`` in which ``[a, b]`` survives.
    """
    if n < 1:
        raise HypothesisError(
            f"requires n >= 1 (got n = {n}); for n = 0 the link is a connected sum "
            "and for n < 0 the commutator argument does not apply"
        )
    group = pretzel(n)
    element = commutator(A, B)
    w = pretzel_relation_word(n)
    conjugators = decompose_commutator(w)
    start = conjugate_product(element, conjugators)
    proof = proof_from_factors(start, group.relators, _pretzel_factors())
    witness = find_quotient_witness(group, element, max_degree, workers=workers)
    if witness is None:
        raise QuotientSearchError(max_degree, f"no quotient of degree 2..{max_degree} shows [a,b] != 1 in {group.name}")
    return _checked(GtCertificate(group, element, conjugators, proof, witness))


def _checked(cert: GtCertificate) -> GtCertificate:
    report = verify_certificate(cert)
    if not report.valid:
        raise GenTorsionError(f"internal: generated certificate failed verification\n{report}")
    return cert
