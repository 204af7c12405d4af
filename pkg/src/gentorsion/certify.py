"""Certificates for generalized torsion and their verifier.

A certificate claims that ``g`` is non-trivial and that ``g^{c_1} ⋯ g^{c_k} = 1``
for some ``k >= 1``.  The product is shown trivial by an :class:`IdentityProof`:
starting from its freely reduced expansion, each step splices a conjugated
relator ``x̄ · r^{±1} · x`` into the current word and freely reduces, and the
proof is valid when the word ends up empty.  Non-triviality of ``g`` is shown
either in the abelianization or in a finite permutation quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from .abelian import AbelianGroup, AbelianImage, abelianize
from .errors import GenTorsionError, MalformedProofError, MissingGeneratorError, WitnessFormatError
from .presentations import Presentation
from .quotients import QuotientWitness, check_homomorphism, evaluate
from .words import Word, conjugate, invert, product

__all__ = [
    "ProofStep",
    "IdentityProof",
    "AbelianWitness",
    "QuotientWitness",
    "NontrivialityWitness",
    "GtCertificate",
    "CheckResult",
    "VerificationReport",
    "replay",
    "replay_trace",
    "verify_identity",
    "verify_witness",
    "verify_certificate",
    "conjugate_product",
]


@dataclass(frozen=True)
class ProofStep:
    position: int
    relator_index: int
    sign: int
    conjugator: Word = field(default_factory=Word)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"proof step sign must be +1 or -1, got {self.sign!r}")


@dataclass(frozen=True)
class IdentityProof:
    start: Word
    steps: tuple[ProofStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))


@dataclass(frozen=True)
class AbelianWitness:
    image: AbelianImage
    group: AbelianGroup


NontrivialityWitness = Union[AbelianWitness, QuotientWitness]


@dataclass(frozen=True)
class GtCertificate:
    presentation: Presentation
    element: Word
    conjugators: tuple[Word, ...]
    triviality: IdentityProof
    nontriviality: NontrivialityWitness

    def __post_init__(self):
        object.__setattr__(self, "conjugators", tuple(self.conjugators))

    @property
    def k(self) -> int:
        return len(self.conjugators)


def conjugate_product(base: Word, conjugators) -> Word:
    """``reduce(base^{c_1} · base^{c_2} ⋯)``."""
    return product(conjugate(base, c) for c in conjugators)


def _apply_step(current: Word, step: ProofStep, p: Presentation, number: int) -> Word:
    if not 0 <= step.relator_index < len(p.relators):
        raise MalformedProofError(
            number, f"relator index {step.relator_index} out of range (presentation has {len(p.relators)})"
        )
    if not 0 <= step.position <= len(current):
        raise MalformedProofError(number, f"position {step.position} out of range for word of length {len(current)}")
    unknown = step.conjugator.generators() - set(p.generators)
    if unknown:
        raise MalformedProofError(number, f"conjugator uses unknown generators {sorted(unknown)}")
    relator = p.relators[step.relator_index]
    if step.sign < 0:
        relator = invert(relator)
    insert = conjugate(relator, step.conjugator)
    letters = current.letters
    return Word(letters[: step.position] + insert.letters + letters[step.position :])


def replay_trace(proof: IdentityProof, p: Presentation) -> list[Word]:
    """Every intermediate word, starting with ``proof.start``."""
    unknown = proof.start.generators() - set(p.generators)
    if unknown:
        raise MalformedProofError(0, f"start word uses unknown generators {sorted(unknown)}")
    trace = [proof.start]
    for number, step in enumerate(proof.steps, start=1):
        trace.append(_apply_step(trace[-1], step, p, number))
    return trace


def replay(proof: IdentityProof, p: Presentation) -> Word:
    """Final word after all insertions; the proof is valid iff it is empty.

    Raises :class:`MalformedProofError` naming the first step whose position or
    relator index is out of range.
    """
    return replay_trace(proof, p)[-1]


def verify_identity(proof: IdentityProof, p: Presentation) -> bool:
    return replay(proof, p).is_identity()


def verify_witness(w: NontrivialityWitness, element: Word, p: Presentation) -> bool:
    """Check that ``w`` really separates ``element`` from the identity in ``p``.

    Shape errors (wrong coordinate counts, degree mismatches, unknown
    generators) raise :class:`WitnessFormatError`.
    """
    p.check_word(element)
    if isinstance(w, AbelianWitness):
        ab = abelianize(p)
        if not w.image.fits(w.group):
            raise WitnessFormatError(f"image {w.image} does not match group {w.group}")
        if w.group != ab.group:
            return False
        return w.image == ab.image(element) and not w.image.is_zero()
    if isinstance(w, QuotientWitness):
        if any(perm.degree != w.degree for perm in w.images.values()):
            raise WitnessFormatError("generator image degree differs from the declared degree")
        try:
            if not check_homomorphism(p, w.images):
                return False
        except MissingGeneratorError as exc:
            raise WitnessFormatError(str(exc)) from None
        return not evaluate(element, w.images).is_identity()
    raise WitnessFormatError(f"unknown witness type {type(w).__name__}")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    trace_length: int = 0

    @property
    def valid(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __str__(self):
        lines = [f"  [{'ok' if c.passed else 'FAIL'}] {c.name}: {c.detail}" for c in self.checks]
        lines.append(f"  replay steps: {self.trace_length}")
        lines.append("VALID" if self.valid else f"INVALID ({', '.join(self.failed)})")
        return "\n".join(lines)


CHECK_NONEMPTY = "nonempty"
CHECK_START = "start"
CHECK_IDENTITY = "identity"
CHECK_WITNESS = "witness"


def verify_certificate(c: GtCertificate) -> VerificationReport:
    """Run every check independently; failures become report entries, never exceptions."""
    p = c.presentation
    checks = []

    k = len(c.conjugators)
    checks.append(CheckResult(CHECK_NONEMPTY, k >= 1, f"k = {k} conjugate(s)"))

    try:
        expected = conjugate_product(c.element, c.conjugators)
        p.check_word(expected)
        agree = expected == c.triviality.start
        detail = "proof starts at the conjugate product" if agree else (
            f"proof starts at {c.triviality.start} but the conjugate product is {expected}"
        )
        checks.append(CheckResult(CHECK_START, agree, detail))
    except GenTorsionError as exc:
        checks.append(CheckResult(CHECK_START, False, str(exc)))

    trace_length = 0
    try:
        trace = replay_trace(c.triviality, p)
        trace_length = len(trace) - 1
        final = trace[-1]
        detail = "replay reaches the empty word" if final.is_identity() else f"replay ends at {final} (length {len(final)})"
        checks.append(CheckResult(CHECK_IDENTITY, final.is_identity(), detail))
    except MalformedProofError as exc:
        checks.append(CheckResult(CHECK_IDENTITY, False, f"malformed proof: {exc}"))

    try:
        ok = verify_witness(c.nontriviality, c.element, p)
        kind = "abelian" if isinstance(c.nontriviality, AbelianWitness) else "quotient"
        checks.append(CheckResult(CHECK_WITNESS, ok, f"{kind} witness {'separates' if ok else 'does not separate'} the element from 1"))
    except GenTorsionError as exc:
        checks.append(CheckResult(CHECK_WITNESS, False, f"malformed witness: {exc}"))

    return VerificationReport(checks, trace_length)
