"""Self-contained JSON certificate documents.

Words are arrays of signed integers indexing the embedded generator list
(``a = 1``, ``ā = -1``, ``b = 2``, ...).  Serialization is deterministic, so
``serialize(parse(text)) == text`` for every document this module writes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

from . import __version__
from .abelian import AbelianGroup, AbelianImage
from .certify import AbelianWitness, GtCertificate, IdentityProof, ProofStep
from .errors import DocumentError, GenTorsionError
from .presentations import Presentation
from .quotients import Permutation, QuotientWitness
from .words import Letter, Word

FORMAT_VERSION = 1
TOOL_NAME = "gentorsion"


@dataclass
class CertificateDocument:
    certificate: GtCertificate
    metadata: dict[str, Any] = field(default_factory=dict)


def make_metadata(family: str, **params) -> dict[str, Any]:
    meta: dict[str, Any] = {"tool": TOOL_NAME, "tool_version": __version__, "family": family}
    meta.update({k: v for k, v in params.items() if v is not None})
    return meta


def encode_word(w: Word, generators: tuple[str, ...]) -> list[int]:
    index = {g: i + 1 for i, g in enumerate(generators)}
    try:
        return [index[l.gen] * l.sign for l in w.letters]
    except KeyError as exc:
        raise DocumentError(f"generator {exc.args[0]!r} is not in the presentation") from None


def decode_word(data: Any, generators: tuple[str, ...], where: str) -> Word:
    if not isinstance(data, list):
        raise DocumentError(f"{where}: expected an array of signed integers")
    letters = []
    for x in data:
        if not isinstance(x, int) or isinstance(x, bool) or x == 0 or abs(x) > len(generators):
            raise DocumentError(f"{where}: bad letter code {x!r}")
        letters.append(Letter(generators[abs(x) - 1], 1 if x > 0 else -1))
    return Word(letters)


def to_dict(doc: CertificateDocument) -> dict[str, Any]:
    c = doc.certificate
    gens = c.presentation.generators
    enc = lambda w: encode_word(w, gens)  # noqa: E731
    w = c.nontriviality
    if isinstance(w, AbelianWitness):
        witness = {
            "kind": "abelian",
            "free_rank": w.group.free_rank,
            "torsion": list(w.group.torsion),
            "free_coords": list(w.image.free_coords),
            "torsion_coords": list(w.image.torsion_coords),
        }
    elif isinstance(w, QuotientWitness):
        witness = {
            "kind": "quotient",
            "degree": w.degree,
            "images": {g: w.images[g].one_line() for g in gens if g in w.images},
        }
    else:
        raise DocumentError(f"cannot serialize witness of type {type(w).__name__}")
    return {
        "format_version": FORMAT_VERSION,
        "metadata": doc.metadata,
        "presentation": {
            "name": c.presentation.name,
            "generators": list(gens),
            "relators": [enc(r) for r in c.presentation.relators],
        },
        "element": enc(c.element),
        "conjugators": [enc(x) for x in c.conjugators],
        "proof": {
            "start": enc(c.triviality.start),
            "steps": [
                {
                    "position": s.position,
                    "relator_index": s.relator_index,
                    "sign": s.sign,
                    "conjugator": enc(s.conjugator),
                }
                for s in c.triviality.steps
            ],
        },
        "witness": witness,
    }


_INT_ARRAY = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def serialize(doc: CertificateDocument) -> str:
    text = json.dumps(to_dict(doc), indent=2, ensure_ascii=False)
    # keep integer arrays on one line so words stay readable
    text = _INT_ARRAY.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)
    return text + "\n"


def _require(obj: Any, key: str, kind: type | tuple, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    value = obj[key]
    if not isinstance(value, kind) or (kind is int and isinstance(value, bool)):
        raise DocumentError(f"{where}.{key}: wrong type {type(value).__name__}")
    return value


def _int(obj: Any, key: str, where: str) -> int:
    value = _require(obj, key, int, where)
    if isinstance(value, bool):
        raise DocumentError(f"{where}.{key}: expected an integer")
    return value


def from_dict(data: Any) -> CertificateDocument:
    if not isinstance(data, dict):
        raise DocumentError("document root must be an object")
    version = _int(data, "format_version", "document")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version}")
    metadata = _require(data, "metadata", dict, "document")
    pres = _require(data, "presentation", dict, "document")
    gens_raw = _require(pres, "generators", list, "presentation")
    if not all(isinstance(g, str) and g for g in gens_raw):
        raise DocumentError("presentation.generators: expected non-empty strings")
    gens = tuple(gens_raw)
    name = pres.get("name", "")
    if not isinstance(name, str):
        raise DocumentError("presentation.name: expected a string")
    try:
        relators = tuple(
            decode_word(r, gens, f"presentation.relators[{i}]")
            for i, r in enumerate(_require(pres, "relators", list, "presentation"))
        )
        presentation = Presentation(gens, relators, name)
    except DocumentError:
        raise
    except (GenTorsionError, ValueError) as exc:
        raise DocumentError(f"presentation: {exc}") from None

    element = decode_word(_require(data, "element", list, "document"), gens, "element")
    conjugators = tuple(
        decode_word(x, gens, f"conjugators[{i}]")
        for i, x in enumerate(_require(data, "conjugators", list, "document"))
    )

    proof = _require(data, "proof", dict, "document")
    start = decode_word(_require(proof, "start", list, "proof"), gens, "proof.start")
    steps = []
    for i, s in enumerate(_require(proof, "steps", list, "proof")):
        where = f"proof.steps[{i}]"
        sign = _int(s, "sign", where)
        if sign not in (1, -1):
            raise DocumentError(f"{where}.sign: must be 1 or -1")
        steps.append(
            ProofStep(
                _int(s, "position", where),
                _int(s, "relator_index", where),
                sign,
                decode_word(_require(s, "conjugator", list, where), gens, f"{where}.conjugator"),
            )
        )

    wdata = _require(data, "witness", dict, "document")
    kind = _require(wdata, "kind", str, "witness")
    try:
        if kind == "abelian":
            group = AbelianGroup(_int(wdata, "free_rank", "witness"), tuple(_int_list(wdata, "torsion")))
            image = AbelianImage(tuple(_int_list(wdata, "free_coords")), tuple(_int_list(wdata, "torsion_coords")))
            witness = AbelianWitness(image, group)
        elif kind == "quotient":
            degree = _int(wdata, "degree", "witness")
            images_raw = _require(wdata, "images", dict, "witness")
            images = {}
            for g, perm in images_raw.items():
                if not isinstance(perm, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in perm):
                    raise DocumentError(f"witness.images.{g}: expected an integer array")
                images[g] = Permutation.from_one_line(perm)
            witness = QuotientWitness(degree, images)
        else:
            raise DocumentError(f"witness.kind: unknown kind {kind!r}")
    except DocumentError:
        raise
    except (GenTorsionError, ValueError) as exc:
        raise DocumentError(f"witness: {exc}") from None

    cert = GtCertificate(presentation, element, conjugators, IdentityProof(start, tuple(steps)), witness)
    return CertificateDocument(cert, metadata)


def _int_list(obj: dict, key: str) -> list[int]:
    values = _require(obj, key, list, "witness")
    if not all(isinstance(x, int) and not isinstance(x, bool) for x in values):
        raise DocumentError(f"witness.{key}: expected integers")
    return values


def parse(text: str) -> CertificateDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from None
    return from_dict(data)


def load(path) -> CertificateDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: CertificateDocument, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(serialize(doc))


SHIPPED = {
    "whitehead_5_1": "W(5/1), the figure-eight sister manifold",
    "weeks": "W(5/1)(5/2), the Weeks manifold",
    "pretzel_4": "P(-2,3,8), the Whitehead sister link",
}


def shipped_certificate_path(name: str):
    """Path of a certificate bundled with the package."""
    from importlib.resources import files

    if name not in SHIPPED:
        raise KeyError(f"no shipped certificate {name!r}; choose from {sorted(SHIPPED)}")
    return files("gentorsion") / "certificates" / f"{name}.json"
