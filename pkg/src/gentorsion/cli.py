"""Command line: ``gentorsion {derive,verify,homology,decompose,search-quotient}``.

Exit codes: 0 success / valid, 1 verification failure, 2 usage, parse or
hypothesis error, 3 quotient search exhausted.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .abelian import homology
from .certify import AbelianWitness, GtCertificate, verify_certificate
from .derive import (
    DEFAULT_MAX_DEGREE,
    decompose_commutator,
    filled_quotient_certificate,
    pretzel_certificate,
    whitehead_certificate,
)
from .document import CertificateDocument, dump, load, make_metadata
from .errors import DocumentError, GenTorsionError, HypothesisError, InvalidSlopeError, QuotientSearchError
from .presentations import Presentation, Slope, double_filled, pretzel, whitehead_filled
from .quotients import find_quotient_witness
from .words import Word, commutator, conjugate, product

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_USAGE = 2
EXIT_SEARCH = 3

PRETZEL_CLI_CAP = 64

WEEKS_DEFAULTS = (5, 1, "5/2")


class UsageError(Exception):
    pass


def _pretzel_n(args) -> int:
    if args.n is None:
        raise UsageError("pretzel needs --n")
    if abs(args.n) > PRETZEL_CLI_CAP:
        raise UsageError(f"|n| must be at most {PRETZEL_CLI_CAP} on the command line")
    return args.n


def _whitehead_mn(args) -> tuple[int, int]:
    if args.m is None or args.n is None:
        raise UsageError("whitehead needs --m and --n")
    return args.m, args.n


def _weeks_params(args) -> tuple[int, int, Slope]:
    m = args.m if args.m is not None else WEEKS_DEFAULTS[0]
    n = args.n if args.n is not None else WEEKS_DEFAULTS[1]
    r = Slope.parse(args.r if args.r is not None else WEEKS_DEFAULTS[2])
    return m, n, r


def _presentation_for(args) -> Presentation:
    if args.family == "whitehead":
        m, n = _whitehead_mn(args)
        return whitehead_filled(Slope(m, n))
    if args.family == "weeks":
        m, n, r = _weeks_params(args)
        return double_filled(Slope(m, n), r)
    return pretzel(_pretzel_n(args))


def _summary(cert: GtCertificate) -> str:
    w = cert.nontriviality
    if isinstance(w, AbelianWitness):
        wdesc = f"abelian (H_1 = {w.group}, image {list(w.image.free_coords) + list(w.image.torsion_coords)})"
    else:
        imgs = ", ".join(f"{g} -> {p.one_line()}" for g, p in w.images.items())
        wdesc = f"quotient into S_{w.degree} ({imgs})"
    conj = ", ".join(str(c) for c in cert.conjugators)
    return "\n".join(
        [
            f"group:      {cert.presentation.name} = {cert.presentation}",
            f"element:    {cert.element}",
            f"k:          {cert.k}",
            f"conjugators: [{conj}]",
            f"proof:      {len(cert.triviality.steps)} relator insertion(s) from a word of length {len(cert.triviality.start)}",
            f"witness:    {wdesc}",
        ]
    )


def cmd_derive(args) -> int:
    if args.family == "whitehead":
        m, n = _whitehead_mn(args)
        cert = whitehead_certificate(m, n)
        meta = make_metadata("whitehead", m=m, n=n)
    elif args.family == "weeks":
        m, n, r = _weeks_params(args)
        cert = filled_quotient_certificate(m, n, r)
        meta = make_metadata("weeks", m=m, n=n, r=str(r))
    else:
        n = _pretzel_n(args)
        cert = pretzel_certificate(n, max_degree=args.max_degree, workers=args.workers)
        meta = make_metadata("pretzel", n=n, max_degree=args.max_degree)
    print(_summary(cert))
    if args.out:
        dump(CertificateDocument(cert, meta), args.out)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    doc = load(args.path)
    report = verify_certificate(doc.certificate)
    print(f"certificate: {args.path}")
    print(report)
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_homology(args) -> int:
    print(homology(_presentation_for(args)))
    return EXIT_OK


def cmd_decompose(args) -> int:
    try:
        w = Word.parse(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    conjugators = decompose_commutator(w)
    a, b = Word.gen("a"), Word.gen("b")
    lhs = commutator(a, w)
    rhs = product(conjugate(commutator(a, b), c) for c in conjugators)
    print(f"w = {w}")
    print(f"[a, w] = product of {len(conjugators)} conjugate(s) of [a, b]")
    for i, c in enumerate(conjugators, start=1):
        print(f"  c{i} = {c}")
    print(f"free identity {'holds' if lhs == rhs else 'FAILS'}: [a, w] = {lhs}")
    return EXIT_OK if lhs == rhs else EXIT_INVALID


def cmd_search_quotient(args) -> int:
    p = _presentation_for(args)
    element = Word.parse(args.element) if args.element else commutator(Word.gen("a"), Word.gen("b"))
    w = find_quotient_witness(p, element, args.max_degree, workers=args.workers)
    if w is None:
        print(f"no quotient of degree 2..{args.max_degree} separates {element} from 1 in {p.name}")
        return EXIT_SEARCH
    print(f"degree {w.degree}: " + ", ".join(f"{g} -> {perm.one_line()}" for g, perm in w.images.items()))
    return EXIT_OK


def _add_params(sp, families: Sequence[str]):
    sp.add_argument("family", choices=families)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--r", help="second filling slope p/q (weeks family)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gentorsion", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("derive", help="generate a generalized torsion certificate")
    _add_params(sp, ["whitehead", "weeks", "pretzel"])
    sp.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--out", help="write the certificate document here")
    sp.set_defaults(func=cmd_derive)

    sp = sub.add_parser("verify", help="check a certificate file")
    sp.add_argument("path")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("homology", help="print H_1 of a family member")
    _add_params(sp, ["whitehead", "weeks", "pretzel"])
    sp.set_defaults(func=cmd_homology)

    sp = sub.add_parser("decompose", help="write [a, w] as a product of conjugates of [a, b]")
    sp.add_argument("word", help="word over A (= ā) and b, e.g. 'bAbbbAb'")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("search-quotient", help="find a permutation quotient separating an element")
    _add_params(sp, ["whitehead", "weeks", "pretzel"])
    sp.add_argument("--element", help="word in case syntax; defaults to [a,b] = ABab")
    sp.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_search_quotient)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except HypothesisError as exc:
        print(f"error: hypothesis violated: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QuotientSearchError as exc:
        print(f"error: {exc}; raise --max-degree", file=sys.stderr)
        return EXIT_SEARCH
    except (UsageError, InvalidSlopeError, DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenTorsionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
