"""Exception hierarchy shared by the library and the command line."""


class GenTorsionError(Exception):
    """Base class for all errors raised by gentorsion."""


class MissingGeneratorError(GenTorsionError, KeyError):
    """A word mentions a generator that has no image or is not in the alphabet."""

    def __str__(self):
        return Exception.__str__(self)


class InvalidSlopeError(GenTorsionError, ValueError):
    pass


class HypothesisError(GenTorsionError, ValueError):
    """Parameters violate the hypothesis under which a construction is valid."""


class MalformedProofError(GenTorsionError):
    """A proof step refers to a position or relator that does not exist."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


class WitnessFormatError(GenTorsionError, ValueError):
    """A non-triviality witness has the wrong shape for its presentation."""


class QuotientSearchError(GenTorsionError):
    """Exhaustive search for a finite quotient found nothing within the bound."""

    def __init__(self, max_degree: int, message: str = ""):
        msg = message or f"no permutation quotient of degree <= {max_degree} separates the element"
        super().__init__(msg)
        self.max_degree = max_degree


class DocumentError(GenTorsionError, ValueError):
    """A certificate document could not be parsed."""
