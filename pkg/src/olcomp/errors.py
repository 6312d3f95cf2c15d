"""Exception types shared across the package."""


class OlcompError(Exception):
    """Base class for all errors raised by olcomp."""


class AbsoluteContinuityViolated(OlcompError):
    """A zero-weight atom receives positive pushforward mass."""

    def __init__(self, atom, m):
        self.atom = atom
        self.m = m
        super().__init__(f"atom {atom!r} has weight 0 but positive mass under power {m}")


class IndexMismatch(OlcompError):
    """Two measures (or functions) are indexed over different atom lists."""


class NotWellDefinedAE(OlcompError):
    """A positive-weight atom is mapped onto a null atom."""

    def __init__(self, atom, target):
        self.atom = atom
        self.target = target
        super().__init__(
            f"atom {atom!r} has positive weight but maps to null atom {target!r}; "
            "f o psi depends on the representative of f"
        )


class NumericNonconvergence(OlcompError):
    """Root bracketing for the Luxemburg norm failed."""


class PositiveWeightsRequired(OlcompError):
    """An operation needs every singleton to carry positive mass."""


class ParseError(OlcompError):
    def __init__(self, locus, message):
        self.locus = locus
        self.message = message
        super().__init__(f"{locus}: {message}")


class ValidationError(OlcompError):
    def __init__(self, locus, message):
        self.locus = locus
        self.message = message
        super().__init__(f"{locus}: {message}")
