"""Exception hierarchy.

Validation errors signal bad input (the CLI exits with status 2); unsupported
errors signal well-formed input that falls outside what the library models
(exit status 3).
"""


class ValidationError(ValueError):
    """Input violates a documented invariant."""


class SingularMatrixError(ValidationError):
    pass


class UnsupportedCase(Exception):
    """Input is valid but outside the cases the library can compute."""


class AmbiguousGammaPrime(UnsupportedCase):
    pass


class InternalTypingError(UnsupportedCase):
    pass


class UnsupportedPresentation(UnsupportedCase):
    pass


class UnsupportedGraph(UnsupportedCase):
    pass
