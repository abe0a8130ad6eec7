"""Exception types shared across the package."""

from __future__ import annotations


class QconvError(Exception):
    """Base class for everything this package raises on purpose."""


class ParseError(QconvError):
    """Malformed Pauli string, circuit text or code file."""


class CodeValidationError(QconvError):
    """A framed generator set fails the shifted commutation requirement."""

    def __init__(self, gen_a: int, gen_b: int, shift: int):
        self.gen_a = gen_a
        self.gen_b = gen_b
        self.shift = shift
        super().__init__(
            f"generators {gen_a} and {gen_b} anticommute at relative frame shift {shift}"
        )


class SkeletonInconsistencyError(QconvError):
    """The commutation requirement forces an impossible product; no encoder exists."""


class MapConsistencyError(QconvError):
    """Partial symplectic map is internally inconsistent."""


class SynthesisError(QconvError):
    """Gate synthesis failed an internal self-check."""


class OrbitError(QconvError):
    """Memory orbit of a propagated operator does not close."""


class TrellisError(QconvError):
    """No trellis path is consistent with a syndrome; indicates a bug."""


class CompletionSearchExhausted(QconvError):
    """No non-catastrophic completion found within the search budget."""

    def __init__(self, message: str, admissible=None):
        self.admissible = admissible
        super().__init__(message)
