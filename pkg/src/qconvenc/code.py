"""Framed Pauli sequences and quantum convolutional codes.

A convolutional code on n qubits per frame is given by n-k stabilizer
generators, each a finite sequence of n-qubit frames ("XXX|XZY" spans two
frames).  Validity means every pair of generators commutes at every
relative frame shift, so the shifted copies generate an abelian group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import CodeValidationError, ParseError
from .pauli import PauliOperator

__all__ = [
    "FramedPauliSequence",
    "ConvolutionalCode",
    "parse_code",
    "render_code",
    "parse_polynomial",
    "polynomial_to_text",
    "from_classical_polynomial",
    "validate",
]


@dataclass(frozen=True)
class FramedPauliSequence:
    """A Pauli operator on a stream, given frame by frame.

    Trailing identity frames are trimmed so equal operators compare equal.
    An empty frame tuple is the identity on the whole stream.
    """

    frame_width: int
    frames: Tuple[PauliOperator, ...]

    def __post_init__(self):
        for f in self.frames:
            if f.width != self.frame_width:
                raise ValueError("frame width mismatch")
        while self.frames and self.frames[-1].is_identity():
            object.__setattr__(self, "frames", self.frames[:-1])

    @staticmethod
    def from_string(text: str, frame_width: int | None = None) -> "FramedPauliSequence":
        chunks = [c.strip() for c in text.split("|")]
        paulis = [PauliOperator.from_string(c) for c in chunks if c]
        if not paulis:
            if frame_width is None:
                raise ParseError("cannot infer frame width of an empty sequence")
            return FramedPauliSequence(frame_width, ())
        widths = {p.width for p in paulis}
        if len(widths) != 1:
            raise ParseError(f"frames have differing widths in {text!r}")
        w = widths.pop()
        if frame_width is not None and w != frame_width:
            raise ParseError(f"expected {frame_width}-qubit frames in {text!r}")
        return FramedPauliSequence(w, tuple(paulis))

    @property
    def span(self) -> int:
        return len(self.frames)

    def frame(self, t: int) -> PauliOperator:
        """Frame t, 1-based; identity outside the span."""
        if 1 <= t <= len(self.frames):
            return self.frames[t - 1]
        return PauliOperator.identity(self.frame_width)

    def as_pauli(self, nframes: int) -> PauliOperator:
        """Flatten onto a window of `nframes` frames (must contain the span)."""
        if nframes < self.span:
            raise ValueError("window shorter than the sequence span")
        out = PauliOperator.identity(0)
        for t in range(1, nframes + 1):
            out = out.tensor(self.frame(t))
        return out

    def sp_at_shift(self, other: "FramedPauliSequence", shift: int) -> int:
        """Symplectic product of self with other delayed by `shift` frames."""
        acc = 0
        for t, f in enumerate(self.frames, 1):
            acc ^= f.sp(other.frame(t - shift))
        return acc

    def weight(self) -> int:
        return sum(f.weight() for f in self.frames)

    def to_string(self) -> str:
        if not self.frames:
            return "I" * self.frame_width
        return "|".join(f.to_string() for f in self.frames)

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class ConvolutionalCode:
    n: int
    generators: Tuple[FramedPauliSequence, ...]

    def __post_init__(self):
        for g in self.generators:
            if g.frame_width != self.n:
                raise ValueError("generator frame width differs from n")

    @property
    def k(self) -> int:
        return self.n - len(self.generators)

    @property
    def nu(self) -> int:
        """Constraint length: the longest generator span in frames."""
        return max((g.span for g in self.generators), default=1)


def validate(code: ConvolutionalCode) -> None:
    """Raise CodeValidationError unless all generators commute at all shifts."""
    nu = code.nu
    for a, ga in enumerate(code.generators, 1):
        for b, gb in enumerate(code.generators, 1):
            if b < a:
                continue
            for shift in range(nu):
                if ga.sp_at_shift(gb, shift):
                    raise CodeValidationError(a, b, shift)
                if shift and gb.sp_at_shift(ga, shift):
                    raise CodeValidationError(b, a, shift)


_POLY_TERM = re.compile(r"^(1|D(\^\d+)?)$")


def parse_polynomial(text: str) -> int:
    """Parse '1+D+D^4' into a coefficient bitmask (bit t = coeff of D^t)."""
    mask = 0
    for term in text.replace(" ", "").split("+"):
        if not _POLY_TERM.match(term):
            raise ParseError(f"bad polynomial term {term!r}")
        if term == "1":
            mask |= 1
        elif term == "D":
            mask |= 2
        else:
            mask |= 1 << int(term[2:])
    return mask


def polynomial_to_text(mask: int) -> str:
    terms = []
    t = 0
    while mask:
        if mask & 1:
            terms.append("1" if t == 0 else ("D" if t == 1 else f"D^{t}"))
        mask >>= 1
        t += 1
    return "+".join(terms) if terms else "0"


def _poly_row_self_orthogonal(polys: Sequence[int]) -> Optional[int]:
    """Return an offending shift if the row is not self-orthogonal, else None."""
    degree = max(p.bit_length() for p in polys)
    for shift in range(degree):
        acc = 0
        for p in polys:
            acc ^= bin(p & (p >> shift)).count("1") & 1
        if acc:
            return shift
    return None


def from_classical_polynomial(polys: Sequence[int]) -> ConvolutionalCode:
    """CSS code from one self-orthogonal classical polynomial row.

    Entry j (bitmask over D powers) puts an X on position j of frame t for
    every set bit t, and a Z twin does the same.  Self-orthogonality (even
    overlap of the row with each of its shifts) makes the pair commute.
    """
    n = len(polys)
    if n == 0 or all(p == 0 for p in polys):
        raise ParseError("polynomial row is empty")
    bad = _poly_row_self_orthogonal(polys)
    if bad is not None:
        raise CodeValidationError(1, 2, bad)
    nframes = max(p.bit_length() for p in polys)
    frames_x = []
    frames_z = []
    for t in range(nframes):
        x = 0
        for j, p in enumerate(polys):
            if (p >> t) & 1:
                x |= 1 << j
        frames_x.append(PauliOperator(n, x, 0))
        frames_z.append(PauliOperator(n, 0, x))
    code = ConvolutionalCode(
        n,
        (
            FramedPauliSequence(n, tuple(frames_x)),
            FramedPauliSequence(n, tuple(frames_z)),
        ),
    )
    validate(code)
    return code


def parse_code(text: str) -> ConvolutionalCode:
    """Parse a code file: 'n=<int>' header, one generator per line,
    '#' comments, or a 'poly: p1, p2, ...' row for the CSS construction."""
    n: Optional[int] = None
    polys: Optional[List[int]] = None
    gens: List[FramedPauliSequence] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("n="):
            try:
                n = int(line[2:])
            except ValueError as exc:
                raise ParseError(f"line {lineno}: bad n= header") from exc
            continue
        if line.lower().startswith("poly:"):
            polys = [parse_polynomial(p) for p in line[5:].split(",") if p.strip()]
            continue
        try:
            gens.append(FramedPauliSequence.from_string(line, n))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    if polys is not None:
        if gens:
            raise ParseError("give either a poly: row or generator lines, not both")
        if n is not None and n != len(polys):
            raise ParseError("n= header disagrees with the polynomial row length")
        return from_classical_polynomial(polys)
    if n is None:
        raise ParseError("missing n= header")
    code = ConvolutionalCode(n, tuple(gens))
    validate(code)
    return code


def render_code(code: ConvolutionalCode) -> str:
    lines = [f"n={code.n}"]
    lines += [g.to_string() for g in code.generators]
    return "\n".join(lines) + "\n"
