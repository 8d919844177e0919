"""Text syntax for connected sums of prime pieces.

Grammar (whitespace is ignored between tokens)::

    expr   := piece ("#" piece)*
    piece  := "S2xS1" | sph ["*cyclic(" int ")"] | sfs | tb | tag "(" label ")"
    sph    := "lens(" int "," int ")" | "prism(" int ")" | "tet" | "oct" | "ico"
    sfs    := "sfs(" ("o"|"n") int ";" int (";" "(" int "," int ")")* [";"] ")"
    tb     := "tb[[" int "," int "],[" int "," int "]]"
    tag    := "tsb" | "hyp" | "psl" | "graph" | "mixed" | "nilother"

``parse`` raises :class:`ParseError` on the first problem it meets; the error
carries a 1-based line/column span into the input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import InvalidInputError, UnsupportedInputError
from .model import (
    ManifoldExpression,
    MixedHyperbolicPieces,
    MonodromyMatrix,
    NilOther,
    NontrivialGraph,
    PrimeDescriptor,
    PSLtilde,
    S2xS1,
    Seifert,
    Spherical,
    SphericalFamily,
    TorusBundle,
    TorusSemiBundle,
    Hyperbolic,
    seifert,
)

GRAMMAR_VERSION = "1"

_TAGS = {
    "tsb": TorusSemiBundle,
    "hyp": Hyperbolic,
    "psl": PSLtilde,
    "graph": NontrivialGraph,
    "mixed": MixedHyperbolicPieces,
    "nilother": NilOther,
}
_TAG_NAMES = {cls: name for name, cls in _TAGS.items()}

_IDENT_START = frozenset("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_")
_IDENT_CHARS = _IDENT_START | frozenset("0123456789")
_LABEL_CHARS = _IDENT_CHARS | frozenset(".-")
_DIGITS = frozenset("0123456789")
_SPACE = frozenset(" \t\r\n\f\v")


class ErrorKind(str, enum.Enum):
    UNEXPECTED_TOKEN = "UnexpectedToken"
    BAD_NUMBER = "BadNumber"
    CONSTRAINT_VIOLATION = "ConstraintViolation"
    UNKNOWN_PIECE = "UnknownPiece"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, kind: ErrorKind, message: str, constraint: str | None = None):
        self.span = span
        self.kind = kind
        self.message = message
        self.constraint = constraint
        super().__init__(f"{span.line}:{span.column}: {kind.value}: {message}")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "message": self.message,
            "constraint": self.constraint,
            "line": self.span.line,
            "column": self.span.column,
            "length": self.span.length,
        }


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.end = len(text)

    # -- errors ---------------------------------------------------------

    def span(self, start: int, stop: int) -> SourceSpan:
        start = min(start, self.end)
        stop = max(start, min(stop, self.end))
        line = self.text.count("\n", 0, start) + 1
        column = start - (self.text.rfind("\n", 0, start) + 1) + 1
        # clamp to the line the span starts on
        nl = self.text.find("\n", start, stop)
        if nl != -1:
            stop = nl
        return SourceSpan(line, column, stop - start)

    def fail(self, kind, start, stop, message, constraint=None):
        raise ParseError(self.span(start, stop), kind, message, constraint)

    def unexpected(self, expected: str):
        if self.pos >= self.end:
            self.fail(ErrorKind.UNEXPECTED_TOKEN, self.pos, self.pos,
                      f"expected {expected}, found end of input")
        found = self.text[self.pos]
        self.fail(ErrorKind.UNEXPECTED_TOKEN, self.pos, self.pos + 1,
                  f"expected {expected}, found {found!r}")

    # -- lexing helpers ---------------------------------------------------

    def skip_ws(self):
        while self.pos < self.end and self.text[self.pos] in _SPACE:
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < self.end else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.unexpected(repr(ch))
        self.pos += 1

    def ident(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        if self.pos < self.end and self.text[self.pos] in _IDENT_START:
            self.pos += 1
            while self.pos < self.end and self.text[self.pos] in _IDENT_CHARS:
                self.pos += 1
        return self.text[start:self.pos], start

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.pos < self.end and self.text[self.pos] in "+-":
            self.pos += 1
        digits_start = self.pos
        while self.pos < self.end and self.text[self.pos] in _DIGITS:
            self.pos += 1
        if self.pos == digits_start:
            if digits_start > start:
                self.fail(ErrorKind.BAD_NUMBER, start, self.pos + 1, "sign without digits")
            self.unexpected("an integer")
        if self.pos < self.end and self.text[self.pos] in _IDENT_CHARS:
            stop = self.pos
            while stop < self.end and self.text[stop] in _IDENT_CHARS:
                stop += 1
            self.fail(ErrorKind.BAD_NUMBER, start, stop,
                      f"malformed integer literal {self.text[start:stop]!r}")
        try:
            return int(self.text[start:self.pos])
        except ValueError:
            self.fail(ErrorKind.BAD_NUMBER, start, self.pos, "integer literal too long")

    def label(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < self.end and self.text[self.pos] in _LABEL_CHARS:
            self.pos += 1
        if self.pos == start:
            self.unexpected("a label")
        return self.text[start:self.pos]

    # -- grammar ----------------------------------------------------------

    def parse(self) -> ManifoldExpression:
        factors = [self.piece()]
        while self.peek() == "#":
            self.pos += 1
            factors.append(self.piece())
        self.skip_ws()
        if self.pos < self.end:
            self.unexpected("'#' or end of input")
        return ManifoldExpression(tuple(factors))

    def piece(self) -> PrimeDescriptor:
        name, start = self.ident()
        if not name:
            self.unexpected("a prime piece")
        if name == "S2xS1":
            return S2xS1()
        if name in ("lens", "prism", "tet", "oct", "ico"):
            return self.spherical(name, start)
        if name == "sfs":
            return self.sfs(start)
        if name == "tb":
            return self.torus_bundle(start)
        if name in _TAGS:
            self.expect("(")
            label = self.label()
            self.expect(")")
            return _TAGS[name](label)
        self.fail(ErrorKind.UNKNOWN_PIECE, start, self.pos, f"unknown piece {name!r}")

    def spherical(self, kind: str, start: int) -> PrimeDescriptor:
        params: tuple[int, ...] = ()
        if kind == "lens":
            self.expect("(")
            p = self.integer()
            self.expect(",")
            q = self.integer()
            self.expect(")")
            params = (p, q)
        elif kind == "prism":
            self.expect("(")
            params = (self.integer(),)
            self.expect(")")
        cyclic = 1
        if self.peek() == "*":
            self.pos += 1
            word, wstart = self.ident()
            if word != "cyclic":
                if word:
                    self.fail(ErrorKind.UNEXPECTED_TOKEN, wstart, self.pos,
                              f"expected 'cyclic', found {word!r}")
                self.unexpected("'cyclic'")
            self.expect("(")
            cyclic = self.integer()
            self.expect(")")
        return Spherical(self.build(start, SphericalFamily, kind, params, cyclic))

    def sfs(self, start: int) -> PrimeDescriptor:
        self.expect("(")
        orient = self.peek()
        if orient not in ("o", "n"):
            self.unexpected("'o' or 'n'")
        self.pos += 1
        genus = self.integer()
        self.expect(";")
        euler_b = self.integer()
        fibers = []
        while self.peek() == ";":
            self.pos += 1
            if self.peek() == ")":
                break
            self.expect("(")
            a = self.integer()
            self.expect(",")
            b = self.integer()
            self.expect(")")
            fibers.append((a, b))
        self.expect(")")
        inv = self.build(start, seifert, orient == "o", genus, euler_b, fibers)
        desc = Seifert(inv)
        from .geometry import classify_geometry

        try:
            classify_geometry(desc)
        except UnsupportedInputError as exc:
            self.fail(ErrorKind.CONSTRAINT_VIOLATION, start, self.pos, str(exc), exc.constraint)
        return desc

    def torus_bundle(self, start: int) -> PrimeDescriptor:
        self.expect("[")
        entries = []
        for row in range(2):
            if row:
                self.expect(",")
            self.expect("[")
            entries.append(self.integer())
            self.expect(",")
            entries.append(self.integer())
            self.expect("]")
        self.expect("]")
        return TorusBundle(self.build(start, MonodromyMatrix, *entries))

    def build(self, start, ctor, *args):
        try:
            return ctor(*args)
        except InvalidInputError as exc:
            self.fail(ErrorKind.CONSTRAINT_VIOLATION, start, self.pos,
                      f"{exc.constraint}: {exc}", exc.constraint)


def parse(text: str | bytes) -> ManifoldExpression:
    """Parse one connected-sum expression.

    Raises ParseError (never anything else) on malformed input.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(SourceSpan(1, 1, 0), ErrorKind.UNEXPECTED_TOKEN,
                             f"input is not valid UTF-8 ({exc.reason})") from None
    return _Parser(text).parse()


def render_piece(p: PrimeDescriptor) -> str:
    if isinstance(p, S2xS1):
        return "S2xS1"
    if isinstance(p, Spherical):
        f = p.family
        if f.kind == "lens":
            text = f"lens({f.params[0]},{f.params[1]})"
        elif f.kind == "prism":
            text = f"prism({f.params[0]})"
        else:
            text = f.kind
        if f.cyclic != 1:
            text += f"*cyclic({f.cyclic})"
        return text
    if isinstance(p, Seifert):
        s = p.invariants
        head = f"sfs({'o' if s.base_orientable else 'n'} {s.base_genus}; {s.euler_b}"
        return head + "".join(f"; ({a},{b})" for a, b in s.exceptional_fibers) + ")"
    if isinstance(p, TorusBundle):
        m = p.matrix
        return f"tb[[{m.m11},{m.m12}],[{m.m21},{m.m22}]]"
    name = _TAG_NAMES.get(type(p))
    if name is None:
        raise TypeError(f"cannot render {p!r}")
    return f"{name}({p.label})"


def render(m: ManifoldExpression) -> str:
    return " # ".join(render_piece(p) for p in m.factors)


def format_error(text: str, err: ParseError) -> str:
    """Error message followed by the offending line and a caret marker."""
    lines = text.split("\n")
    out = [f"parse error at line {err.span.line}, column {err.span.column}: "
           f"{err.kind.value}: {err.message}"]
    if err.span.line <= len(lines):
        out.append("  " + lines[err.span.line - 1])
        out.append("  " + " " * (err.span.column - 1) + "^" * max(1, err.span.length))
    return "\n".join(out)
