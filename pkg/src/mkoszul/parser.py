"""Reader for potential / presentation files.

    field QQ;                      # optional; or "field 7;" for F_7
    vars x y z;
    w = x*y*z + y*z*x - 1/2 z*y*x;  # or one or more "rel = ...;" lines
    aut s1 = [[1,0,0],[0,0,1],[0,1,0]];

Juxtaposed variables joined by ``*`` are tensor products.  Row i of an
``aut`` matrix lists the coordinates of the image of the i-th variable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .field import QQ, GF, Field
from .tensor import LinearMap, Tensor

TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)"
    r"|(?P<op>[=;*/+\-−\[\],])"
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        value = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind not in ("ws", "comment"):
                tokens.append(Token(kind, "-" if value == "−" else value, line, col))
            col += len(value)
        pos = m.end()
    tokens.append(Token("eof", "", line, col))
    return tokens


@dataclass
class ParsedInput:
    field: Field
    names: tuple[str, ...]
    potential: Tensor | None = None
    relations: list[Tensor] = dc_field(default_factory=list)
    automorphisms: dict[str, LinearMap] = dc_field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.names)


class _Parser:
    def __init__(self, text: str, field: Field | None, names=None):
        self.tokens = tokenize(text)
        self.pos = 0
        self.field_override = field
        self.field = field or QQ
        self.names = tuple(names) if names else None

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tok
        self.pos += 1
        return tok

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind not in ("op", "ident"):
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        return self.advance()

    def parse(self, require_body: bool = True) -> ParsedInput:
        if self.tok.kind == "ident" and self.tok.text == "field":
            self.parse_field()
        if self.tok.kind == "ident" and self.tok.text == "vars":
            self.parse_vars()
        elif self.names is None:
            self.fail("expected a 'vars' declaration")
        out = ParsedInput(self.field, self.names)
        while self.tok.kind != "eof":
            self.parse_statement(out)
        if require_body and out.potential is None and not out.relations:
            self.fail("expected a 'w = ...;' or 'rel = ...;' statement")
        if out.potential is not None and out.relations:
            self.fail("give either a potential or relations, not both")
        if out.relations and len({r.order for r in out.relations}) > 1:
            self.fail("relations have different degrees")
        return out

    def parse_field(self):
        self.advance()
        tok = self.advance()
        if tok.kind == "ident" and tok.text in ("QQ", "Q"):
            declared = QQ
        elif tok.kind == "int":
            p = int(tok.text)
            if p == 0:
                declared = QQ
            elif p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
                self.fail(f"{p} is not a prime", tok)
            else:
                declared = GF(p)
        else:
            self.fail("expected QQ or a prime", tok)
        self.expect(";")
        if self.field_override is None:
            self.field = declared

    def parse_vars(self):
        self.advance()
        names = []
        while self.tok.kind == "ident":
            tok = self.advance()
            if tok.text in names:
                self.fail(f"variable {tok.text!r} declared twice", tok)
            if tok.text in ("w", "rel", "aut", "vars", "field"):
                self.fail(f"{tok.text!r} is reserved", tok)
            names.append(tok.text)
        if not names:
            self.fail("expected at least one variable")
        self.expect(";")
        self.names = tuple(names)

    def parse_statement(self, out: ParsedInput):
        tok = self.tok
        if tok.kind != "ident" or tok.text not in ("w", "rel", "aut"):
            self.fail(f"expected 'w', 'rel' or 'aut', found {tok.text or 'end of input'!r}")
        self.advance()
        if tok.text == "aut":
            name_tok = self.advance()
            if name_tok.kind != "ident":
                self.fail("expected an automorphism name", name_tok)
            if name_tok.text in out.automorphisms:
                self.fail(f"automorphism {name_tok.text!r} defined twice", name_tok)
            self.expect("=")
            out.automorphisms[name_tok.text] = self.parse_matrix()
        else:
            self.expect("=")
            t = self.parse_expr()
            if tok.text == "w":
                if out.potential is not None:
                    self.fail("potential defined twice", tok)
                out.potential = t
            else:
                out.relations.append(t)
        self.expect(";")

    def parse_coeff(self) -> Fraction:
        num = self.advance()
        if num.kind != "int":
            self.fail("malformed coefficient", num)
        value = Fraction(int(num.text))
        if self.tok.text == "/":
            self.advance()
            den = self.advance()
            if den.kind != "int":
                self.fail("malformed coefficient", den)
            if int(den.text) == 0:
                self.fail("zero denominator", den)
            value /= int(den.text)
        return value

    def scalar(self, value: Fraction, tok: Token):
        try:
            return self.field(value)
        except ZeroDivisionError:
            self.fail(f"coefficient {value} is undefined over {self.field!r}", tok)

    def parse_expr(self) -> Tensor:
        terms = []
        sign = 1
        start = self.tok
        if self.tok.text in ("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        while True:
            coeff, word, tok = self.parse_term()
            terms.append((sign * coeff, word, tok))
            if self.tok.text in ("+", "-"):
                sign = -1 if self.advance().text == "-" else 1
            else:
                break
        length = len(terms[0][1])
        for _, word, tok in terms:
            if len(word) != length:
                self.fail(f"monomial of length {len(word)} in an expression of length {length}", tok)
        acc = {}
        for coeff, word, tok in terms:
            acc[word] = acc.get(word, self.field.zero) + self.scalar(coeff, tok)
        t = Tensor.from_terms(acc, len(self.names), length, self.field)
        if t.is_zero():
            self.fail("expression is zero", start)
        return t

    def parse_term(self):
        start = self.tok
        coeff = Fraction(1)
        if self.tok.kind == "int":
            coeff = self.parse_coeff()
            if self.tok.text == "*":
                self.advance()
            elif self.tok.kind != "ident":
                return coeff, (), start
        word = [self.parse_variable()]
        while self.tok.text == "*":
            self.advance()
            word.append(self.parse_variable())
        return coeff, tuple(word), start

    def parse_variable(self) -> int:
        tok = self.advance()
        if tok.kind != "ident":
            self.fail("expected a variable", tok)
        if tok.text not in self.names:
            self.fail(f"unknown variable {tok.text!r}", tok)
        return self.names.index(tok.text)

    def parse_signed(self):
        tok = self.tok
        sign = 1
        if tok.text in ("+", "-"):
            sign = -1 if self.advance().text == "-" else 1
        return self.scalar(sign * self.parse_coeff(), tok)

    def parse_matrix(self) -> LinearMap:
        start = self.expect("[")
        rows = []
        while True:
            self.expect("[")
            row = [self.parse_signed()]
            while self.tok.text == ",":
                self.advance()
                row.append(self.parse_signed())
            self.expect("]")
            rows.append(row)
            if self.tok.text == ",":
                self.advance()
            else:
                break
        self.expect("]")
        n = len(self.names)
        if len(rows) != n or any(len(r) != n for r in rows):
            self.fail(f"automorphism matrix must be {n}×{n}", start)
        return LinearMap.from_images(rows, self.field)


def parse_file(text: str, field: Field | None = None) -> ParsedInput:
    """Parse a whole input file; ``field`` overrides any field declaration."""
    return _Parser(text, field).parse()


def parse_automorphisms(text: str, base: ParsedInput) -> dict[str, LinearMap]:
    """Read ``aut`` statements from a side file, reusing the main file's variables and field."""
    parser = _Parser(text, base.field, base.names)
    parsed = parser.parse(require_body=False)
    if parsed.names != base.names:
        raise ParseError("side file declares different variables", 1, 1)
    return parsed.automorphisms


def parse_potential(text: str, field: Field | None = None):
    """A :class:`Potential` for ``w = …`` files, a :class:`Presentation` for ``rel = …`` files."""
    from .potential import Potential, Presentation

    parsed = parse_file(text, field)
    if parsed.potential is not None:
        return Potential(parsed.potential)
    return Presentation.from_relations(parsed.relations)


def render_expr(t: Tensor, names) -> str:
    return t.format(names)


def render_matrix(sigma: LinearMap) -> str:
    rows = sigma.images()
    return "[" + ", ".join("[" + ", ".join(sigma.field.render(x) for x in r) + "]" for r in rows) + "]"


def render_input(parsed: ParsedInput) -> str:
    """Source text that parses back to the same data."""
    f = parsed.field
    lines = [f"field {'QQ' if f.characteristic == 0 else f.characteristic};", "vars " + " ".join(parsed.names) + ";"]
    if parsed.potential is not None:
        lines.append(f"w = {render_expr(parsed.potential, parsed.names)};")
    for r in parsed.relations:
        lines.append(f"rel = {render_expr(r, parsed.names)};")
    for name, sigma in parsed.automorphisms.items():
        lines.append(f"aut {name} = {render_matrix(sigma)};")
    return "\n".join(lines) + "\n"
