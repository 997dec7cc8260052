"""Reader and writer for ``.lie`` algebra definition files.

::

    # comments run to the end of the line
    algebra h11
    dim 3
    [e1, e2] = e3
    [e1, e3] = 2 e4 - 1/2 e5

Each declaration gives one bracket of basis vectors; undeclared brackets
are zero and [e_j, e_i] = -[e_i, e_j] is filled in automatically.
Coefficients are integers or fractions p/q; floats are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .liealg import LieAlgebra, check_jacobi


class AlgebraFileError(ValueError):
    kind = "error"

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {self.kind} error: {message}")

    def as_dict(self) -> dict:
        return {"kind": self.kind, "line": self.line, "column": self.column, "message": self.message}


class LexicalError(AlgebraFileError):
    kind = "lexical"


class GrammarError(AlgebraFileError):
    kind = "syntax"


class SemanticError(AlgebraFileError):
    kind = "semantic"


class JacobiFileError(AlgebraFileError):
    kind = "jacobi"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<INT>\d+)|(?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[\[\],=+\-/*])"
)
_SYMBOLS = {"[": "LBRACK", "]": "RBRACK", ",": "COMMA", "=": "EQ", "+": "PLUS", "-": "MINUS", "/": "SLASH", "*": "STAR"}
_GEN_RE = re.compile(r"e([0-9]+)$")


def tokenize_line(text: str, lineno: int) -> list[Token]:
    text = text.split("#", 1)[0]
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise LexicalError(lineno, pos + 1, f"unexpected character {text[pos]!r}")
        kind = match.lastgroup
        if kind != "ws":
            tok = match.group()
            if kind == "sym":
                kind = _SYMBOLS[tok]
            tokens.append(Token(kind, tok, lineno, pos + 1))
        pos = match.end()
    return tokens


class _LineParser:
    def __init__(self, tokens: list[Token], lineno: int, line_length: int):
        self.tokens = tokens
        self.pos = 0
        self.lineno = lineno
        self.end_column = line_length + 1

    def peek(self) -> Optional[Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _where(self) -> int:
        tok = self.peek()
        return tok.column if tok else self.end_column

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok is None or tok.kind != kind:
            found = f"{tok.text!r}" if tok else "end of line"
            raise GrammarError(self.lineno, self._where(), f"expected {what}, found {found}")
        self.pos += 1
        return tok

    def accept(self, kind: str) -> Optional[Token]:
        tok = self.peek()
        if tok is not None and tok.kind == kind:
            self.pos += 1
            return tok
        return None

    def at_end(self) -> bool:
        return self.pos == len(self.tokens)

    def expect_end(self) -> None:
        if not self.at_end():
            tok = self.peek()
            raise GrammarError(self.lineno, tok.column, f"unexpected {tok.text!r} at end of line")

    def generator(self, dim: int) -> tuple[int, Token]:
        tok = self.expect("IDENT", "a generator eN")
        match = _GEN_RE.match(tok.text)
        if match is None:
            raise GrammarError(tok.line, tok.column, f"expected a generator eN, found {tok.text!r}")
        idx = int(match.group(1))
        if not 1 <= idx <= dim:
            raise SemanticError(tok.line, tok.column, f"index out of range: {tok.text} with dim {dim}")
        return idx - 1, tok

    def rational(self) -> Optional[Fraction]:
        num = self.accept("INT")
        if num is None:
            return None
        if self.accept("SLASH"):
            den = self.expect("INT", "a denominator")
            if int(den.text) == 0:
                raise SemanticError(den.line, den.column, "zero denominator")
            return Fraction(int(num.text), int(den.text))
        return Fraction(int(num.text))


def _parse_rhs(p: _LineParser, dim: int) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    sign = -1 if p.accept("MINUS") else 1
    while True:
        coeff = p.rational()
        if coeff is not None:
            p.accept("STAR")
        else:
            coeff = Fraction(1)
        k, _ = p.generator(dim)
        out[k] = out.get(k, Fraction(0)) + sign * coeff
        if p.accept("PLUS"):
            sign = 1
        elif p.accept("MINUS"):
            sign = -1
        else:
            break
    p.expect_end()
    return out


def parse_algebra(text: str) -> LieAlgebra:
    name: Optional[str] = None
    dim: Optional[int] = None
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    declared_at: dict[tuple[int, int], int] = {}
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        tokens = tokenize_line(raw, lineno)
        if not tokens:
            continue
        p = _LineParser(tokens, lineno, len(raw.split("#", 1)[0].rstrip()))
        if name is None:
            head = p.expect("IDENT", "'algebra'")
            if head.text != "algebra":
                raise GrammarError(lineno, head.column, f"expected 'algebra', found {head.text!r}")
            name = p.expect("IDENT", "an algebra name").text
            p.expect_end()
        elif dim is None:
            head = p.expect("IDENT", "'dim'")
            if head.text != "dim":
                raise GrammarError(lineno, head.column, f"expected 'dim', found {head.text!r}")
            tok = p.expect("INT", "a dimension")
            dim = int(tok.text)
            if dim < 1:
                raise SemanticError(lineno, tok.column, "dimension must be positive")
            p.expect_end()
        else:
            open_tok = p.expect("LBRACK", "'['")
            i, _ = p.generator(dim)
            p.expect("COMMA", "','")
            j, jtok = p.generator(dim)
            p.expect("RBRACK", "']'")
            p.expect("EQ", "'='")
            rhs = _parse_rhs(p, dim)
            if i == j:
                raise SemanticError(lineno, jtok.column, f"bracket of e{i + 1} with itself")
            key = (min(i, j), max(i, j))
            if key in brackets:
                raise SemanticError(
                    lineno,
                    open_tok.column,
                    f"duplicate pair [e{key[0] + 1}, e{key[1] + 1}] (first declared on line {declared_at[key]})",
                )
            if i > j:
                rhs = {k: -c for k, c in rhs.items()}
            brackets[key] = rhs
            declared_at[key] = lineno
    if name is None:
        raise GrammarError(last_line + 1, 1, "expected 'algebra', found end of file")
    if dim is None:
        raise GrammarError(last_line + 1, 1, "expected 'dim', found end of file")
    L = LieAlgebra(dim, brackets, name=name, check=False)
    violation = check_jacobi(L)
    if violation is not None:
        triple = (violation.i, violation.j, violation.k)
        lines = [declared_at[(a, b)] for a in triple for b in triple if (a, b) in declared_at]
        raise JacobiFileError(min(lines) if lines else 1, 1, str(violation))
    return L


def format_rational_term(c: Fraction, gen: str, first: bool) -> str:
    mag = abs(c)
    body = gen if mag == 1 else f"{mag} {gen}"
    if first:
        return f"-{body}" if c < 0 else body
    return f"- {body}" if c < 0 else f"+ {body}"


def print_algebra(L: LieAlgebra, name: Optional[str] = None) -> str:
    label = name or L.name or "unnamed"
    label = re.sub(r"[^A-Za-z0-9_]", "_", label)
    if not re.match(r"[A-Za-z_]", label):
        label = "_" + label
    lines = [f"algebra {label}", f"dim {L.dim}"]
    for (i, j), v in L.table.items():
        terms = [(k, c) for k, c in enumerate(v) if c]
        rhs = " ".join(format_rational_term(c, f"e{k + 1}", t == 0) for t, (k, c) in enumerate(terms))
        lines.append(f"[e{i + 1},e{j + 1}] = {rhs}")
    return "\n".join(lines) + "\n"
