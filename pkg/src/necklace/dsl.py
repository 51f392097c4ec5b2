"""Text format for potentials.

::

    # one-vertex canonical potential, n = 1
    var alpha : deg 1 @ 1 -> 1 dual beta;
    var beta  : deg -1 @ 1 -> 1 dual alpha;
    var x1    : deg 0 @ 1 -> 1 dual xi1;
    var xi1   : deg 0 @ 1 -> 1 dual x1;
    cyc(alpha*alpha*beta) + cyc(alpha*x1*xi1) - cyc(alpha*xi1*x1)

Coefficients are written ``p/q*cyc(...)``.  ``cyc()`` is the empty cyclic
word and a lone ``0`` the empty series.  Endpoints default to vertex ``1``.
Greek letters (``α``, ``β``, ``ξ``) and subscript digits are accepted in
names and mapped to ``alpha``, ``beta``, ``xi`` and ASCII digits.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .words import Alphabet, AlphabetError, CyclicSeries, GradedVariable, NcPoly, Word

DEFAULT_VERTEX = "1"

_TOKEN = re.compile(r"(?P<ws>\s+|#[^\n]*)|(?P<arrow>->)|(?P<punct>[:;@*()+\-/])|(?P<int>\d+)|(?P<name>[^\W\d]\w*)")
_ALIASES = str.maketrans({"α": "alpha", "β": "beta", "ξ": "xi", "₀": "0", "₁": "1", "₂": "2", "₃": "3",
                          "₄": "4", "₅": "5", "₆": "6", "₇": "7", "₈": "8", "₉": "9"})
_KEYWORDS = {"var", "deg", "dual", "cyc"}
_ASCII_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.message}"


class ParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = diagnostics


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class PotentialDoc:
    alphabet: Alphabet
    series: CyclicSeries


def _tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError([Diagnostic(line, pos - line_start + 1, f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        chunk = m.group()
        if kind != "ws":
            if kind == "arrow" or kind == "punct":
                kind = chunk
            tokens.append(Token(kind, chunk, line, pos - line_start + 1))
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rindex("\n") + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _normalize_name(text: str) -> str:
    return text.translate(_ALIASES)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.errors: list[Diagnostic] = []

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError([Diagnostic(tok.line, tok.col, message)])

    def take(self, kind: str, what: str | None = None) -> Token:
        tok = self.tok
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise self.fail(f"expected {what or kind!r}, found {shown!r}")
        self.i += 1
        return tok

    def keyword(self, word: str) -> Token:
        tok = self.tok
        if tok.kind != "name" or tok.text != word:
            raise self.fail(f"expected {word!r}, found {tok.text or 'end of input'!r}")
        self.i += 1
        return tok

    def at_keyword(self, word: str) -> bool:
        return self.tok.kind == "name" and self.tok.text == word

    def name(self, what: str) -> Token:
        tok = self.take("name", what)
        if tok.text in _KEYWORDS:
            raise self.fail(f"keyword {tok.text!r} cannot be used as {what}", tok)
        return tok

    def as_int(self, tok: Token) -> int:
        try:
            return int(tok.text)
        except ValueError:
            raise self.fail("integer literal too long", tok) from None

    def integer(self) -> int:
        sign = 1
        if self.tok.kind in "+-":
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        return sign * self.as_int(self.take("int", "integer"))

    def vertex(self) -> str:
        if self.tok.kind == "int":
            return self.take("int").text
        return _normalize_name(self.name("vertex").text)

    def declaration(self) -> tuple[Token, str, int, str, str, str | None, Token | None]:
        self.keyword("var")
        name_tok = self.name("variable name")
        self.take(":", "':'")
        self.keyword("deg")
        deg = self.integer()
        src = dst = DEFAULT_VERTEX
        if self.tok.kind == "@":
            self.i += 1
            src = self.vertex()
            self.take("->", "'->'")
            dst = self.vertex()
        dual = dual_tok = None
        if self.at_keyword("dual"):
            self.i += 1
            dual_tok = self.name("dual name")
            dual = _normalize_name(dual_tok.text)
        self.take(";", "';'")
        return name_tok, _normalize_name(name_tok.text), deg, src, dst, dual, dual_tok

    def coefficient(self) -> Fraction:
        num = self.as_int(self.take("int", "coefficient"))
        den = 1
        if self.tok.kind == "/":
            self.i += 1
            den_tok = self.tok
            den = self.as_int(self.take("int", "denominator"))
            if den == 0:
                raise self.fail("malformed rational: zero denominator", den_tok)
        self.take("*", "'*'")
        return Fraction(num, den)

    def term(self, first: bool) -> tuple[Fraction, list[Token]]:
        sign = 1
        if self.tok.kind in "+-":
            sign = -1 if self.tok.kind == "-" else 1
            self.i += 1
        elif not first:
            raise self.fail(f"expected '+' or '-' between terms, found {self.tok.text or 'end of input'!r}")
        coeff = Fraction(1)
        if self.tok.kind == "int":
            coeff = self.coefficient()
        self.keyword("cyc")
        self.take("(", "'('")
        letters: list[Token] = []
        if self.tok.kind != ")":
            letters.append(self.name("letter"))
            while self.tok.kind == "*":
                self.i += 1
                letters.append(self.name("letter"))
        self.take(")", "')'")
        return sign * coeff, letters


def _kind(deg: int, src: str, dst: str) -> str:
    if src == dst and deg == 1:
        return "alpha"
    if src == dst and deg == -1:
        return "beta"
    if deg == 0:
        return "arrow"
    return "other"


def parse_potential(text: str | bytes) -> PotentialDoc:
    """Parse a potential document; raises :class:`ParseError` with positions."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError([Diagnostic(1, exc.start + 1, "input is not valid UTF-8")]) from None
    p = _Parser(text)
    decls = []
    while p.at_keyword("var"):
        decls.append(p.declaration())

    errors: list[Diagnostic] = []
    seen: dict[str, tuple] = {}
    for d in decls:
        tok, name = d[0], d[1]
        if name in seen:
            errors.append(Diagnostic(tok.line, tok.col, f"variable {name!r} declared twice"))
        else:
            seen[name] = d
    for name, (tok, _, deg, src, dst, dual, dual_tok) in seen.items():
        if dual is None:
            continue
        if dual not in seen:
            errors.append(Diagnostic(dual_tok.line, dual_tok.col, f"dual {dual!r} of {name!r} is not declared"))
        elif seen[dual][5] != name:
            errors.append(Diagnostic(dual_tok.line, dual_tok.col, f"unbalanced duals: {name!r} -> {dual!r} but {dual!r} -> {seen[dual][5]!r}"))
    if errors:
        raise ParseError(errors)
    try:
        alphabet = Alphabet(GradedVariable(name, deg, src, dst, _kind(deg, src, dst), dual)
                            for name, (_, _, deg, src, dst, dual, _) in seen.items())
    except AlphabetError as exc:
        tok = decls[0][0] if decls else p.tok
        raise ParseError([Diagnostic(tok.line, tok.col, str(exc))]) from None

    terms: dict[Word, Fraction] = {}
    if p.tok.kind == "int" and p.tok.text == "0" and p.tokens[p.i + 1].kind == "eof":
        p.i += 1
    else:
        first = True
        while p.tok.kind != "eof":
            if p.at_keyword("var"):
                raise p.fail("declarations must precede the series")
            start = p.tok
            coeff, letters = p.term(first)
            first = False
            word = []
            for lt in letters:
                nm = _normalize_name(lt.text)
                if nm not in alphabet.index:
                    errors.append(Diagnostic(lt.line, lt.col, f"unknown letter {nm!r}"))
                else:
                    word.append(alphabet.index[nm])
            if len(word) == len(letters):
                w = tuple(word)
                if not alphabet.is_composable(w, closed=True):
                    errors.append(Diagnostic(start.line, start.col, "term is not a closed path"))
                else:
                    terms[w] = terms.get(w, 0) + coeff
    p.take("eof", "end of input")
    if errors:
        raise ParseError(errors)
    return PotentialDoc(alphabet, CyclicSeries(alphabet, terms))


def _fmt_coeff(c: Fraction, first: bool) -> str:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    body = "" if mag == 1 else f"{mag}*"
    lead = f"{sign} " if sign and not first else sign
    return f"{lead}{body}"


def format_word(alphabet: Alphabet, word: Word, sep: str = "*") -> str:
    return sep.join(alphabet.names(word))


def format_series(series: Union[CyclicSeries, NcPoly]) -> str:
    """Series (or polynomial) text in canonical term order."""
    if not series.terms:
        return "0"
    a = series.alphabet
    parts = []
    for i, (w, c) in enumerate(series.items()):
        body = format_word(a, w)
        core = f"cyc({body})" if isinstance(series, CyclicSeries) else (body or "1")
        parts.append(f"{_fmt_coeff(c, i == 0)}{core}")
    return " ".join(parts)


def format_declarations(alphabet: Alphabet) -> list[str]:
    width = max((len(v.name) for v in alphabet), default=0)
    out = []
    for v in alphabet:
        line = f"var {v.name.ljust(width)} : deg {v.coh_deg} @ {v.source} -> {v.target}"
        if v.dual is not None:
            line += f" dual {v.dual}"
        out.append(line + ";")
    return out


def print_potential(doc: PotentialDoc | CyclicSeries) -> str:
    """Canonical document text; parses back to an equal document when every
    name and vertex is a plain identifier."""
    if isinstance(doc, CyclicSeries):
        doc = PotentialDoc(doc.alphabet, doc)
    lines = format_declarations(doc.alphabet)
    lines.append(format_series(doc.series))
    return "\n".join(lines) + "\n"


def is_printable_name(name: str) -> bool:
    return bool(_ASCII_NAME.match(name)) and name not in _KEYWORDS
