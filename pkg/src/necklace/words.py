"""Graded alphabets, words and exact cyclic series.

Letters are stored as integer indices into an :class:`Alphabet`; the index
order *is* the global variable order used to pick canonical rotations.
Words are plain tuples of indices.  Coefficients are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Word = tuple[int, ...]
Scalar = Fraction
Number = Union[int, Fraction]

KINDS = ("alpha", "beta", "arrow", "other")
_KIND_DEGREE = {"alpha": 1, "beta": -1, "arrow": 0}


class PathError(ValueError):
    """A word is not a composable (or not a closed) path."""


class AlphabetError(ValueError):
    pass


@dataclass(frozen=True)
class GradedVariable:
    name: str
    coh_deg: int
    source: str
    target: str
    kind: str
    dual: str | None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise AlphabetError(f"unknown kind {self.kind!r} for {self.name}")
        if self.kind != "other" and self.coh_deg != _KIND_DEGREE[self.kind]:
            raise AlphabetError(
                f"{self.name}: kind {self.kind} requires degree {_KIND_DEGREE[self.kind]}, got {self.coh_deg}"
            )
        if self.kind != "arrow" and self.source != self.target:
            raise AlphabetError(f"{self.name}: {self.kind} coordinates must be loops")


def _order_key(var: GradedVariable, position: int, vertex_rank: dict[str, int]) -> tuple:
    if var.kind not in ("alpha", "beta"):
        return (1, 0, 0, position)
    return (0, vertex_rank[var.source], 0 if var.kind == "alpha" else 1, position)


class Alphabet:
    """An ordered, validated set of graded variables.

    Variables are reordered into the global order: ``alpha_v < beta_v`` per
    vertex (vertices by first appearance), then arrows in the given order.
    Within a dual pair of arrows, the earlier one is the positive side of the
    symplectic pairing.  A variable without a dual (``dual=None``) never
    contributes to brackets.
    """

    def __init__(self, variables: Iterable[GradedVariable]):
        given = list(variables)
        vertex_rank: dict[str, int] = {}
        for var in given:
            for v in (var.source, var.target):
                vertex_rank.setdefault(v, len(vertex_rank))
        order = sorted(range(len(given)), key=lambda i: _order_key(given[i], i, vertex_rank))
        self.variables: tuple[GradedVariable, ...] = tuple(given[i] for i in order)
        self.vertices: tuple[str, ...] = tuple(vertex_rank)
        self.index: dict[str, int] = {}
        for i, var in enumerate(self.variables):
            if var.name in self.index:
                raise AlphabetError(f"duplicate variable {var.name!r}")
            self.index[var.name] = i
        for var in self.variables:
            if var.dual is None:
                continue
            if var.dual not in self.index:
                raise AlphabetError(f"{var.name}: dual {var.dual!r} is not declared")
            partner = self.variables[self.index[var.dual]]
            if partner.dual != var.name:
                raise AlphabetError(f"dual pairing is not an involution at {var.name!r}")
            if partner.name == var.name:
                raise AlphabetError(f"{var.name} is its own dual")
            if (partner.source, partner.target) != (var.target, var.source):
                raise AlphabetError(f"{var.name} and {partner.name} do not have reversed endpoints")
            if partner.coh_deg != -var.coh_deg:
                raise AlphabetError(f"{var.name} and {partner.name} have non-opposite degrees")
        vid = {v: i for i, v in enumerate(self.vertices)}
        self.deg: tuple[int, ...] = tuple(v.coh_deg for v in self.variables)
        self.parity: tuple[int, ...] = tuple(d & 1 for d in self.deg)
        self.src: tuple[int, ...] = tuple(vid[v.source] for v in self.variables)
        self.dst: tuple[int, ...] = tuple(vid[v.target] for v in self.variables)
        self.dual: tuple[int, ...] = tuple(-1 if v.dual is None else self.index[v.dual] for v in self.variables)
        self._canon_cache: dict[Word, tuple[Word, int]] = {}

    def __len__(self) -> int:
        return len(self.variables)

    def __iter__(self) -> Iterator[GradedVariable]:
        return iter(self.variables)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(v.name for v in self.variables)})"

    def __getitem__(self, name: str) -> int:
        return self.index[name]

    def var(self, i: int) -> GradedVariable:
        return self.variables[i]

    def word(self, *names: str) -> Word:
        try:
            return tuple(self.index[n] for n in names)
        except KeyError as exc:
            raise AlphabetError(f"unknown variable {exc.args[0]!r}") from None

    def names(self, word: Word) -> list[str]:
        return [self.variables[i].name for i in word]

    def coh(self, word: Word) -> int:
        return sum(self.deg[i] for i in word)

    def word_parity(self, word: Word) -> int:
        return sum(self.parity[i] for i in word) & 1

    def is_composable(self, word: Word, closed: bool = False) -> bool:
        for a, b in zip(word, word[1:]):
            if self.dst[a] != self.src[b]:
                return False
        if closed and word and self.dst[word[-1]] != self.src[word[0]]:
            return False
        return True

    def canonical(self, word: Word) -> tuple[Word, int]:
        """Cached :func:`canonical_cyclic`."""
        hit = self._canon_cache.get(word)
        if hit is None:
            hit = canonical_cyclic(self, word)
            self._canon_cache[word] = hit
        return hit


def rotation_sign(alphabet: Alphabet, word: Word, r: int) -> int:
    """Sign s with ``[word] = s * [word[r:] + word[:r]]``."""
    par = alphabet.parity
    head = sum(par[i] for i in word[:r]) & 1
    tail = sum(par[i] for i in word[r:]) & 1
    return -1 if head & tail else 1


def canonical_cyclic(alphabet: Alphabet, word: Sequence[int]) -> tuple[Word, int]:
    """Minimal rotation of a closed word and the sign relating it to ``word``.

    Returns ``(rep, sign)`` with ``[word] = sign * [rep]``.  ``sign`` is 0 when
    the cyclic class vanishes, i.e. some self-rotation carries Koszul sign -1.
    """
    word = tuple(word)
    if not alphabet.is_composable(word, closed=True):
        raise PathError(f"not a closed path: {' '.join(alphabet.names(word))}")
    k = len(word)
    if k == 0:
        return word, 1
    par = alphabet.parity
    total = 0
    for i in word:
        total ^= par[i]
    best_r = 0
    best = word
    for r in range(1, k):
        rot = word[r:] + word[:r]
        if rot < best:
            best, best_r = rot, r
    prefix = [0] * (k + 1)
    for i, z in enumerate(word):
        prefix[i + 1] = prefix[i] ^ par[z]
    for p in range(1, k):
        if k % p == 0 and word[p:] + word[:p] == word:
            if prefix[p] & (total ^ prefix[p]):
                return best, 0
            break
    sign = -1 if prefix[best_r] & (total ^ prefix[best_r]) else 1
    return best, sign


def compose_check(word: Sequence[str], alphabet: Alphabet, closed: bool = False) -> bool:
    """Whether a word given by variable names is a composable path."""
    return alphabet.is_composable(alphabet.word(*word), closed=closed)


def _clean(terms: Mapping[Word, Number]) -> dict[Word, Fraction]:
    return {w: Fraction(c) for w, c in terms.items() if c != 0}


class _Linear:
    """Shared exact linear-combination behaviour for series and polynomials."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Number] | None = None, *, _trusted: bool = False):
        self.alphabet = alphabet
        self.terms: dict[Word, Fraction] = dict(terms) if _trusted else self._normalize(terms or {})

    def _normalize(self, terms: Mapping[Word, Number]) -> dict[Word, Fraction]:
        raise NotImplementedError

    def _new(self, terms: dict[Word, Fraction]):
        return type(self)(self.alphabet, {w: c for w, c in terms.items() if c}, _trusted=True)

    def _check(self, other: "_Linear") -> None:
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.alphabet != self.alphabet:
            raise AlphabetError("operands use different alphabets")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return self._new(out)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) - c
        return self._new(out)

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def scale(self, c: Number):
        c = Fraction(c)
        return self._new({w: c * v for w, v in self.terms.items()})

    def __mul__(self, c: Number):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self.alphabet, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sort_key(self, word: Word) -> tuple:
        return (self.alphabet.coh(word), len(word), word)

    def items(self) -> list[tuple[Word, Fraction]]:
        """Terms in the deterministic print order: (coh, cyc), then word."""
        return sorted(self.terms.items(), key=lambda t: self.sort_key(t[0]))

    def degrees(self) -> set[tuple[int, int, int]]:
        """``(coh_deg, cyc_deg, weight)`` of every homogeneous component."""
        out = set()
        for w in self.terms:
            coh = self.alphabet.coh(w)
            out.add((coh, len(w), len(w) - coh))
        return out

    def coefficient(self, *names: str) -> Fraction:
        raise NotImplementedError

    def __repr__(self) -> str:
        if not self.terms:
            return f"{type(self).__name__}(0)"
        parts = []
        for w, c in self.items():
            parts.append(f"{c}*{'.'.join(self.alphabet.names(w)) or '1'}")
        return f"{type(self).__name__}({' + '.join(parts)})"


class NcPoly(_Linear):
    """Noncommutative polynomial: words are composable paths, not rotated."""

    __slots__ = ()

    def _normalize(self, terms):
        for w in terms:
            if not self.alphabet.is_composable(w):
                raise PathError(f"not composable: {' '.join(self.alphabet.names(w))}")
        return _clean(terms)

    def coefficient(self, *names: str) -> Fraction:
        return self.terms.get(self.alphabet.word(*names), Fraction(0))

    def __matmul__(self, other: "NcPoly") -> "NcPoly":
        """Concatenation product (zero on non-composable pairs)."""
        self._check(other)
        a = self.alphabet
        out: dict[Word, Fraction] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                if u and v and a.dst[u[-1]] != a.src[v[0]]:
                    continue
                out[u + v] = out.get(u + v, 0) + cu * cv
        return self._new(out)

    @classmethod
    def from_names(cls, alphabet: Alphabet, terms: Mapping[str, Number]) -> "NcPoly":
        """Build from ``{"alpha beta": 1, ...}``; the empty string is the empty word."""
        return cls(alphabet, {alphabet.word(*k.split()): c for k, c in terms.items()})


class CyclicSeries(_Linear):
    """Finite exact combination of canonical cyclic words.

    Any closed words may be passed in; they are rotated to canonical form with
    their Koszul signs, and vanishing classes are dropped.
    """

    __slots__ = ()

    def _normalize(self, terms):
        out: dict[Word, Fraction] = {}
        for w, c in terms.items():
            rep, sign = self.alphabet.canonical(tuple(w))
            if sign and c:
                out[rep] = out.get(rep, 0) + sign * Fraction(c)
        return {w: c for w, c in out.items() if c}

    def coefficient(self, *names: str) -> Fraction:
        rep, sign = self.alphabet.canonical(self.alphabet.word(*names))
        return sign * self.terms.get(rep, Fraction(0))

    @classmethod
    def from_names(cls, alphabet: Alphabet, terms: Mapping[str, Number]) -> "CyclicSeries":
        return cls(alphabet, {alphabet.word(*k.split()): c for k, c in terms.items()})

    @classmethod
    def constant(cls, alphabet: Alphabet, c: Number) -> "CyclicSeries":
        return cls(alphabet, {(): c})

    def is_homogeneous(self) -> bool:
        return len({(d[0], d[1]) for d in self.degrees()}) <= 1


def series_combine(op: str, s1: CyclicSeries, s2: CyclicSeries | Number) -> CyclicSeries:
    """``add``/``sub`` two series, or ``scale`` a series by a rational."""
    if op == "add":
        return s1 + s2
    if op == "sub":
        return s1 - s2
    if op == "scale":
        return s1.scale(s2)
    raise ValueError(f"unknown operation {op!r}")


def degrees(s: CyclicSeries | NcPoly) -> set[tuple[int, int, int]]:
    return s.degrees()
