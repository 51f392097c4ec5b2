"""Cyclic derivatives, the necklace bracket and the Hamiltonian differential."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .words import Alphabet, AlphabetError, CyclicSeries, NcPoly, PathError, Word


class MasterEquationError(ValueError):
    """A reference potential does not satisfy {W, W} = 0."""


@dataclass(frozen=True)
class BracketConvention:
    """Sign data of the bracket.

    ``arrow_sign`` is the value of {a, a*} for a dual pair of even letters
    (the degree-0 arrows), with ``a`` the earlier of the two in the alphabet
    order; {a*, a} is its negative.  ``unit_sign`` is {z, z*} = {z*, z} for an
    odd pair such as (alpha_v, beta_v); graded antisymmetry makes it symmetric.

    Derivatives rotate the chosen letter to the front; the bracket glues
    ``df/dz`` followed by ``dg/dz*`` and closes the result into a cycle, with
    the Koszul sign of moving ``z*`` past ``df/dz``.
    """

    arrow_sign: int = 1
    unit_sign: int = -1

    def omega(self, alphabet: Alphabet, z: int) -> int:
        """The constant {z, dual(z)}."""
        if alphabet.parity[z]:
            return self.unit_sign
        return self.arrow_sign if z < alphabet.dual[z] else -self.arrow_sign


DEFAULT_CONVENTION = BracketConvention()


def _derivative_terms(series: CyclicSeries) -> dict[int, list[tuple[Word, Fraction]]]:
    """For every letter z, the list of (rest, coeff) making up dS/dz."""
    par = series.alphabet.parity
    out: dict[int, list[tuple[Word, Fraction]]] = {}
    for word, c in series.terms.items():
        total = 0
        for z in word:
            total ^= par[z]
        head = 0
        for i, z in enumerate(word):
            sign = -1 if head & (total ^ head) else 1
            out.setdefault(z, []).append((word[i + 1:] + word[:i], sign * c))
            head ^= par[z]
    return out


def cyclic_derivative(series: CyclicSeries, z: int | str) -> NcPoly:
    """Sum over occurrences of ``z``: rotate it to the front, then delete it."""
    a = series.alphabet
    if isinstance(z, str):
        if z not in a.index:
            raise AlphabetError(f"unknown variable {z!r}")
        z = a.index[z]
    acc: dict[Word, Fraction] = {}
    for rest, c in _derivative_terms(series).get(z, []):
        acc[rest] = acc.get(rest, 0) + c
    return NcPoly(a, acc)


def close_cycle(poly: NcPoly) -> CyclicSeries:
    """Trace closure: read every word of a polynomial as a cyclic word."""
    for w in poly.terms:
        if not poly.alphabet.is_composable(w, closed=True):
            raise PathError(f"not a closed path: {' '.join(poly.alphabet.names(w))}")
    return CyclicSeries(poly.alphabet, poly.terms)


def necklace_bracket(f: CyclicSeries, g: CyclicSeries,
                     convention: BracketConvention = DEFAULT_CONVENTION) -> CyclicSeries:
    """{f, g} = sum_z omega(z) (-1)^{|z*| |df/dz|} [df/dz . dg/dz*]."""
    if f.alphabet != g.alphabet:
        raise AlphabetError("bracket of series over different alphabets")
    a = f.alphabet
    par = a.parity
    df = _derivative_terms(f)
    dg = _derivative_terms(g)
    acc: dict[Word, Fraction] = {}
    for z, f_rests in df.items():
        zs = a.dual[z]
        g_rests = dg.get(zs) if zs >= 0 else None
        if not g_rests:
            continue
        om = convention.omega(a, z)
        for F, cf in f_rests:
            pf = 0
            for y in F:
                pf ^= par[y]
            base = om * cf * (-1 if pf & par[zs] else 1)
            for G, cg in g_rests:
                rep, sign = a.canonical(F + G)
                if sign:
                    acc[rep] = acc.get(rep, 0) + sign * base * cg
    return CyclicSeries(a, {w: c for w, c in acc.items() if c}, _trusted=True)


def master_residual(W: CyclicSeries, convention: BracketConvention = DEFAULT_CONVENTION) -> CyclicSeries:
    """{W, W}; empty exactly when W solves the master equation."""
    return necklace_bracket(W, W, convention)


class Differential:
    """d = {W, .} for a fixed Maurer-Cartan potential W.

    The derivatives of W are tabulated once per letter, so applying d to a
    word only walks the word's occurrences.
    """

    def __init__(self, W: CyclicSeries, convention: BracketConvention = DEFAULT_CONVENTION,
                 check: bool = True):
        if check and master_residual(W, convention):
            raise MasterEquationError("reference potential fails {W, W} = 0")
        self.W = W
        self.alphabet = W.alphabet
        self.convention = convention
        a = self.alphabet
        par = a.parity
        self._table: dict[int, list[tuple[Word, Fraction]]] = {}
        for z, rests in _derivative_terms(W).items():
            y = a.dual[z]
            if y < 0:
                continue
            om = convention.omega(a, z)
            row = self._table.setdefault(y, [])
            for F, c in rests:
                pf = 0
                for t in F:
                    pf ^= par[t]
                row.append((F, om * c * (-1 if pf & par[y] else 1)))
        self._word_cache: dict[Word, dict[Word, Fraction]] = {}

    def on_word(self, word: Word) -> dict[Word, Fraction]:
        """d applied to the cyclic word ``word`` (canonical coordinates)."""
        hit = self._word_cache.get(word)
        if hit is not None:
            return hit
        a = self.alphabet
        par = a.parity
        total = 0
        for z in word:
            total ^= par[z]
        acc: dict[Word, Fraction] = {}
        head = 0
        for j, y in enumerate(word):
            row = self._table.get(y)
            if row:
                sg = -1 if head & (total ^ head) else 1
                G = word[j + 1:] + word[:j]
                for F, c in row:
                    rep, sign = a.canonical(F + G)
                    if sign:
                        acc[rep] = acc.get(rep, 0) + sign * sg * c
            head ^= par[y]
        out = {w: c for w, c in acc.items() if c}
        self._word_cache[word] = out
        return out

    def __call__(self, f: CyclicSeries) -> CyclicSeries:
        if f.alphabet != self.alphabet:
            raise AlphabetError("series and potential use different alphabets")
        acc: dict[Word, Fraction] = {}
        for w, c in f.terms.items():
            for v, e in self.on_word(w).items():
                acc[v] = acc.get(v, 0) + c * e
        return CyclicSeries(self.alphabet, {w: c for w, c in acc.items() if c}, _trusted=True)


@lru_cache(maxsize=64)
def _differential_for(W: CyclicSeries, convention: BracketConvention) -> Differential:
    return Differential(W, convention)


def differential_d(W_ref: CyclicSeries, f: CyclicSeries,
                   convention: BracketConvention = DEFAULT_CONVENTION) -> CyclicSeries:
    """{W_ref, f}; W_ref is checked against the master equation once and cached."""
    return _differential_for(W_ref, convention)(f)
