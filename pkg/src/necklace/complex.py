"""Truncated deformation complex of the canonical potential.

Cyclic words of cohomological degree ``n`` and length ``k`` span a finite
piece; d = {W_can, .} maps (n, k) to (n+1, k+1), so the weight ``k - n`` is
preserved and every (n, weight) block is a finite complex.
"""
from __future__ import annotations

import enum
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable

from .bracket import Differential
from .linalg import sparse_rank
from .quiver import ShiftedAlphabet, SymmetricQuiver, canonical_potential, shifted_alphabet, validate_quiver
from .words import Alphabet, CyclicSeries, Word


class SubcomplexError(RuntimeError):
    """d maps a selected basis vector outside the selected target piece."""


class Selector(str, enum.Enum):
    G_CAN = "g_can"   # cyc >= coh + 2
    G = "g"           # cyc < coh + 2
    G_HAT = "g_hat"   # everything

    @classmethod
    def parse(cls, text: "str | Selector") -> "Selector":
        if isinstance(text, Selector):
            return text
        key = text.lower().replace("-", "_")
        aliases = {"gcan": "g_can", "ghat": "g_hat"}
        return cls(aliases.get(key, key))

    def admits(self, n: int, k: int) -> bool:
        if self is Selector.G_CAN:
            return k >= n + 2
        if self is Selector.G:
            return k < n + 2
        return True


@dataclass(frozen=True)
class GradedPiece:
    n: int
    k: int
    selector: Selector
    basis: tuple[Word, ...]
    index: dict[Word, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.basis)


@dataclass
class DiffMatrix:
    source: GradedPiece
    target: GradedPiece
    columns: list[dict[int, Fraction]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def rank(self) -> int:
        return sparse_rank(self.columns)

    def dense(self) -> list[list[Fraction]]:
        rows = [[Fraction(0)] * len(self.source) for _ in range(len(self.target))]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                rows[i][j] = c
        return rows


@dataclass
class CohomologyReport:
    selector: Selector
    blocks: list[dict[str, int]]

    def to_json(self) -> dict[str, Any]:
        return {"selector": self.selector.value, "blocks": self.blocks}

    def dims(self) -> dict[tuple[int, int], int]:
        return {(b["n"], b["w"]): b["dim_H"] for b in self.blocks}


class DeformationComplex:
    """Bases and differential matrices for a fixed alphabet and potential."""

    def __init__(self, alphabet: ShiftedAlphabet | Alphabet, potential: CyclicSeries | None = None):
        if isinstance(alphabet, ShiftedAlphabet):
            if potential is None:
                potential = canonical_potential(alphabet)
            alphabet = alphabet.alphabet
        if potential is None:
            raise ValueError("a potential is required for a bare alphabet")
        self.alphabet = alphabet
        self.potential = potential
        self.d = Differential(potential)
        self._words: dict[int, dict[int, list[Word]]] = {}
        self._ranks: dict[tuple[int, int, Selector], int] = {}

    def cyclic_words(self, k: int) -> dict[int, list[Word]]:
        """Nonzero canonical cyclic words of length k, grouped by coh degree."""
        hit = self._words.get(k)
        if hit is not None:
            return hit
        a = self.alphabet
        nl = len(a)
        out: dict[int, list[Word]] = {}
        word: list[int] = []

        def extend(coh: int) -> None:
            if len(word) == k:
                w = tuple(word)
                if a.dst[w[-1]] == a.src[w[0]]:
                    rep, sign = a.canonical(w)
                    if sign and rep == w:
                        out.setdefault(coh, []).append(w)
                return
            first = word[0]
            last = word[-1]
            for z in range(first, nl):
                if a.src[z] == a.dst[last]:
                    word.append(z)
                    extend(coh + a.deg[z])
                    word.pop()

        for s in range(nl):
            word.append(s)
            extend(a.deg[s])
            word.pop()
        self._words[k] = out
        return out

    def basis(self, n: int, k: int, selector: Selector | str = Selector.G_HAT) -> GradedPiece:
        sel = Selector.parse(selector)
        if k < 1:
            raise ValueError("cyclic degree must be at least 1")
        words = tuple(self.cyclic_words(k).get(n, ())) if sel.admits(n, k) else ()
        return GradedPiece(n, k, sel, words, {w: i for i, w in enumerate(words)})

    def matrix(self, n: int, k: int, selector: Selector | str = Selector.G_HAT) -> DiffMatrix:
        sel = Selector.parse(selector)
        src = self.basis(n, k, sel)
        tgt = self.basis(n + 1, k + 1, sel)
        a = self.alphabet
        columns = []
        for w in src.basis:
            col: dict[int, Fraction] = {}
            for v, c in self.d.on_word(w).items():
                if a.coh(v) != n + 1 or len(v) != k + 1:
                    raise AssertionError(f"d broke the degree law on {a.names(w)}")
                i = tgt.index.get(v)
                if i is None:
                    raise SubcomplexError(
                        f"d({' '.join(a.names(w))}) leaves {sel.value} at ({n + 1}, {k + 1})")
                col[i] = c
            columns.append(col)
        return DiffMatrix(src, tgt, columns)

    def rank(self, n: int, k: int, selector: Selector | str = Selector.G_HAT) -> int:
        sel = Selector.parse(selector)
        key = (n, k, sel)
        if key not in self._ranks:
            self._ranks[key] = self.matrix(n, k, sel).rank() if k >= 1 else 0
        return self._ranks[key]

    def block(self, n: int, w: int, selector: Selector | str = Selector.G_HAT) -> dict[str, int]:
        sel = Selector.parse(selector)
        k = n + w
        dim = len(self.basis(n, k, sel)) if k >= 1 else 0
        rank_out = self.rank(n, k, sel) if dim else 0
        rank_in = self.rank(n - 1, k - 1, sel) if k - 1 >= 1 else 0
        ker = dim - rank_out
        return {"n": n, "w": w, "dim_domain": dim, "dim_ker": ker, "rank_in": rank_in, "dim_H": ker - rank_in}


_WORKER: dict[str, DeformationComplex] = {}


def _rank_job(args: tuple[str, int, int, str]) -> tuple[tuple[int, int, str], int]:
    qjson, n, k, sel = args
    cx = _WORKER.get(qjson)
    if cx is None:
        cx = _WORKER[qjson] = DeformationComplex(shifted_alphabet(validate_quiver(json.loads(qjson))))
    return (n, k, sel), cx.rank(n, k, sel)


def _threads(threads: int | None) -> int:
    if threads is not None:
        return max(1, threads)
    try:
        return max(1, int(os.environ.get("NECKLACE_THREADS", "1")))
    except ValueError:
        return 1


def _complex_of(sa: ShiftedAlphabet | DeformationComplex) -> DeformationComplex:
    return sa if isinstance(sa, DeformationComplex) else DeformationComplex(sa)


def enumerate_basis(sa: ShiftedAlphabet | DeformationComplex, n: int, k: int,
                    selector: Selector | str = Selector.G_HAT) -> GradedPiece:
    return _complex_of(sa).basis(n, k, selector)


def differential_matrix(sa: ShiftedAlphabet | DeformationComplex, n: int, k: int,
                        selector: Selector | str = Selector.G_HAT) -> DiffMatrix:
    return _complex_of(sa).matrix(n, k, selector)


def cohomology_scan(sa: ShiftedAlphabet | DeformationComplex, selector: Selector | str,
                    n_range: Iterable[int], w_max: int, w_min: int = 0,
                    threads: int | None = None) -> CohomologyReport:
    """dim H at every (n, w) with w_min <= w <= w_max, by exact ranks.

    Ranks of distinct blocks are independent; with more than one worker
    (``threads`` or ``NECKLACE_THREADS``) they are computed in subprocesses.
    Output order does not depend on the worker count.
    """
    sel = Selector.parse(selector)
    cx = _complex_of(sa)
    ns = list(n_range)
    cells = [(n, w) for n in ns for w in range(w_min, w_max + 1)]
    workers = _threads(threads)
    if workers > 1 and isinstance(sa, ShiftedAlphabet):
        qjson = json.dumps(sa.quiver.to_json(), sort_keys=True)
        jobs = set()
        for n, w in cells:
            k = n + w
            if k >= 1 and cx.basis(n, k, sel).basis:
                jobs.add((n, k))
            if k - 1 >= 1 and cx.basis(n - 1, k - 1, sel).basis:
                jobs.add((n - 1, k - 1))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for (n, k, _), r in pool.map(_rank_job, [(qjson, n, k, sel.value) for n, k in sorted(jobs)]):
                cx._ranks[(n, k, sel)] = r
    return CohomologyReport(sel, [cx.block(n, w, sel) for n, w in cells])


def decomposition_check(sa: ShiftedAlphabet | DeformationComplex, n_range: Iterable[int],
                        k_max: int) -> dict[str, Any]:
    """Check g_hat = g_can (+) g piecewise, closure of both under d, and that
    words without alpha letters have non-positive cohomological degree."""
    cx = _complex_of(sa)
    a = cx.alphabet
    alphas = {i for i, v in enumerate(a.variables) if v.kind == "alpha"}
    split_failures: list[dict[str, int]] = []
    closure_failures: list[dict[str, Any]] = []
    positive_words: list[list[str]] = []
    pieces = 0
    for n in n_range:
        for k in range(1, k_max + 1):
            pieces += 1
            full = cx.basis(n, k, Selector.G_HAT).basis
            can = cx.basis(n, k, Selector.G_CAN).basis
            rest = cx.basis(n, k, Selector.G).basis
            if set(can) & set(rest) or set(can) | set(rest) != set(full) or len(can) + len(rest) != len(full):
                split_failures.append({"n": n, "k": k})
            for sel in (Selector.G_CAN, Selector.G):
                try:
                    cx.matrix(n, k, sel)
                except SubcomplexError as exc:
                    closure_failures.append({"n": n, "k": k, "selector": sel.value, "detail": str(exc)})
            if n > 0:
                positive_words.extend(a.names(w) for w in full if not alphas.intersection(w))
    failures = len(split_failures) + len(closure_failures) + len(positive_words)
    return {
        "pieces": pieces,
        "split_failures": split_failures,
        "closure_failures": closure_failures,
        "positive_alpha_free_words": positive_words,
        "status": "pass" if failures == 0 else "fail",
    }


def shuffled_rank(matrix: DiffMatrix, seed: int = 0) -> int:
    """Rank after randomly permuting both bases (basis-order independence check)."""
    rng = random.Random(seed)
    rows = list(range(len(matrix.target)))
    rng.shuffle(rows)
    cols = list(matrix.columns)
    rng.shuffle(cols)
    return sparse_rank({rows[i]: c for i, c in col.items()} for col in cols)
