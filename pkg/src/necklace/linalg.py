"""Exact rank of sparse rational matrices by fraction-free elimination."""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Entry = Union[int, Fraction]
SparseVector = Mapping[int, Entry]


def _integral(vec: SparseVector) -> dict[int, int]:
    den = 1
    for c in vec.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    out = {}
    for k, c in vec.items():
        c = c * den
        if c:
            out[k] = int(c)
    return _primitive(out)


def _primitive(vec: dict[int, int]) -> dict[int, int]:
    g = 0
    for c in vec.values():
        g = gcd(g, c)
        if g == 1:
            return vec
    if g > 1:
        return {k: c // g for k, c in vec.items()}
    return vec


def sparse_rank(vectors: Iterable[SparseVector]) -> int:
    """Rank of the span of sparse vectors ``{coordinate: value}``.

    Each incoming vector is reduced against the current echelon basis with the
    cross-multiplication step ``v <- p*v - v_p*u``, staying in the integers;
    content is divided out after every step to bound coefficient growth.
    """
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for raw in vectors:
        v = _integral(raw)
        while v:
            p = min(v)
            u = pivots.get(p)
            if u is None:
                pivots[p] = v
                rank += 1
                break
            a, b = u[p], v[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            out = {k: a * c for k, c in v.items()}
            for k, c in u.items():
                nc = out.get(k, 0) - b * c
                if nc:
                    out[k] = nc
                else:
                    out.pop(k, None)
            v = _primitive(out)
    return rank


def matrix_rank(rows: list[list[Entry]]) -> int:
    """Rank of a dense matrix given as rows."""
    return sparse_rank({j: c for j, c in enumerate(r) if c} for r in rows)


def determinant(rows: list[list[Entry]]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    m = [[Fraction(c) for c in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return det


def inverse(rows: list[list[Entry]]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan; raises ZeroDivisionError if singular."""
    n = len(rows)
    m = [[Fraction(c) for c in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [r[n:] for r in m]
