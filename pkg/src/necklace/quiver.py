"""Symmetric quivers, the map from Ext data, and canonical potentials."""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Mapping, Sequence

from .bracket import BracketConvention, DEFAULT_CONVENTION, master_residual
from .words import Alphabet, CyclicSeries, GradedVariable


class QuiverError(ValueError):
    """Invalid quiver or Ext data; ``code`` names the violated constraint."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


class PotentialError(RuntimeError):
    """A constructed potential failed its master-equation certificate."""


@dataclass(frozen=True)
class Arrow:
    id: str
    src: str
    dst: str

    @property
    def is_loop(self) -> bool:
        return self.src == self.dst


@dataclass(frozen=True)
class SymmetricQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    involution: tuple[tuple[str, str], ...]

    def arrow(self, aid: str) -> Arrow:
        for a in self.arrows:
            if a.id == aid:
                return a
        raise KeyError(aid)

    def to_json(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"id": a.id, "src": a.src, "dst": a.dst} for a in self.arrows],
            "involution": [list(p) for p in self.involution],
        }


@dataclass(frozen=True)
class ExtData:
    generators: tuple[str, ...]
    ext1_dim: tuple[tuple[int, ...], ...]

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[int]], generators: Sequence[str] | None = None) -> "ExtData":
        if generators is None:
            generators = [str(i + 1) for i in range(len(matrix))]
        return cls(tuple(str(g) for g in generators), tuple(tuple(row) for row in matrix))


def _ident(value: Any) -> str:
    # ids are JSON strings or integers
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise TypeError(value)
    return str(value)


def validate_quiver(raw: Mapping[str, Any] | SymmetricQuiver) -> SymmetricQuiver:
    """Check a raw quiver description (the quiver JSON shape) and freeze it."""
    if isinstance(raw, SymmetricQuiver):
        raw = raw.to_json()
    try:
        vertices = tuple(_ident(v) for v in raw["vertices"])
        arrows = tuple(Arrow(_ident(a["id"]), _ident(a["src"]), _ident(a["dst"])) for a in raw["arrows"])
        involution = tuple((_ident(p[0]), _ident(p[1])) for p in raw["involution"])
        if any(len(p) != 2 for p in raw["involution"]):
            raise ValueError
    except (KeyError, TypeError, ValueError, IndexError):
        raise QuiverError("malformed", "quiver needs vertices, arrows[{id,src,dst}] and involution pairs") from None
    if not vertices:
        raise QuiverError("malformed", "quiver has no vertices")
    if len(set(vertices)) != len(vertices):
        raise QuiverError("duplicate_id", "duplicate vertex id")
    ids = [a.id for a in arrows]
    if len(set(ids)) != len(ids):
        raise QuiverError("duplicate_id", "duplicate arrow id")
    vset = set(vertices)
    for a in arrows:
        if a.src not in vset or a.dst not in vset:
            raise QuiverError("unknown_vertex", f"arrow {a.id} uses an undeclared vertex")

    counts = Counter((a.src, a.dst) for a in arrows)
    for (i, j), c in counts.items():
        if counts.get((j, i), 0) != c:
            raise QuiverError("not_symmetric", f"{c} arrow(s) {i}->{j} but {counts.get((j, i), 0)} {j}->{i}")
    for v in vertices:
        if counts.get((v, v), 0) % 2:
            raise QuiverError("odd_loops", f"vertex {v} has an odd number of loops")

    by_id = {a.id: a for a in arrows}
    seen: set[str] = set()
    for x, y in involution:
        if x not in by_id or y not in by_id:
            raise QuiverError("bad_involution", f"involution pair ({x}, {y}) names an unknown arrow")
        if x == y:
            raise QuiverError("bad_involution", f"arrow {x} is paired with itself")
        if x in seen or y in seen:
            raise QuiverError("bad_involution", f"arrow paired twice in ({x}, {y})")
        seen.update((x, y))
        ax, ay = by_id[x], by_id[y]
        if (ax.src, ax.dst) != (ay.dst, ay.src):
            raise QuiverError("bad_involution", f"({x}, {y}) does not reverse endpoints")
    if seen != set(by_id):
        missing = sorted(set(by_id) - seen)
        raise QuiverError("bad_involution", f"arrows not covered by the involution: {', '.join(missing)}")
    return SymmetricQuiver(vertices, arrows, involution)


def load_quiver(text: str) -> SymmetricQuiver:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise QuiverError("malformed", f"invalid JSON: {exc}") from None
    if not isinstance(raw, dict):
        raise QuiverError("malformed", "quiver JSON must be an object")
    return validate_quiver(raw)


def phi_from_ext(ext: ExtData) -> SymmetricQuiver:
    """Quiver with dim Ext^1(E_i, E_j) arrows i -> j.

    Loops at a vertex are paired first half with second half; cross arrows
    i -> j (i before j) are paired with the arrows j -> i in order.
    """
    gens = ext.generators
    m = ext.ext1_dim
    n = len(gens)
    if len(m) != n or any(len(row) != n for row in m):
        raise QuiverError("malformed", "ext1_dim must be a square matrix matching the generators")
    if len(set(gens)) != n:
        raise QuiverError("duplicate_id", "duplicate generator")
    for row in m:
        for c in row:
            if not isinstance(c, int) or isinstance(c, bool) or c < 0:
                raise QuiverError("malformed", "ext1_dim entries must be nonnegative integers")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise QuiverError("not_symmetric", f"dim Ext^1 differs between ({gens[i]},{gens[j]}) and ({gens[j]},{gens[i]})")
    for i in range(n):
        if m[i][i] % 2:
            raise QuiverError("odd_diagonal", f"dim Ext^1({gens[i]},{gens[i]}) = {m[i][i]} is odd")

    arrows: list[Arrow] = []
    involution: list[tuple[str, str]] = []
    for i, v in enumerate(gens):
        loops = [Arrow(f"l{v}_{k + 1}", v, v) for k in range(m[i][i])]
        arrows.extend(loops)
        half = len(loops) // 2
        involution.extend((loops[k].id, loops[k + half].id) for k in range(half))
    for i, v in enumerate(gens):
        for j in range(i + 1, n):
            w = gens[j]
            fwd = [Arrow(f"e{v}_{w}_{k + 1}", v, w) for k in range(m[i][j])]
            bwd = [Arrow(f"e{w}_{v}_{k + 1}", w, v) for k in range(m[j][i])]
            arrows.extend(fwd)
            arrows.extend(bwd)
            involution.extend((a.id, b.id) for a, b in zip(fwd, bwd))
    return validate_quiver(SymmetricQuiver(tuple(gens), tuple(arrows), tuple(involution)))


def ext_of(q: SymmetricQuiver) -> ExtData:
    """Arrow-count matrix of a quiver, read back as Ext data."""
    pos = {v: i for i, v in enumerate(q.vertices)}
    m = [[0] * len(q.vertices) for _ in q.vertices]
    for a in q.arrows:
        m[pos[a.src]][pos[a.dst]] += 1
    return ExtData.from_matrix(m, q.vertices)


@dataclass(frozen=True, eq=False)
class ShiftedAlphabet:
    """Graded coordinates of a quiver together with their provenance."""

    quiver: SymmetricQuiver
    alphabet: Alphabet
    alpha: dict[str, str] = field(default_factory=dict)   # vertex -> variable name
    beta: dict[str, str] = field(default_factory=dict)
    arrow_var: dict[str, str] = field(default_factory=dict)  # arrow id -> variable name
    pairs: tuple[tuple[str, str], ...] = ()  # (positive, negative) variable names

    def __getattr__(self, name: str):
        # forward Alphabet behaviour (word, names, index, ...)
        if name in ("quiver", "alphabet", "alpha", "beta", "arrow_var", "pairs"):
            raise AttributeError(name)
        return getattr(self.alphabet, name)


def shifted_alphabet(q: SymmetricQuiver) -> ShiftedAlphabet:
    """alpha_v (deg 1), beta_v (deg -1) per vertex and a degree-0 letter per arrow.

    Names: ``alpha``/``beta`` for a single vertex, ``alpha_<v>``/``beta_<v>``
    otherwise; loop pairs become ``x<k>``/``xi<k>``, cross pairs ``a<k>``/``astar<k>``.
    """
    single = len(q.vertices) == 1
    variables: list[GradedVariable] = []
    alpha: dict[str, str] = {}
    beta: dict[str, str] = {}
    for v in q.vertices:
        an, bn = ("alpha", "beta") if single else (f"alpha_{v}", f"beta_{v}")
        alpha[v], beta[v] = an, bn
        variables.append(GradedVariable(an, 1, v, v, "alpha", bn))
        variables.append(GradedVariable(bn, -1, v, v, "beta", an))
    arrow_var: dict[str, str] = {}
    pairs: list[tuple[str, str]] = []
    n_loop = n_cross = 0
    for x, y in q.involution:
        ax, ay = q.arrow(x), q.arrow(y)
        if ax.is_loop:
            n_loop += 1
            px, py = f"x{n_loop}", f"xi{n_loop}"
        else:
            n_cross += 1
            px, py = f"a{n_cross}", f"astar{n_cross}"
        arrow_var[x], arrow_var[y] = px, py
        pairs.append((px, py))
        variables.append(GradedVariable(px, 0, ax.src, ax.dst, "arrow", py))
        variables.append(GradedVariable(py, 0, ay.src, ay.dst, "arrow", px))
    return ShiftedAlphabet(q, Alphabet(variables), alpha, beta, arrow_var, tuple(pairs))


def single_vertex_quiver(n: int) -> SymmetricQuiver:
    """One vertex with n loop pairs (2n loops)."""
    return phi_from_ext(ExtData.from_matrix([[2 * n]], ["1"]))


def canonical_potential(q: SymmetricQuiver | ShiftedAlphabet,
                        convention: BracketConvention = DEFAULT_CONVENTION) -> CyclicSeries:
    """Sum_v alpha_v^2 beta_v + sum over pairs (a, a*) of alpha_s a a* - alpha_t a* a.

    For a single vertex this is alpha^2 beta + sum_i (alpha x_i xi_i - alpha xi_i x_i).
    The result is certified against {W, W} = 0 before it is returned.
    """
    sa = q if isinstance(q, ShiftedAlphabet) else shifted_alphabet(q)
    a = sa.alphabet
    terms: dict[tuple[int, ...], int] = {}
    for v in sa.quiver.vertices:
        terms[a.word(sa.alpha[v], sa.alpha[v], sa.beta[v])] = 1
    for x, y in sa.pairs:
        vx = a.var(a[x])
        terms[a.word(sa.alpha[vx.source], x, y)] = 1
        terms[a.word(sa.alpha[vx.target], y, x)] = -1
    W = CyclicSeries(a, terms)
    residual = master_residual(W, convention)
    if residual:
        raise PotentialError(f"canonical potential fails the master equation: {residual!r}")
    return W
