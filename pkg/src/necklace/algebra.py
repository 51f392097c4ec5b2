"""The graded algebra encoded by a cubic potential, and its checks.

Each coordinate ``z`` has a dual basis vector of Ext^{1 - coh(z)}: ``alpha``
gives the unit ``e``, ``beta`` the top class ``omega``, arrows give Ext^1
classes (labelled by the arrow's coordinate name).  Structure constants are
read off the cyclically expanded potential T:

    <m2(a, b), c> = kappa * (-1)^{|b|} * T(z_a z_b z_c)

with the pairing <basis(z), basis(z*)> = -{z, z*} and ``kappa`` fixed so that
``e`` is a unit.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any

from .bracket import BracketConvention, DEFAULT_CONVENTION, master_residual
from .linalg import determinant, inverse
from .quiver import ShiftedAlphabet
from .words import Alphabet, CyclicSeries, Word, rotation_sign


class AlgebraError(ValueError):
    pass


Vector = dict[int, Fraction]


@dataclass
class AlgebraTable:
    basis: list[str]
    degree: list[int]
    product: dict[tuple[int, int], Vector]
    pairing: list[list[Fraction]]
    units: list[int] = field(default_factory=list)

    def label(self, i: int) -> str:
        return self.basis[i]

    def mul(self, a: Vector, b: Vector) -> Vector:
        out: Vector = {}
        for i, ci in a.items():
            for j, cj in b.items():
                for k, ck in self.product.get((i, j), {}).items():
                    out[k] = out.get(k, 0) + ci * cj * ck
        return {k: c for k, c in out.items() if c}

    def pair(self, a: Vector, b: Vector) -> Fraction:
        return sum((ca * cb * self.pairing[i][j] for i, ca in a.items() for j, cb in b.items()), Fraction(0))

    def unit(self) -> Vector:
        return {i: Fraction(1) for i in self.units}

    def to_json(self) -> dict[str, Any]:
        prod = []
        for (i, j), vec in sorted(self.product.items()):
            for k, c in sorted(vec.items()):
                prod.append({"a": self.basis[i], "b": self.basis[j], "c": self.basis[k], "coeff": str(c)})
        return {
            "basis": [{"label": b, "degree": d} for b, d in zip(self.basis, self.degree)],
            "product": prod,
            "pairing": [[str(c) for c in row] for row in self.pairing],
        }


def _labels(alphabet: Alphabet) -> list[str]:
    single = sum(v.kind == "alpha" for v in alphabet) == 1
    out = []
    for v in alphabet:
        if v.kind == "arrow":
            out.append(v.name)
        else:
            base = "e" if v.kind == "alpha" else "omega"
            out.append(base if single else f"{base}_{v.source}")
    return out


def cyclic_expansion(W: CyclicSeries) -> dict[Word, Fraction]:
    """Expand every cyclic class into the signed sum of all its rotations."""
    a = W.alphabet
    out: dict[Word, Fraction] = {}
    for w, c in W.terms.items():
        for r in range(len(w)):
            rot = w[r:] + w[:r]
            out[rot] = out.get(rot, 0) + rotation_sign(a, w, r) * c
    return {w: c for w, c in out.items() if c}


def extract_algebra(W: CyclicSeries, alphabet: ShiftedAlphabet | Alphabet | None = None,
                    convention: BracketConvention = DEFAULT_CONVENTION) -> AlgebraTable:
    """Structure constants and pairing of the algebra defined by a cubic potential."""
    a = W.alphabet
    if alphabet is not None:
        given = alphabet.alphabet if isinstance(alphabet, ShiftedAlphabet) else alphabet
        if given != a:
            raise AlgebraError("potential and alphabet disagree")
    if any(len(w) != 3 for w in W.terms):
        raise AlgebraError("potential is not cubic")
    if master_residual(W, convention):
        raise AlgebraError("potential fails {W, W} = 0")
    n = len(a)
    if any(d < 0 for d in a.dual):
        raise AlgebraError("every coordinate needs a dual to assemble the pairing")
    deg = [1 - d for d in a.deg]
    pairing = [[Fraction(0)] * n for _ in range(n)]
    for z in range(n):
        pairing[z][a.dual[z]] = Fraction(-convention.omega(a, z))
    T = cyclic_expansion(W)
    units = [i for i, v in enumerate(a.variables) if v.kind == "alpha"]
    if not units:
        raise AlgebraError("alphabet has no unit coordinate")
    e = units[0]
    top = a.dual[e]
    t_eee = T.get((e, e, top), 0)
    if not t_eee:
        raise AlgebraError("no normalization makes e a unit: coefficient of alpha^2 beta vanishes")
    kappa = pairing[e][top] / t_eee
    inv = inverse(pairing)
    prod: dict[tuple[int, int], Vector] = {}
    for i, j in product(range(n), repeat=2):
        vals = {c: kappa * (-1 if deg[j] & 1 else 1) * T.get((i, j, c), 0) for c in range(n)}
        vals = {c: v for c, v in vals.items() if v}
        if not vals:
            continue
        vec: Vector = {}
        for c, v in vals.items():
            for d in range(n):
                if inv[c][d]:
                    vec[d] = vec.get(d, 0) + v * inv[c][d]
        vec = {d: x for d, x in vec.items() if x}
        if vec:
            prod[(i, j)] = vec
    table = AlgebraTable(_labels(a), deg, prod, pairing, units)
    unit_report = _unit_failures(table)
    if unit_report:
        raise AlgebraError(f"no normalization makes e a unit: {unit_report[0]}")
    return table


def _basis_vec(i: int) -> Vector:
    return {i: Fraction(1)}


def _show(table: AlgebraTable, v: Vector) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{table.basis[i]}" for i, c in sorted(v.items()))


def _unit_failures(table: AlgebraTable) -> list[str]:
    u = table.unit()
    bad = []
    for z in range(len(table.basis)):
        zv = _basis_vec(z)
        left, right = table.mul(u, zv), table.mul(zv, u)
        if left != zv:
            bad.append(f"e*{table.basis[z]} = {_show(table, left)}")
        if right != zv:
            bad.append(f"{table.basis[z]}*e = {_show(table, right)}")
    return bad


def check_unit_assoc(table: AlgebraTable) -> dict[str, Any]:
    """Two-sided unit and associativity over every basis triple."""
    unit = _unit_failures(table) if table.units else ["table has no unit"]
    assoc = []
    n = len(table.basis)
    for i, j, k in product(range(n), repeat=3):
        a, b, c = _basis_vec(i), _basis_vec(j), _basis_vec(k)
        lhs = table.mul(table.mul(a, b), c)
        rhs = table.mul(a, table.mul(b, c))
        if lhs != rhs:
            assoc.append(f"({table.basis[i]}{table.basis[j]}){table.basis[k]} = {_show(table, lhs)}"
                         f" but {table.basis[i]}({table.basis[j]}{table.basis[k]}) = {_show(table, rhs)}")
    return {
        "unit_failures": unit,
        "associativity_failures": assoc,
        "triples": n ** 3,
        "status": "pass" if not unit and not assoc else "fail",
    }


def check_cy_pairing(table: AlgebraTable) -> dict[str, Any]:
    """Nondegeneracy, invariance <ab, c> = <a, bc>, and an antisymmetric Ext^1 block."""
    n = len(table.basis)
    det = determinant(table.pairing)
    invariance = []
    for i, j, k in product(range(n), repeat=3):
        a, b, c = _basis_vec(i), _basis_vec(j), _basis_vec(k)
        lhs = table.pair(table.mul(a, b), c)
        rhs = table.pair(a, table.mul(b, c))
        if lhs != rhs:
            invariance.append(f"<{table.basis[i]}{table.basis[j]},{table.basis[k]}> = {lhs}"
                              f" but <{table.basis[i]},{table.basis[j]}{table.basis[k]}> = {rhs}")
    grading = []
    for i, j in product(range(n), repeat=2):
        if table.pairing[i][j] and table.degree[i] + table.degree[j] != 2:
            grading.append(f"<{table.basis[i]},{table.basis[j]}> pairs degrees {table.degree[i]} and {table.degree[j]}")
    ext1 = [i for i in range(n) if table.degree[i] == 1]
    block = [[table.pairing[i][j] for j in ext1] for i in ext1]
    antisym = all(block[r][s] == -block[s][r] for r in range(len(ext1)) for s in range(len(ext1)))
    ok = det != 0 and not invariance and not grading and antisym
    return {
        "determinant": str(det),
        "nondegenerate": det != 0,
        "invariance_failures": invariance,
        "grading_failures": grading,
        "ext1_labels": [table.basis[i] for i in ext1],
        "ext1_block": [[str(c) for c in row] for row in block],
        "ext1_antisymmetric": antisym,
        "status": "pass" if ok else "fail",
    }


def grading_violations(table: AlgebraTable) -> list[tuple[str, str, str]]:
    """Nonzero structure constants c_ab^c with deg a + deg b != deg c."""
    out = []
    for (i, j), vec in table.product.items():
        for k in vec:
            if table.degree[i] + table.degree[j] != table.degree[k]:
                out.append((table.basis[i], table.basis[j], table.basis[k]))
    return out
