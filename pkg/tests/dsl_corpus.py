"""Deterministic corpus of potential documents for the round-trip checks."""
import random
from fractions import Fraction

from necklace.conventions import random_homogeneous
from necklace.dsl import print_potential
from necklace.quiver import canonical_potential, shifted_alphabet, single_vertex_quiver
from necklace.words import CyclicSeries

from conftest import random_symmetric_quiver

HAND_WRITTEN = [
    "var alpha : deg 1 dual beta;\nvar beta : deg -1 dual alpha;\ncyc(alpha*alpha*beta)\n",
    "var t : deg 0;\n0\n",
    "var t : deg 0;\ncyc()\n",
    "var t : deg 0;\n-2/3*cyc() + cyc(t*t*t)\n",
    "# comments are skipped\nvar p : deg 2 @ a -> a;\nvar q : deg -2 @ a -> a;\ncyc(p*q) - 5*cyc(p*p*q*q)\n",
    "var u : deg 0 @ 1 -> 2 dual v;\nvar v : deg 0 @ 2 -> 1 dual u;\n"
    "var a1 : deg 1 @ 1 -> 1 dual b1;\nvar b1 : deg -1 @ 1 -> 1 dual a1;\n"
    "var a2 : deg 1 @ 2 -> 2 dual b2;\nvar b2 : deg -1 @ 2 -> 2 dual a2;\n"
    "cyc(a1*u*v) - cyc(a2*v*u) + 7/2*cyc(u*v*u*v)\n",
    "var α : deg 1 dual β;\nvar β : deg -1 dual α;\nvar x₁ : deg 0 dual ξ₁;\nvar ξ₁ : deg 0 dual x₁;\n"
    "cyc(α*α*β) + cyc(α*x₁*ξ₁) - cyc(α*ξ₁*x₁)\n",
    "var z : deg 3;\nvar w : deg 0;\ncyc(z*w) + cyc(w*z*w) - 1/7*cyc(z*z*w)\n",
]


def _random_doc(rng: random.Random) -> str:
    sa = shifted_alphabet(random_symmetric_quiver(rng, max_vertices=3, max_arrows=6))
    a = sa.alphabet
    s = CyclicSeries(a)
    for _ in range(rng.randint(0, 3)):
        piece = random_homogeneous(a, rng.randint(-1, 2), rng.randint(1, 4), rng)
        s = s + piece.scale(Fraction(rng.randint(-9, 9), rng.randint(1, 6)))
    return print_potential(s)


def corpus() -> list[str]:
    rng = random.Random(2024)
    docs = list(HAND_WRITTEN)
    docs += [print_potential(canonical_potential(single_vertex_quiver(n))) for n in range(0, 5)]
    while len(docs) < 50:
        doc = _random_doc(rng)
        if doc not in docs:
            docs.append(doc)
    return docs
