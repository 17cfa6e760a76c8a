"""Making categories acyclic, and looking at them through their nerves.

Run with ``python3 tutorials/reflection_and_nerves.py``.
"""

from pathlib import Path

from accat import (are_isomorphic, count_functors, homology, is_acyclic, nerve, reflect, sd,
                   tau1)
from accat.generate import small_acyclic_categories
from accat.io import load_category, load_complex

DATA = Path(__file__).parent / "data"

# The walking isomorphism collapses to a point once cycles are removed.
iso = load_category(DATA / "walking_iso.json")
r = reflect(iso)
print("walking isomorphism reflects to", r.quotient, "in", r.rounds, "round(s)")

# The reflection is universal: functors out of it into an acyclic category
# are exactly the functors out of the original.
for D in small_acyclic_categories(2, 2):
    assert count_functors(r.quotient, D) == count_functors(iso, D)
print("functor counts agree for every acyclic target with at most 2 objects")

# A poset is already acyclic, so its reflection is itself.
arrow = load_category(DATA / "arrow.json")
print("arrow is acyclic:", is_acyclic(arrow), "| reflection unchanged:",
      are_isomorphic(reflect(arrow).quotient, arrow))

# Nerves.  An acyclic category has a finite nerve, and its fundamental
# category gives the category back.
N = nerve(arrow)
print("nerve of the arrow, simplices per dimension:",
      {n: len(s) for n, s in N.simplices.items()})
print("tau_1 of the nerve is the arrow again:", are_isomorphic(tau1(N), arrow))
print("Betti numbers of the nerve:", homology(N).betti)

# Subdivision leaves homology alone.
circle = load_complex(DATA / "circle.json")
print("circle:", homology(circle).betti, "| subdivided twice:", homology(sd(circle, 2)).betti)
