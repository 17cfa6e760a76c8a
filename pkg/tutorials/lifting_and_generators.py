"""Generating maps, lifting problems and the small object argument.

Run with ``python3 tutorials/lifting_and_generators.py``.
"""

from pathlib import Path

from accat import (StageBudgetExceeded, find_lift, has_rlp, homology, is_dwyer, is_sieve,
                   nerve, smallness_witness, soa_factorize, thol_generator)
from accat.io import load_chain, load_category, load_functor, load_square

DATA = Path(__file__).parent / "data"

# The generating maps are inclusions of posets.  Each is a sieve with a
# Dwyer witness, and its codomain has the homology of a point.
for kind, n, k in [("I", 0, None), ("I", 2, None), ("J", 2, 1)]:
    g = thol_generator(kind, n, k)
    print(f"{kind} n={n}" + (f" k={k}" if k is not None else ""),
          f"{len(g.source.objects)} -> {len(g.target.objects)} objects,",
          "sieve:", is_sieve(g), "| Dwyer:", bool(is_dwyer(g)),
          "| codomain Betti numbers:", homology(nerve(g.target)).betti)

# A lifting square with a diagonal filler.
square = load_square(DATA / "square_lift.json")
h = find_lift(square)
print("lift found:", h.object_map if h else None)

# Lifting against I up to dimension 1 asks for surjectivity on objects and
# on hom-sets.  Collapsing an arrow has it; a map that misses an object
# does not.
print("arrow -> point has RLP(I, 1):", bool(has_rlp(load_functor(DATA / "arrow_to_point.json"),
                                                     "I", 1)))
miss = load_functor(DATA / "a_in_arrow.json")
verdict = has_rlp(miss, "I", 1)
print("{a} -> arrow has RLP(I, 1):", bool(verdict), "| first failing generator:",
      verdict.generator)

# The small object argument, run for a bounded number of stages.  Each stage
# attaches cells for the squares that have no lift, and the new cells bring
# new squares of their own, so the stage sizes keep growing.
fold = load_functor(DATA / "two_points_to_point.json")
try:
    soa_factorize(fold, "I", max_dim=1, max_stages=3)
except StageBudgetExceeded as exc:
    print("stage sizes:", [len(C.objects) for C in exc.record.categories()])

# Finite categories are small: maps out of the arrow commute with this
# sequential colimit.
cats, funs = load_chain(DATA / "chain.json")
v = smallness_witness(load_category(DATA / "arrow.json"), cats, funs)
print("smallness:", v.colimit_size, "=", v.direct_size, "->", v.bijective)
