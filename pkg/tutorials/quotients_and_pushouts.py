"""Quotients, coequalizers and pushouts of finite categories.

Run with ``python3 tutorials/quotients_and_pushouts.py``.
"""

from pathlib import Path

from accat import (FinCat, FinFunctor, GrowthExceeded, RelationPair, are_isomorphic,
                   coequalizer, is_acyclic, pushout, quotient, sieve_pushout_direct)
from accat.io import load_category, load_relation

DATA = Path(__file__).parent / "data"


def show(label, C):
    print(f"{label}: {len(C.objects)} objects, {len(C.morphisms)} non-identity morphisms")


# Two parallel arrows f, g: a -> b.  Gluing f to g leaves a single arrow.
parallel = load_category(DATA / "parallel.json")
Q, q = quotient(parallel, load_relation(DATA / "glue_fg.json"))
show("parallel pair / (f ~ g)", Q)
print("  f and g land on", q.mor("f"), "and", q.mor("g"))

# Identifying the two ends of an arrow makes f an endomorphism with no
# relation on its powers, so the quotient is infinite.  The cap catches it.
arrow = load_category(DATA / "arrow.json")
try:
    quotient(arrow, RelationPair([("a", "b")]), cap=50)
except GrowthExceeded as exc:
    print("arrow / (a ~ b):", exc)

# The same kind of gluing, phrased as a coequalizer of two points in an arrow.
point = FinCat(["*"])
try:
    coequalizer(FinFunctor(point, arrow, {"*": "a"}), FinFunctor(point, arrow, {"*": "b"}),
                cap=50)
except GrowthExceeded:
    print("coequalizer of the two ends: infinite as well")

# A pushout along a sieve.  A = {a}, B = a -> b, C = c -> a' with a -> a'.
A = FinCat(["a"])
B = FinCat(["a", "b"], [("f", "a", "b")])
C = FinCat(["c", "a2"], [("h", "c", "a2")])
i = FinFunctor(A, B, {"a": "a"})            # {a} is a sieve in B: nothing maps into a
F = FinFunctor(A, C, {"a": "a2"})
P, leg_b, leg_c = pushout(i, F)
show("pushout", P)
print("  acyclic:", is_acyclic(P))
print("  composite c -> b exists:", bool(P.hom(leg_c.obj("c"), leg_b.obj("b"))))
print("  agrees with the normal-form construction:",
      are_isomorphic(P, sieve_pushout_direct(i, F)))
