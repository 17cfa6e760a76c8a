"""Seeded random instances and exhaustive corpora of small categories."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from ._search import DEFAULT_BUDGET, backtrack
from .congruence import (DEFAULT_CAP, DiagramInCat, RelationPair, is_filtered,
                         present_category, quotient)
from .errors import GrowthExceeded
from .fincat import (FinCat, FinFunctor, _invariants, find_isomorphism, identity_name,
                     iter_functors)
from .simplicial import Poset, SimplicialComplex


@dataclass
class SuiteConfig:
    seed: int = 0
    instance_count: int = 20
    max_objects: int = 4
    max_morphisms: int = 10
    cap: int = DEFAULT_CAP
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        for name in ("instance_count", "max_objects", "max_morphisms", "cap", "budget"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def rng_for(cfg: SuiteConfig, kind: str, index: int) -> random.Random:
    """Independent stream per (seed, kind, index), so instances do not shift."""
    return random.Random(f"{cfg.seed}:{kind}:{index}")


# -- random categories --------------------------------------------------------


def _dag_paths(n, gens, i, j):
    """All generator paths from object i to object j (objects are 0..n-1, edges go up)."""
    out = []

    def walk(at, path):
        if at == j and path:
            out.append(tuple(path))
        for name, s, t in gens:
            if s == at and t <= j:
                walk(t, path + [name])

    walk(i, [])
    return out


def random_acyclic(rng: random.Random, max_objects: int = 4, max_morphisms: int = 10,
                   min_objects: int = 1) -> FinCat:
    """Free category on a random DAG, cut down by random relations between parallel paths."""
    for _ in range(1000):
        n = rng.randint(min_objects, max_objects)
        objs = [f"x{i}" for i in range(n)]
        gens = []
        for i in range(n):
            for j in range(i + 1, n):
                for _ in range(rng.choice((0, 0, 1, 1, 2))):
                    gens.append((f"g{len(gens)}", i, j))
        relations = []
        for _ in range(rng.randint(0, 3)):
            if n < 2:
                break
            i, j = sorted(rng.sample(range(n), 2))
            paths = _dag_paths(n, gens, i, j)
            if len(paths) >= 2:
                u, v = rng.sample(paths, 2)
                relations.append((objs[i], u, v))
        named = [(g, objs[s], objs[t]) for g, s, t in gens]
        C, _ = present_category(objs, named, relations)
        if len(C.morphisms) <= max_morphisms:
            return C
    raise RuntimeError("could not sample an acyclic category within the bounds")


def random_category(rng: random.Random, max_objects: int = 4, max_morphisms: int = 10,
                    cap: int = 200) -> FinCat:
    """An acyclic category with some objects glued, closing loops by idempotent or
    involutive relations; rejected when the quotient is too big."""
    while True:
        base = random_acyclic(rng, max_objects, max_morphisms)
        if len(base.objects) < 2 or rng.random() < 0.2:
            return base
        x, y = rng.sample(list(base.objects), 2)
        seq_pairs = []
        for f in base.hom(x, y) + base.hom(y, x):
            if rng.random() < 0.5:
                seq_pairs.append(((f, f), (f,)))
            else:
                seq_pairs.append(((f, f), (identity_name(base.src(f)),)))
        try:
            Q, _ = quotient(base, RelationPair([(x, y)], seq_pairs), cap)
        except GrowthExceeded:
            continue
        if len(Q.morphisms) <= max_morphisms:
            return Q


def random_functor(rng: random.Random, C: FinCat, D: FinCat, limit: int = 16,
                   budget=None) -> FinFunctor:
    doms = {}
    for x in C.objects:
        objs = list(D.objects)
        rng.shuffle(objs)
        doms[x] = objs
    found = []
    for F in iter_functors(C, D, budget, object_domains=doms):
        found.append(F)
        if len(found) >= limit:
            break
    if not found:
        raise ValueError("no functor between the sampled categories")
    return rng.choice(found)


# -- spans, diagrams, complexes -------------------------------------------------


@dataclass
class SieveSpan:
    """``B <-i- A -F-> C`` with ``i`` a sieve."""

    i: FinFunctor
    F: FinFunctor


def random_sieve_span(rng: random.Random, max_objects: int = 5, max_morphisms: int = 10,
                      empty: bool = False) -> SieveSpan:
    B = random_acyclic(rng, max_objects, max_morphisms)
    chosen = set() if empty else {x for x in B.objects if rng.random() < 0.5}
    grew = True
    while grew:
        grew = False
        for m in B.morphisms:
            if B.tgt(m) in chosen and B.src(m) not in chosen:
                chosen.add(B.src(m))
                grew = True
    A, i = B.full_subcategory([x for x in B.objects if x in chosen])
    C = random_acyclic(rng, max_objects, max_morphisms)
    return SieveSpan(i, random_functor(rng, A, C))


def random_filtered_diagram(rng: random.Random, max_index: int = 4, max_objects: int = 4,
                            max_morphisms: int = 8, chain: bool = False) -> DiagramInCat:
    """Inclusions of full subcategories of one acyclic category over a poset with a top."""
    k = rng.randint(1, max_index) if not chain else max_index
    names = [f"i{n}" for n in range(k)]
    pairs = set()
    for a in range(k - 1):
        for b in range(a + 1, k - 1):
            if chain or rng.random() < 0.4:
                pairs.add((a, b))
        pairs.add((a, k - 1))
    closed = set(pairs)
    for _ in range(k):
        closed |= {(a, c) for a, b in closed for b2, c in closed if b == b2}
    P = Poset(names, [(names[a], names[b]) for a, b in closed])
    index = P.as_category()
    T = random_acyclic(rng, max_objects, max_morphisms)
    subsets = {}
    for n in range(k):
        below = set()
        for a, b in closed:
            if b == n:
                below |= subsets[a]
        extra = {x for x in T.objects if rng.random() < 0.4}
        subsets[n] = below | extra
    nodes = {names[n]: T.full_subcategory([x for x in T.objects if x in subsets[n]])[0]
             for n in range(k)}
    edges = {}
    for u in index.morphisms:
        s, t = nodes[index.src(u)], nodes[index.tgt(u)]
        edges[u] = FinFunctor(s, t, {x: x for x in s.objects}, {m: m for m in s.morphisms})
    D = DiagramInCat(index, nodes, edges)
    D.validate()
    assert is_filtered(index)
    return D


def random_complex(rng: random.Random, max_vertices: int = 8, max_dim: int = 3,
                   max_faces: int = 6) -> SimplicialComplex:
    n = rng.randint(1, max_vertices)
    vs = [str(i) for i in range(n)]
    faces = []
    for _ in range(rng.randint(1, max_faces)):
        size = rng.randint(1, min(n, max_dim + 1))
        faces.append(sorted(rng.sample(vs, size), key=int))
    return SimplicialComplex(vs, faces)


def random_map_family(rng: random.Random, max_count: int = 4, max_objects: int = 3,
                      max_morphisms: int = 5) -> list:
    maps = []
    for _ in range(rng.randint(1, max_count)):
        X = random_acyclic(rng, max_objects, max_morphisms)
        Y = random_acyclic(rng, max_objects, max_morphisms)
        maps.append(random_functor(rng, X, Y))
    return maps


KINDS = ("category", "acyclic", "sieve-span", "filtered-diagram")


def generate_instance(kind: str, cfg: SuiteConfig, index: int = 0):
    """Deterministic instance number ``index`` of the given kind."""
    rng = rng_for(cfg, kind, index)
    if kind == "category":
        return random_category(rng, cfg.max_objects, cfg.max_morphisms)
    if kind == "acyclic":
        return random_acyclic(rng, cfg.max_objects, cfg.max_morphisms)
    if kind == "sieve-span":
        return random_sieve_span(rng, cfg.max_objects, cfg.max_morphisms)
    if kind == "filtered-diagram":
        return random_filtered_diagram(rng, cfg.max_objects)
    raise ValueError(f"unknown instance kind {kind!r}")


# -- exhaustive small corpora -------------------------------------------------------


def _fine_invariants(C: FinCat):
    """Isomorphism invariants sharper than hom-set sizes: idempotents and inverse pairs."""
    per_object = []
    for x in C.objects:
        endos = [m for m in C.hom(x, x) if not C.is_identity(m)]
        idem = sum(1 for m in endos if C.compose(m, m) == m)
        to_id = sum(1 for m in endos for n in endos if C.compose(m, n) == C.identity(x))
        per_object.append((len(endos), idem, to_id))
    squares = sum(1 for f, g in C.composable_pairs() if C.compose(f, g) == f)
    return _invariants(C), sorted(per_object), squares


def dedupe_isomorphic(cats) -> list:
    buckets: dict = {}
    out = []
    for C in cats:
        key = repr(_fine_invariants(C))
        bucket = buckets.setdefault(key, [])
        if any(find_isomorphism(C, D) is not None for D in bucket):
            continue
        bucket.append(C)
        out.append(C)
    return out


def _tables(objs, ends):
    """Every associative composition table for morphisms with the given endpoints."""
    names = [f"f{k}" for k in range(len(ends))]
    src = dict(zip(names, (e[0] for e in ends)))
    tgt = dict(zip(names, (e[1] for e in ends)))
    pairs = [(f, g) for f in names for g in names if tgt[f] == src[g]]
    triples = [(f, g, h) for f, g in pairs for h in names if tgt[g] == src[h]]

    def domain(pair, a):
        f, g = pair
        s, t = src[f], tgt[g]
        opts = [m for m in names if src[m] == s and tgt[m] == t]
        return opts + ([None] if s == t else [])

    def comp(a, x, y):
        if x is None:
            return y, True
        if y is None:
            return x, True
        if (x, y) not in a:
            return None, False
        return a[(x, y)], True

    def assoc(a):
        for f, g, h in triples:
            fg, ok1 = comp(a, f, g)
            gh, ok2 = comp(a, g, h)
            if not (ok1 and ok2):
                continue
            left, ok3 = comp(a, fg, h)
            right, ok4 = comp(a, f, gh)
            if ok3 and ok4 and left != right:
                return False
        return True

    checks = {p: [assoc] for p in pairs}
    for a in backtrack(pairs, domain, checks):
        table = {}
        for (f, g), h in a.items():
            table[(f, g)] = h if h is not None else identity_name(src[f])
        yield FinCat(objs, [(m, src[m], tgt[m]) for m in names], table)


def small_categories(max_objects: int = 3, max_morphisms: int = 3) -> list:
    """All categories up to isomorphism within the bounds (exhaustive)."""
    found = []
    for n in range(max_objects + 1):
        objs = ["a", "b", "c", "d", "e"][:n]
        slots = [(s, t) for s in objs for t in objs]
        for m in range(max_morphisms + 1):
            if n == 0 and m:
                break
            for ends in itertools.combinations_with_replacement(slots, m):
                found.extend(_tables(objs, ends))
    return dedupe_isomorphic(found)


def small_acyclic_categories(max_objects: int = 3, max_morphisms: int = 6) -> list:
    """All acyclic categories up to isomorphism within the bounds (exhaustive).

    With at most three objects the only composable non-identity pairs run
    through the middle object of a chain, so associativity is automatic.
    """
    if max_objects > 3:
        raise ValueError("exhaustive acyclic enumeration is limited to three objects")
    found = []
    for n in range(max_objects + 1):
        objs = ["a", "b", "c"][:n]
        ordered = [(i, j) for i in range(n) for j in range(i + 1, n)]
        for mults in itertools.product(range(max_morphisms + 1), repeat=len(ordered)):
            if sum(mults) > max_morphisms:
                continue
            mors, homs = [], {}
            for (i, j), k in zip(ordered, mults):
                homs[(i, j)] = [f"f{len(mors) + r}" for r in range(k)]
                mors += [(f"f{len(mors) + r}", objs[i], objs[j]) for r in range(k)]
            if n < 3:
                found.append(FinCat(objs, mors))
                continue
            pairs = [(f, g) for f in homs[(0, 1)] for g in homs[(1, 2)]]
            targets = homs[(0, 2)]
            if pairs and not targets:
                continue
            for values in itertools.product(targets, repeat=len(pairs)):
                found.append(FinCat(objs, mors, dict(zip(pairs, values))))
    return dedupe_isomorphic(found)
