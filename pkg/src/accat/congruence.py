"""Generalized congruences, quotients and colimits in Cat.

Quotients are computed by coset enumeration on the right Cayley graph of the
presented category: generators are the non-identity morphisms of the
carrier, relations are its composition table plus the requested
identifications.  Every node is a morphism class; the enumeration stops with
:class:`GrowthExceeded` once more than ``cap`` classes are alive.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ConditionsViolated, GrowthExceeded, InvalidFunctor, NotFiltered, PreconditionViolated
from .fincat import ID_PREFIX, FinCat, FinFunctor, coproduct, identity_functor, is_acyclic, is_sieve

DEFAULT_CAP = 10_000


class _UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b, order=None) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if order is not None and order(rb) < order(ra):
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def classes(self):
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


class _CayleyGraph:
    """Coset enumeration for a finitely presented category.

    ``n_objects`` object classes ``0..n-1``; generators ``g`` run from
    ``gen_src[g]`` to ``gen_tgt[g]``; relations are ``(start, u, v)`` with
    ``u, v`` tuples of generator indices read left to right.
    """

    def __init__(self, n_objects, gen_src, gen_tgt, relations, cap):
        self.cap = cap
        self.gen_tgt = gen_tgt
        self.gens_out = [[] for _ in range(n_objects)]
        for g, s in enumerate(gen_src):
            self.gens_out[s].append(g)
        self.rels_at = [[] for _ in range(n_objects)]
        for start, u, v in relations:
            if u != v:
                self.rels_at[start].append((u, v))
        self.src: list = []
        self.tgt: list = []
        self.table: list = []
        self.parent: list = []
        self.alive = 0
        self.identity = [self._new(x, x) for x in range(n_objects)]
        self._run()

    def _new(self, s, t):
        n = len(self.parent)
        self.src.append(s)
        self.tgt.append(t)
        self.table.append({})
        self.parent.append(n)
        self.alive += 1
        if self.alive > self.cap or n > 50 * self.cap + 1000:
            raise GrowthExceeded(self.cap)
        return n

    def find(self, n):
        parent = self.parent
        root = n
        while parent[root] != root:
            root = parent[root]
        while parent[n] != root:
            parent[n], n = root, parent[n]
        return root

    def step(self, n, g):
        n = self.find(n)
        nxt = self.table[n].get(g)
        if nxt is None:
            nxt = self._new(self.src[n], self.gen_tgt[g])
            self.table[n][g] = nxt
        return self.find(nxt)

    def trace(self, n, path):
        for g in path:
            n = self.step(n, g)
        return self.find(n)

    def merge(self, a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            self.alive -= 1
            tb, self.table[b] = self.table[b], {}
            ta = self.table[a]
            for g, nb in tb.items():
                na = ta.get(g)
                if na is None:
                    ta[g] = nb
                else:
                    queue.append((na, nb))

    def _run(self):
        i = 0
        while i < len(self.parent):
            if self.find(i) == i:
                for u, v in self.rels_at[self.tgt[i]]:
                    self.merge(self.trace(i, u), self.trace(i, v))
                    if self.find(i) != i:
                        break
                if self.find(i) == i:
                    for g in self.gens_out[self.tgt[i]]:
                        self.step(i, g)
            i += 1

    def live(self):
        return [n for n in range(len(self.parent)) if self.parent[n] == n]


def _shortlex_representatives(graph: _CayleyGraph, gen_order):
    """Shortest, then lexicographically least, generator word for every class."""
    rep = {}
    queue = deque()
    for x, n in enumerate(graph.identity):
        n = graph.find(n)
        rep[n] = ()
        queue.append(n)
    while queue:
        n = queue.popleft()
        for g in sorted(graph.gens_out[graph.tgt[n]], key=gen_order):
            m = graph.find(graph.table[n][g])
            if m not in rep:
                rep[m] = rep[n] + (g,)
                queue.append(m)
    return rep


# -- relations and presentations ---------------------------------------------


@dataclass(frozen=True)
class RelationPair:
    """Generators of a principal congruence.

    ``object_pairs`` identify objects; ``sequence_pairs`` identify nonempty
    sequences of morphisms (listed first to last).
    """

    object_pairs: frozenset = frozenset()
    sequence_pairs: frozenset = frozenset()

    def __init__(self, object_pairs: Iterable = (), sequence_pairs: Iterable = ()):
        object.__setattr__(self, "object_pairs", frozenset(tuple(p) for p in object_pairs))
        object.__setattr__(self, "sequence_pairs",
                           frozenset((tuple(u), tuple(v)) for u, v in sequence_pairs))

    def validate(self, C: FinCat) -> None:
        for x, y in self.object_pairs:
            for z in (x, y):
                if not C.has_object(z):
                    raise ValueError(f"relation names unknown object {z!r}")
        for u, v in self.sequence_pairs:
            for seq in (u, v):
                if not seq:
                    raise ValueError("relation sequences must be nonempty")
                for m in seq:
                    if not C.has_morphism(m):
                        raise ValueError(f"relation names unknown morphism {m!r}")

    def union(self, other: "RelationPair") -> "RelationPair":
        return RelationPair(self.object_pairs | other.object_pairs,
                            self.sequence_pairs | other.sequence_pairs)


@dataclass
class MorphismClass:
    representative: tuple   # carrier morphisms, first to last; ``(id_x,)`` for identities
    src: str                # object-class name
    tgt: str
    is_identity: bool = False


@dataclass
class CongruencePresentation:
    """A saturated generalized congruence on ``carrier``.

    Object classes are named after their first member (carrier order);
    ``table[(i, j)]`` is the class of the concatenation of class ``i`` then
    class ``j``.
    """

    carrier: FinCat
    object_classes: dict          # class name -> tuple of members
    object_class_of: dict         # object -> class name
    classes: list                 # MorphismClass per class index
    class_of: dict                # carrier morphism -> class index
    table: dict                   # (i, j) -> k
    cap: int
    saturated: bool = True
    names: list = field(default_factory=list)

    def objects_related(self, x, y) -> bool:
        return self.object_class_of[x] == self.object_class_of[y]

    def class_of_sequence(self, seq: Sequence[str]) -> int:
        """Class of a ~o-composable sequence of carrier morphisms."""
        cur = self.class_of[seq[0]]
        for m in seq[1:]:
            cur = self.table[(cur, self.class_of[m])]
        return cur

    def sequences_related(self, u, v) -> bool:
        return self.class_of_sequence(u) == self.class_of_sequence(v)

    def to_category(self) -> tuple:
        """The quotient category and the quotient functor (built once)."""
        cached = self.__dict__.get("_built")
        if cached is not None:
            return cached
        self.__dict__["_built"] = self._build()
        return self.__dict__["_built"]

    def _build(self) -> tuple:
        objs = list(self.object_classes)
        mors = []
        for k, cls in enumerate(self.classes):
            if not cls.is_identity:
                mors.append((self.names[k], cls.src, cls.tgt))
        table = {}
        for (i, j), k in self.table.items():
            if self.classes[i].is_identity or self.classes[j].is_identity:
                continue
            table[(self.names[i], self.names[j])] = self.names[k]
        Q = FinCat(objs, mors, table, check=False)
        C = self.carrier
        functor = FinFunctor(
            C, Q, dict(self.object_class_of),
            {m: self.names[self.class_of[m]] for m in C.morphisms}, check=False)
        return Q, functor


def _object_partition(C: FinCat, R: RelationPair):
    uf = _UnionFind(C.objects)
    pos = {x: i for i, x in enumerate(C.objects)}
    for x, y in R.object_pairs:
        uf.union(x, y, pos.__getitem__)
    for u, v in R.sequence_pairs:
        uf.union(C.src(u[0]), C.src(v[0]), pos.__getitem__)
        uf.union(C.tgt(u[-1]), C.tgt(v[-1]), pos.__getitem__)
        for seq in (u, v):
            for a, b in zip(seq, seq[1:]):
                uf.union(C.tgt(a), C.src(b), pos.__getitem__)
    return uf


def _morphism_name(rep_names: tuple) -> str:
    return rep_names[0] if len(rep_names) == 1 else ";".join(rep_names)


def saturate(C: FinCat, R: RelationPair = None, cap: int = DEFAULT_CAP) -> CongruencePresentation:
    """Principal generalized congruence generated by ``R`` on ``C``."""
    R = R or RelationPair()
    R.validate(C)
    uf = _object_partition(C, R)
    roots = []
    for x in C.objects:
        r = uf.find(x)
        if r not in roots:
            roots.append(r)
    cls_index = {r: i for i, r in enumerate(roots)}
    obj_class = {x: cls_index[uf.find(x)] for x in C.objects}

    gens = list(C.morphisms)
    gen_index = {m: i for i, m in enumerate(gens)}
    gen_src = [obj_class[C.src(m)] for m in gens]
    gen_tgt = [obj_class[C.tgt(m)] for m in gens]

    def path(seq):
        return tuple(gen_index[m] for m in seq if not C.is_identity(m))

    relations = []
    for f, g, h in C.nonidentity_triples():
        relations.append((gen_src[gen_index[f]], (gen_index[f], gen_index[g]), path((h,))))
    for u, v in sorted(R.sequence_pairs):
        relations.append((obj_class[C.src(u[0])], path(u), path(v)))

    graph = _CayleyGraph(len(roots), gen_src, gen_tgt, relations, cap)
    rep = _shortlex_representatives(graph, lambda g: gens[g])
    nodes = sorted(rep, key=lambda n: (len(rep[n]) > 0, graph.src[n], len(rep[n]),
                                       [gens[g] for g in rep[n]]))
    index = {n: k for k, n in enumerate(nodes)}
    class_names = [roots[i] for i in range(len(roots))]
    classes = []
    names = []
    used = set(ID_PREFIX + c for c in class_names)
    for n in nodes:
        s, t = class_names[graph.src[n]], class_names[graph.tgt[n]]
        if not rep[n]:
            x = roots[graph.src[n]]
            classes.append(MorphismClass((C.identity(x),), s, t, True))
            names.append(ID_PREFIX + s)
            continue
        word = tuple(gens[g] for g in rep[n])
        name = _morphism_name(word)
        while name in used:
            name += "'"
        used.add(name)
        classes.append(MorphismClass(word, s, t))
        names.append(name)

    table = {}
    for n in nodes:
        for m in nodes:
            if graph.tgt[n] == graph.src[m]:
                table[(index[n], index[m])] = index[graph.trace(n, rep[m])]
    class_of = {}
    for x in C.objects:
        class_of[C.identity(x)] = index[graph.find(graph.identity[obj_class[x]])]
    for m in gens:
        start = graph.identity[gen_src[gen_index[m]]]
        class_of[m] = index[graph.trace(start, (gen_index[m],))]
    object_classes = {}
    for x in C.objects:
        object_classes.setdefault(class_names[obj_class[x]], []).append(x)
    return CongruencePresentation(
        carrier=C,
        object_classes={k: tuple(v) for k, v in object_classes.items()},
        object_class_of={x: class_names[obj_class[x]] for x in C.objects},
        classes=classes,
        class_of=class_of,
        table=table,
        cap=cap,
        saturated=True,
        names=names,
    )


def present_category(objects: Sequence[str], generators: Sequence[tuple],
                     relations: Iterable[tuple], cap: int = DEFAULT_CAP) -> tuple:
    """Category presented by a graph and path relations.

    ``generators`` are ``(name, src, tgt)``; each relation is
    ``(start_object, path_u, path_v)`` with paths given as generator names.
    Returns the category and a map from generator name to morphism name.
    """
    objects = list(objects)
    oi = {x: i for i, x in enumerate(objects)}
    names = [g[0] for g in generators]
    gi = {g: i for i, g in enumerate(names)}
    gen_src = [oi[s] for _, s, _ in generators]
    gen_tgt = [oi[t] for _, _, t in generators]
    rels = [(oi[s], tuple(gi[g] for g in u), tuple(gi[g] for g in v)) for s, u, v in relations]
    graph = _CayleyGraph(len(objects), gen_src, gen_tgt, rels, cap)
    rep = _shortlex_representatives(graph, lambda g: names[g])
    nodes = sorted(rep, key=lambda n: (len(rep[n]) > 0, graph.src[n], len(rep[n]),
                                       [names[g] for g in rep[n]]))
    label = {}
    used = set(ID_PREFIX + x for x in objects)
    mors = []
    for n in nodes:
        if not rep[n]:
            label[n] = ID_PREFIX + objects[graph.src[n]]
            continue
        name = _morphism_name(tuple(names[g] for g in rep[n]))
        while name in used:
            name += "'"
        used.add(name)
        label[n] = name
        mors.append((name, objects[graph.src[n]], objects[graph.tgt[n]]))
    table = {}
    for n in nodes:
        if not rep[n]:
            continue
        for m in nodes:
            if rep[m] and graph.tgt[n] == graph.src[m]:
                k = graph.trace(n, rep[m])
                table[(label[n], label[m])] = label[k]
    cat = FinCat(objects, mors, table, check=False)
    gen_map = {g: label[graph.trace(graph.identity[gen_src[i]], (i,))] for i, g in enumerate(names)}
    return cat, gen_map


# -- quotients ----------------------------------------------------------------


def quotient(C: FinCat, R: RelationPair = None, cap: int = DEFAULT_CAP) -> tuple:
    """``(C/~, Q)`` for the principal congruence generated by ``R``."""
    return saturate(C, R, cap).to_category()


def _composite(F: FinFunctor, seq) -> str:
    D = F.target
    out = F.mor(seq[0])
    for m in seq[1:]:
        nxt = F.mor(m)
        if D.tgt(out) != D.src(nxt):
            raise ConditionsViolated(f"image of {seq!r} is not composable")
        out = D.compose(out, nxt)
    return out


def quotient_universal_check(C: FinCat, R: RelationPair, F: FinFunctor,
                             cap: int = DEFAULT_CAP,
                             presentation: "CongruencePresentation" = None) -> FinFunctor:
    """The unique ``G: C/~ -> D`` with ``G o Q = F``.

    Raises :class:`ConditionsViolated` when ``F`` does not identify what
    ``R`` identifies.  Pass ``presentation`` to reuse a saturation of ``R``.
    """
    if F.source != C:
        raise InvalidFunctor("functor source differs from the carrier")
    R = R or RelationPair()
    for x, y in R.object_pairs:
        if F.obj(x) != F.obj(y):
            raise ConditionsViolated(f"functor separates the related objects {x!r} and {y!r}")
    for u, v in R.sequence_pairs:
        if _composite(F, u) != _composite(F, v):
            raise ConditionsViolated(f"functor separates the related sequences {u!r} and {v!r}")
    P = presentation if presentation is not None else saturate(C, R, cap)
    for name, members in P.object_classes.items():
        images = {F.obj(x) for x in members}
        if len(images) > 1:
            raise ConditionsViolated(f"functor separates the related objects {members!r}")
    Q, q = P.to_category()
    om = {name: F.obj(members[0]) for name, members in P.object_classes.items()}
    mm = {}
    for k, cls in enumerate(P.classes):
        if not cls.is_identity:
            mm[P.names[k]] = _composite(F, cls.representative)
    G = FinFunctor(Q, F.target, om, mm)
    if q.then(G) != F:
        raise ConditionsViolated("induced functor does not factor the given one")
    return G


def coequalizer_relation(F: FinFunctor, G: FinFunctor) -> RelationPair:
    C = F.source
    return RelationPair(
        [(F.obj(x), G.obj(x)) for x in C.objects],
        [((F.mor(m),), (G.mor(m),)) for m in C.morphisms],
    )


def coequalizer(F: FinFunctor, G: FinFunctor, cap: int = DEFAULT_CAP) -> tuple:
    """Coequalizer of parallel functors as a quotient of their common target."""
    if F.source != G.source or F.target != G.target:
        raise InvalidFunctor("coequalizer needs parallel functors")
    return quotient(F.target, coequalizer_relation(F, G), cap)


def pushout(i: FinFunctor, F: FinFunctor, cap: int = DEFAULT_CAP) -> tuple:
    """Pushout of ``B <-i- A -F-> C``: returns ``(P, leg_B, leg_C)``."""
    if i.source != F.source:
        raise InvalidFunctor("span legs must share their source")
    total, (inj_b, inj_c) = coproduct([i.target, F.target])
    P, q = coequalizer(i.then(inj_b), F.then(inj_c), cap)
    return P, inj_b.then(q), inj_c.then(q)


def coproduct_by_pushouts(maps: Sequence[FinFunctor], cap: int = DEFAULT_CAP) -> tuple:
    """The coproduct of ``f_s: x_s -> y_s`` as a composite of pushouts of the ``f_s``.

    Starts from the coproduct of the sources and pushes out one map at a
    time; returns ``(Z, composite)`` with ``composite`` from the coproduct of
    the sources to ``Z``.
    """
    X, inj = coproduct([f.source for f in maps])
    cur, comp = X, identity_functor(X)
    for f, i in zip(maps, inj):
        cur, _, leg = pushout(f, i.then(comp), cap)
        comp = comp.then(leg)
    return cur, comp


def coproduct_of_maps(maps: Sequence[FinFunctor]) -> FinFunctor:
    """The map ``coprod x_s -> coprod y_s`` built directly."""
    X, inj_x = coproduct([f.source for f in maps])
    Y, inj_y = coproduct([f.target for f in maps])
    om, mm = {}, {}
    for f, ix, iy in zip(maps, inj_x, inj_y):
        for x in f.source.objects:
            om[ix.obj(x)] = iy.obj(f.obj(x))
        for m in f.source.morphisms:
            mm[ix.mor(m)] = iy.mor(f.mor(m))
    return FinFunctor(X, Y, om, mm)


def sieve_pushout_direct(i: FinFunctor, F: FinFunctor) -> FinCat:
    """Pushout along a sieve of acyclic categories, built in normal form.

    Objects are ``B \\ i(A)`` and ``C``; morphisms are the B-morphisms away
    from ``i(A)``, the C-morphisms, and crossing classes ``[a, g, f]`` with
    ``g: c -> F(a)`` in C and ``f: i(a) -> b`` in B leaving ``i(A)``.
    Identifiers follow :func:`coproduct` (``0.`` for B, ``1.`` for C).
    """
    A, B, C = i.source, i.target, F.target
    if F.source != A:
        raise PreconditionViolated("span legs must share their source")
    try:
        if not is_sieve(i):
            raise PreconditionViolated("left leg is not a sieve")
    except PreconditionViolated:
        raise
    except Exception as exc:
        raise PreconditionViolated(str(exc)) from exc
    for K, label in ((A, "A"), (B, "B"), (C, "C")):
        if not is_acyclic(K):
            raise PreconditionViolated(f"{label} is not acyclic")

    in_a = set(i.object_map.values())
    b_out = [b for b in B.objects if b not in in_a]
    objs = [f"0.{b}" for b in b_out] + [f"1.{c}" for c in C.objects]
    mors, table = [], {}
    b_mors = [m for m in B.morphisms if B.src(m) not in in_a]
    mors += [(f"0.{m}", f"0.{B.src(m)}", f"0.{B.tgt(m)}") for m in b_mors]
    mors += [(f"1.{m}", f"1.{C.src(m)}", f"1.{C.tgt(m)}") for m in C.morphisms]
    for (f, g), h in B.composition_table().items():
        if B.src(f) not in in_a:
            table[(f"0.{f}", f"0.{g}")] = f"0.{h}"
    for (f, g), h in C.composition_table().items():
        table[(f"1.{f}", f"1.{g}")] = f"1.{h}"

    triples = []
    for a in A.objects:
        for f in B.out_morphisms(i.obj(a)):
            if B.tgt(f) in in_a:
                continue
            for g in C.in_morphisms(F.obj(a)):
                triples.append((a, g, f))
    pos = {t: k for k, t in enumerate(triples)}
    uf = _UnionFind(triples)
    for alpha in A.morphisms:
        a, a2 = A.src(alpha), A.tgt(alpha)
        for f in B.out_morphisms(i.obj(a2)):
            if B.tgt(f) in in_a:
                continue
            for g in C.in_morphisms(F.obj(a)):
                uf.union((a, g, B.compose(i.mor(alpha), f)),
                         (a2, C.compose(g, F.mor(alpha)), f), pos.__getitem__)
    cls_name = {}
    for root, members in uf.classes().items():
        a, g, f = min(members, key=pos.__getitem__)
        name = f"0.{f}" if C.is_identity(g) else f"1.{g};0.{f}"
        src_c, tgt_b = C.src(g), B.tgt(f)
        mors.append((name, f"1.{src_c}", f"0.{tgt_b}"))
        for t in members:
            cls_name[t] = name
    rep_of = {}
    for t in triples:
        rep_of.setdefault(cls_name[t], t)
    for name, (a, g, f) in rep_of.items():
        src_c, tgt_b = C.src(g), B.tgt(f)
        for k in C.in_morphisms(src_c):
            if not C.is_identity(k):
                table[(f"1.{k}", name)] = cls_name[(a, C.compose(k, g), f)]
        for h in B.out_morphisms(tgt_b):
            if not B.is_identity(h):
                table[(name, f"0.{h}")] = cls_name[(a, g, B.compose(f, h))]
    return FinCat(objs, mors, table)


# -- diagrams and colimits ------------------------------------------------------


@dataclass
class DiagramInCat:
    """A functor from a finite index category into finite categories.

    ``edges`` holds functors for non-identity index morphisms; identities are
    implicit.
    """

    index: FinCat
    nodes: dict
    edges: dict

    def functor(self, u: str) -> FinFunctor:
        if self.index.is_identity(u):
            return identity_functor(self.nodes[self.index.src(u)])
        return self.edges[u]

    def validate(self) -> None:
        I = self.index
        for x in I.objects:
            if x not in self.nodes:
                raise ValueError(f"index object {x!r} has no category")
        for u in I.morphisms:
            F = self.edges.get(u)
            if F is None:
                raise ValueError(f"index morphism {u!r} has no functor")
            if F.source != self.nodes[I.src(u)] or F.target != self.nodes[I.tgt(u)]:
                raise ValueError(f"functor for {u!r} has the wrong endpoints")
        for u, v, w in I.nonidentity_triples():
            if self.functor(u).then(self.functor(v)) != self.functor(w):
                raise ValueError(f"diagram does not respect the composite of ({u}, {v})")


def colimit_relation(D: DiagramInCat) -> tuple:
    """``(total, injections, R)``: the coproduct of the nodes and the relation
    whose quotient is the colimit."""
    I = D.index
    total, inj = coproduct([D.nodes[x] for x in I.objects])
    pos = {x: k for k, x in enumerate(I.objects)}
    obj_pairs, seq_pairs = [], []
    for u in I.morphisms:
        s, t = I.src(u), I.tgt(u)
        Fu = D.edges[u]
        js, jt = inj[pos[s]], inj[pos[t]]
        for x in D.nodes[s].objects:
            obj_pairs.append((js.obj(x), jt.obj(Fu.obj(x))))
        for m in D.nodes[s].morphisms:
            seq_pairs.append(((js.mor(m),), (jt.mor(Fu.mor(m)),)))
    return total, dict(zip(I.objects, inj)), RelationPair(obj_pairs, seq_pairs)


def finite_colimit(D: DiagramInCat, cap: int = DEFAULT_CAP) -> tuple:
    """Colimit in Cat: coproduct of the nodes, then one quotient."""
    total, inj, R = colimit_relation(D)
    L, q = quotient(total, R, cap)
    return L, {x: leg.then(q) for x, leg in inj.items()}


def is_filtered(I: FinCat) -> bool:
    if not I.objects:
        return False
    reach = {x: {I.tgt(m) for m in I.out_morphisms(x)} for x in I.objects}
    for x in I.objects:
        for y in I.objects:
            if not reach[x] & reach[y]:
                return False
    for x in I.objects:
        for y in I.objects:
            hom = I.hom(x, y)
            for a in range(len(hom)):
                for b in range(a + 1, len(hom)):
                    f1, f2 = hom[a], hom[b]
                    if not any(I.compose(f1, h) == I.compose(f2, h) for h in I.out_morphisms(y)):
                        return False
    return True


def filtered_colimit(D: DiagramInCat) -> tuple:
    """Colimit over a filtered index, computed objectwise and homwise in Set.

    Two elements are identified when some pair of diagram maps sends them to
    the same element; composition is computed after pushing both factors to
    a common stage.
    """
    I = D.index
    if not is_filtered(I):
        raise NotFiltered("index category is not filtered")
    pos = {x: k for k, x in enumerate(I.objects)}

    def image_groups(kind):
        groups: dict = {}
        elements = []
        for i in I.objects:
            Ci = D.nodes[i]
            items = Ci.objects if kind == "o" else Ci.arrows
            for e in items:
                elements.append((i, e))
                for u in I.out_morphisms(i):
                    Fu = D.functor(u)
                    img = Fu.obj(e) if kind == "o" else Fu.mor(e)
                    groups.setdefault((I.tgt(u), img), []).append((i, e))
        order = {e: k for k, e in enumerate(elements)}
        uf = _UnionFind(elements)
        for members in groups.values():
            for m in members[1:]:
                uf.union(members[0], m, order.__getitem__)
        return uf

    obj_uf = image_groups("o")
    mor_uf = image_groups("m")

    def oname(elem):
        i, x = obj_uf.find(elem)
        return f"{pos[i]}.{x}"

    objs = []
    for i in I.objects:
        for x in D.nodes[i].objects:
            n = oname((i, x))
            if n not in objs:
                objs.append(n)

    mclasses = mor_uf.classes()
    mname = {}
    is_id = {}
    rep = {}
    for root, members in mclasses.items():
        ident = next((m for m in members if D.nodes[m[0]].is_identity(m[1])), None)
        i, m = root
        src = oname((i, D.nodes[i].src(m)))
        name = ID_PREFIX + src if ident is not None else f"{pos[i]}.{m}"
        is_id[root] = ident is not None
        mname[root] = name
        rep[name] = root

    def meet(i, x, i2, x2):
        """Stage j and maps u: i -> j, v: i2 -> j with D_u x = D_v x2."""
        for j in I.objects:
            for u in I.hom(i, j):
                Fu = D.functor(u)
                for v in I.hom(i2, j):
                    if Fu.obj(x) == D.functor(v).obj(x2):
                        return j, Fu, D.functor(v)
        raise NotFiltered(f"no common stage for {x!r} and {x2!r}")

    mors, table = [], {}
    names_nonid = [n for root, n in mname.items() if not is_id[root]]
    names_nonid.sort(key=lambda n: (pos[rep[n][0]], D.nodes[rep[n][0]].arrows.index(rep[n][1])))
    for n in names_nonid:
        i, m = rep[n]
        Ci = D.nodes[i]
        mors.append((n, oname((i, Ci.src(m))), oname((i, Ci.tgt(m)))))
    ends = {n: (s, t) for n, s, t in mors}
    for n1 in names_nonid:
        for n2 in names_nonid:
            if ends[n1][1] != ends[n2][0]:
                continue
            i, m = rep[n1]
            i2, m2 = rep[n2]
            j, Fu, Fv = meet(i, D.nodes[i].tgt(m), i2, D.nodes[i2].src(m2))
            comp = D.nodes[j].compose(Fu.mor(m), Fv.mor(m2))
            table[(n1, n2)] = mname[mor_uf.find((j, comp))]
    L = FinCat(objs, mors, table, check=False)
    cocone = {}
    for i in I.objects:
        Ci = D.nodes[i]
        cocone[i] = FinFunctor(Ci, L, {x: oname((i, x)) for x in Ci.objects},
                               {m: mname[mor_uf.find((i, m))] for m in Ci.morphisms}, check=False)
    return L, cocone
