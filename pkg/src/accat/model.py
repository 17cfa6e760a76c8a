"""Lifting problems, right lifting properties and the small object argument."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ._search import as_budget
from .congruence import DEFAULT_CAP, DiagramInCat, _UnionFind, finite_colimit, pushout
from .errors import GrowthExceeded, InvalidFunctor, NonCommutingSquare, StageBudgetExceeded
from .fincat import (FinCat, FinFunctor, are_isomorphic, chain_category, coproduct,
                     enumerate_functors, identity_functor, is_isomorphism, iter_functors)
from .simplicial import _longest_chain, generating_set


@dataclass
class LiftingSquare:
    """``left: x -> y``, ``right: u -> v``, ``top: x -> u``, ``bottom: y -> v``."""

    left: FinFunctor
    right: FinFunctor
    top: FinFunctor
    bottom: FinFunctor

    def commutes(self) -> bool:
        f, g, t, b = self.left, self.right, self.top, self.bottom
        if (f.source != t.source or f.target != b.source
                or g.source != t.target or g.target != b.target):
            return False
        return t.then(g) == f.then(b)

    def is_lift(self, h: FinFunctor) -> bool:
        return self.left.then(h) == self.top and h.then(self.right) == self.bottom


class NoLift:
    """Exhaustive search found no diagonal filler."""

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoLift()"


def _lift_domains(sq: LiftingSquare):
    f, g, t, b = sq.left, sq.right, sq.top, sq.bottom
    Y, U = f.target, g.source
    fibre_objects: dict = {}
    for u in U.objects:
        fibre_objects.setdefault(g.obj(u), []).append(u)
    fibre_morphisms: dict = {}
    for n in U.arrows:
        fibre_morphisms.setdefault(g.mor(n), set()).add(n)
    odom = {y: fibre_objects.get(b.obj(y), []) for y in Y.objects}
    mdom = {m: fibre_morphisms.get(b.mor(m), set()) for m in Y.morphisms}
    for x in f.source.objects:
        y = f.obj(x)
        fixed = t.obj(x)
        odom[y] = [u for u in odom[y] if u == fixed]
    for m in f.source.morphisms:
        n = f.mor(m)
        if not Y.is_identity(n):
            mdom[n] = mdom[n] & {t.mor(m)}
    return odom, mdom


def find_lift(sq: LiftingSquare, budget=None):
    """First diagonal ``h: y -> u`` with ``h o left = top`` and ``right o h = bottom``."""
    if not sq.commutes():
        raise NonCommutingSquare("square does not commute")
    odom, mdom = _lift_domains(sq)
    for h in iter_functors(sq.left.target, sq.right.source, budget, odom, mdom):
        if sq.is_lift(h):
            return h
    return NoLift()


# -- generators and squares -----------------------------------------------------


def generators_for(gens, max_dim: int) -> list:
    """``(label, inclusion)`` pairs for ``"I"``/``"J"`` or an explicit list."""
    if isinstance(gens, str):
        return generating_set(gens, max_dim)
    return list(gens)


def default_max_dim(g: FinFunctor) -> int:
    return _longest_chain(g.target) + 1


def iter_squares(j: FinFunctor, g: FinFunctor, budget=None):
    """Every commuting square from ``j`` to ``g`` as ``(top, bottom)``."""
    A, B = j.source, j.target
    U, V = g.source, g.target
    for t in iter_functors(A, U, budget):
        gt = t.then(g)
        odom = {j.obj(a): [gt.obj(a)] for a in A.objects}
        mdom = {}
        for m in A.morphisms:
            n = j.mor(m)
            if not B.is_identity(n):
                mdom[n] = {gt.mor(m)}
        for b in iter_functors(B, V, budget, odom, mdom):
            if j.then(b) == gt:
                yield t, b


def failing_squares(g: FinFunctor, gens="J", max_dim: int = None, budget=None,
                    limit: int = None) -> list:
    """Squares from the generators into ``g`` that admit no lift.

    Returned as ``(label, generator, top, bottom)`` in generator order, then
    search order.
    """
    budget = as_budget(budget)
    if max_dim is None:
        max_dim = default_max_dim(g)
    if is_isomorphism(g):
        return []   # g^-1 o bottom lifts every square
    out = []
    for label, j in generators_for(gens, max_dim):
        for t, b in iter_squares(j, g, budget):
            sq = LiftingSquare(j, g, t, b)
            if not find_lift(sq, budget):
                out.append((label, j, t, b))
                if limit is not None and len(out) >= limit:
                    return out
    return out


@dataclass
class RLPVerdict:
    holds: bool
    max_dim: int
    counterexample: Optional[LiftingSquare] = None
    generator: Optional[str] = None

    def __bool__(self):
        return self.holds


def has_rlp(g: FinFunctor, gens="J", max_dim: int = None, budget=None) -> RLPVerdict:
    """Right lifting property of ``g`` against the generators up to ``max_dim``."""
    if max_dim is None:
        max_dim = default_max_dim(g)
    bad = failing_squares(g, gens, max_dim, budget, limit=1)
    if not bad:
        return RLPVerdict(True, max_dim)
    label, j, t, b = bad[0]
    return RLPVerdict(False, max_dim, LiftingSquare(j, g, t, b), label)


# -- cell attachment ------------------------------------------------------------


def attach_cells(U: FinCat, cells: list, prefix: str) -> tuple:
    """Push out a coproduct of sieve inclusions along maps into ``U``.

    ``cells`` lists ``(j, t)`` with ``j: A -> B`` a sieve and ``t: A -> U``.
    Old names are kept, so the leg ``U -> P`` is the identity on names; new
    objects and morphisms of cell ``i`` are prefixed with ``"<prefix><i>:"``.
    Returns ``(P, leg, cell_legs, crossing)`` where ``crossing`` maps each
    new morphism leaving ``U`` to a representative ``(cell, g, f)``.
    """
    objs = list(U.objects)
    mors = [(m, U.src(m), U.tgt(m)) for m in U.morphisms]
    table = dict(U.composition_table())
    cell_maps = []
    crossing = {}
    for i, (j, t) in enumerate(cells):
        A, B = j.source, j.target
        tag = f"{prefix}{i}:"
        in_a = {j.obj(a): a for a in A.objects}
        outside = [y for y in B.objects if y not in in_a]
        objs += [tag + y for y in outside]
        om = {y: (t.obj(in_a[y]) if y in in_a else tag + y) for y in B.objects}
        mm = {}
        for m in B.morphisms:
            s, e = B.src(m), B.tgt(m)
            if s not in in_a:
                mors.append((tag + m, tag + s, tag + e))
                mm[m] = tag + m
        for (f1, f2), f3 in B.composition_table().items():
            if B.src(f1) not in in_a:
                table[(tag + f1, tag + f2)] = tag + f3
        a_of = {}
        for m in A.arrows:
            a_of[j.mor(m)] = m
        for m in B.morphisms:
            if m in a_of:
                mm[m] = t.mor(a_of[m])
        # crossing morphisms: classes of (g: u -> t(a), f: a -> y) with y outside A
        pairs = []
        for a in A.objects:
            for f in B.out_morphisms(j.obj(a)):
                if B.tgt(f) in in_a:
                    continue
                for g in U.in_morphisms(t.obj(a)):
                    pairs.append((a, g, f))
        pos = {p: k for k, p in enumerate(pairs)}
        uf = _UnionFind(pairs)
        for alpha in A.morphisms:
            a, a2 = A.src(alpha), A.tgt(alpha)
            for f in B.out_morphisms(j.obj(a2)):
                if B.tgt(f) in in_a:
                    continue
                for g in U.in_morphisms(t.obj(a)):
                    uf.union((a, g, B.compose(j.mor(alpha), f)),
                             (a2, U.compose(g, t.mor(alpha)), f), pos.__getitem__)
        name_of = {}
        reps = []
        for root, members in uf.classes().items():
            a, g, f = min(members, key=pos.__getitem__)
            name = tag + f if U.is_identity(g) else f"{g}|{tag}{f}"
            mors.append((name, U.src(g), tag + B.tgt(f)))
            reps.append((name, (a, g, f)))
            crossing[name] = (i, g, f)
            for p in members:
                name_of[p] = name
        for name, (a, g, f) in reps:
            for k in U.in_morphisms(U.src(g)):
                if not U.is_identity(k):
                    table[(k, name)] = name_of[(a, U.compose(k, g), f)]
            for h in B.out_morphisms(B.tgt(f)):
                if not B.is_identity(h):
                    table[(name, tag + h)] = name_of[(a, g, B.compose(f, h))]
        for m in B.morphisms:
            if m not in mm:
                s = B.src(m)
                a = in_a[s]
                mm[m] = name_of[(a, U.identity(t.obj(a)), m)]
        cell_maps.append((B, om, mm))
    P = FinCat(objs, mors, table, check=False)
    leg = FinFunctor(U, P, {x: x for x in U.objects}, {m: m for m in U.morphisms}, check=False)
    cell_legs = [FinFunctor(B, P, om, mm, check=False) for B, om, mm in cell_maps]
    return P, leg, cell_legs, crossing


def pushout_of_cells(U: FinCat, cells: list, cap: int = DEFAULT_CAP) -> tuple:
    """The same pushout through the general colimit machinery (slow, for checking)."""
    if not cells:
        return U, identity_functor(U)
    A_total, a_inj = coproduct([j.source for j, _ in cells])
    B_total, b_inj = coproduct([j.target for j, _ in cells])
    om, mm = {}, {}
    tm_o, tm_m = {}, {}
    for k, (j, t) in enumerate(cells):
        for a in j.source.objects:
            om[a_inj[k].obj(a)] = b_inj[k].obj(j.obj(a))
            tm_o[a_inj[k].obj(a)] = t.obj(a)
        for m in j.source.morphisms:
            mm[a_inj[k].mor(m)] = b_inj[k].mor(j.mor(m))
            tm_m[a_inj[k].mor(m)] = t.mor(m)
    jj = FinFunctor(A_total, B_total, om, mm)
    tt = FinFunctor(A_total, U, tm_o, tm_m)
    P, _, leg = pushout(jj, tt, cap)
    return P, leg


@dataclass
class CellRecord:
    """Stages of a relative cell complex ``X = U_0 -> U_1 -> ... -> U_k``.

    Each stage is ``(attached, category, stage_functor)`` where ``attached``
    lists ``(generator label, generator, top, bottom)``.
    """

    source: FinCat
    stages: list = field(default_factory=list)
    composite: FinFunctor = None

    def categories(self) -> list:
        return [self.source] + [cat for _, cat, _ in self.stages]

    def validate(self, cap: int = DEFAULT_CAP) -> list:
        """Rebuild every stage as a pushout in Cat and compare; returns problems."""
        problems = []
        cur = self.source
        chain = identity_functor(cur)
        for k, (attached, P, leg) in enumerate(self.stages):
            if leg.source != cur or leg.target != P:
                problems.append(f"stage {k} has mismatched endpoints")
            Q, _ = pushout_of_cells(cur, [(j, t) for _, j, t, _ in attached], cap)
            if not are_isomorphic(P, Q):
                problems.append(f"stage {k} is not the pushout of its cells")
            chain = chain.then(leg)
            cur = P
        if self.composite is not None and chain != self.composite:
            problems.append("composite differs from the chain of stages")
        return problems


def soa_factorize(f: FinFunctor, gens="J", max_dim: int = None, max_stages: int = 16,
                  cap: int = DEFAULT_CAP, budget=None) -> tuple:
    """Factor ``f`` as a relative cell complex followed by a map with the RLP.

    Each stage attaches one cell per square that has no lift and pushes out
    their coproduct.  Returns ``(record, q)`` with ``record.composite`` then
    ``q`` equal to ``f``.  Raises :class:`StageBudgetExceeded` carrying the
    partial record when ``max_stages`` runs out, and :class:`GrowthExceeded`
    when a stage would hold more than ``cap`` objects.
    """
    if max_dim is None:
        max_dim = default_max_dim(f)
    budget = as_budget(budget)
    X = f.source
    record = CellRecord(X)
    cur, q = X, f
    composite = identity_functor(X)
    for stage in range(max_stages + 1):
        bad = failing_squares(q, gens, max_dim, budget)
        if not bad:
            record.composite = composite
            return record, q
        if stage == max_stages:
            break
        new_objects = sum(len(j.target.objects) - len(j.source.objects) for _, j, _, _ in bad)
        if len(cur.objects) + new_objects > cap:
            raise GrowthExceeded(cap)
        P, leg, cell_legs, crossing = attach_cells(cur, [(j, t) for _, j, t, _ in bad], f"s{stage}c")
        om = {x: q.obj(x) for x in cur.objects}
        mm = {m: q.mor(m) for m in cur.morphisms}
        for (_, j, t, b), cl in zip(bad, cell_legs):
            for y in j.target.objects:
                om.setdefault(cl.obj(y), b.obj(y))
            for m in j.target.morphisms:
                n = cl.mor(m)
                if not P.is_identity(n):
                    mm.setdefault(n, b.mor(m))
        for n, (idx, g, fm) in crossing.items():
            mm.setdefault(n, q.target.compose(q.mor(g), bad[idx][3].mor(fm)))
        q = FinFunctor(P, f.target, om, mm, check=False)
        record.stages.append((bad, P, leg))
        composite = composite.then(leg)
        cur = P
    record.composite = composite
    raise StageBudgetExceeded(max_stages, record, q)


# -- smallness --------------------------------------------------------------------


@dataclass
class SmallnessVerdict:
    bijective: bool
    colimit_size: int
    direct_size: int
    witness: object = None

    def __bool__(self):
        return self.bijective


def chain_diagram(categories: list, functors: list) -> DiagramInCat:
    """Sequential diagram ``X_0 -> X_1 -> ...`` indexed by a finite chain."""
    n = len(categories)
    if len(functors) != n - 1:
        raise InvalidFunctor("a chain of n categories needs n - 1 functors")
    I = chain_category(n)
    objs = list(I.objects)
    nodes = {objs[k]: categories[k] for k in range(n)}
    edges = {}
    for u in I.morphisms:
        s, t = objs.index(I.src(u)), objs.index(I.tgt(u))
        F = functors[s]
        for k in range(s + 1, t):
            F = F.then(functors[k])
        edges[u] = F
    return DiagramInCat(I, nodes, edges)


def smallness_witness(C: FinCat, categories: list, functors: list,
                      cap: int = DEFAULT_CAP, budget=None) -> SmallnessVerdict:
    """Compare ``colim Hom(C, X_k)`` with ``Hom(C, colim X_k)`` for a finite chain."""
    D = chain_diagram(categories, functors)
    L, cocone = finite_colimit(D, cap)
    objs = list(D.index.objects)
    elements = []
    for k, X in enumerate(categories):
        for F in enumerate_functors(C, X, budget):
            elements.append((k, F))
    index = {(k, F): n for n, (k, F) in enumerate(elements)}
    uf = _UnionFind(range(len(elements)))
    for n, (k, F) in enumerate(elements):
        if k + 1 < len(categories):
            uf.union(n, index[(k + 1, F.then(functors[k]))])
    classes = uf.classes()
    image = {}
    for root, members in classes.items():
        k, F = elements[root]
        image[root] = F.then(cocone[objs[k]])
    direct = enumerate_functors(C, L, budget)
    hit = set(image.values())
    if len(hit) != len(image):
        seen = {}
        for root, G in image.items():
            if G in seen:
                return SmallnessVerdict(False, len(classes), len(direct),
                                        ("identified", elements[seen[G]][1], elements[root][1]))
            seen[G] = root
    missing = [G for G in direct if G not in hit]
    if missing:
        return SmallnessVerdict(False, len(classes), len(direct), ("missed", missing[0]))
    return SmallnessVerdict(True, len(classes), len(direct))
