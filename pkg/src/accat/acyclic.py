"""Acyclic reflection and colimits of acyclic categories."""

from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import DEFAULT_CAP, DiagramInCat, RelationPair, colimit_relation, quotient
from .errors import ConditionsViolated, GrowthExceeded, NotAcyclicInput
from .fincat import (FinCat, FinFunctor, count_functors, discrete_category, identity_functor,
                     is_acyclic, is_isomorphism, terminal_category, arrow_category,
                     chain_category)


@dataclass
class ReflectionResult:
    quotient: FinCat
    unit: FinFunctor
    rounds: int


def collapse_relation(C: FinCat) -> RelationPair:
    """Objects joined by morphisms both ways, and every morphism among them sent to an identity.

    Endomorphisms count (``x == y``), so a one-object group collapses too.
    """
    obj_pairs, seq_pairs = [], []
    for x in C.objects:
        for y in C.objects:
            there, back = C.hom(x, y), C.hom(y, x)
            if not there or not back:
                continue
            if x != y:
                obj_pairs.append((x, y))
            for f in there:
                if not C.is_identity(f):
                    seq_pairs.append(((f,), (C.identity(x),)))
    return RelationPair(obj_pairs, seq_pairs)


def reflect(C: FinCat, cap: int = DEFAULT_CAP) -> ReflectionResult:
    """The acyclic reflection ``p(C)`` with its unit ``C -> p(C)``.

    The collapse is repeated until the result is acyclic; ``rounds`` counts
    the quotient passes (1 when a single pass suffices).
    """
    unit = identity_functor(C)
    current = C
    rounds = 0
    while True:
        rounds += 1
        try:
            current, q = quotient(current, collapse_relation(current), cap)
        except GrowthExceeded as exc:
            raise GrowthExceeded(cap) from exc
        unit = unit.then(q)
        if is_acyclic(current):
            return ReflectionResult(current, unit, rounds)


def factor_through_unit(result: ReflectionResult, F: FinFunctor) -> FinFunctor:
    """The unique ``G: p(C) -> D`` with ``G o unit = F`` for acyclic ``D``."""
    unit = result.unit
    if F.source != unit.source:
        raise ValueError("functor must start at the reflected category")
    om, mm = {}, {}
    for x in unit.source.objects:
        y = unit.obj(x)
        if om.setdefault(y, F.obj(x)) != F.obj(x):
            raise ConditionsViolated(f"functor separates objects collapsed into {y!r}")
    for m in unit.source.morphisms:
        n = unit.mor(m)
        target = F.mor(m)
        if result.quotient.is_identity(n):
            if not F.target.is_identity(target):
                raise ConditionsViolated(f"functor keeps {m!r}, which the reflection collapses")
            continue
        if mm.setdefault(n, target) != target:
            raise ConditionsViolated(f"functor separates morphisms collapsed into {n!r}")
    return FinFunctor(result.quotient, F.target, om, mm)


def _loop_collapse(total: FinCat, R: RelationPair) -> RelationPair:
    """Extra generators collapsing every cycle that ``R`` creates.

    Objects are grouped by the object part of ``R``; two groups joined by
    paths both ways end up in one object of the reflection, and each arrow
    inside such a strongly connected block becomes an identity.  Adding
    these before saturating keeps the quotient finite when the colimit in
    Cat is not.
    """
    parent = {x: x for x in total.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in R.object_pairs:
        parent[find(x)] = find(y)
    succ: dict = {}
    for m in total.morphisms:
        succ.setdefault(find(total.src(m)), set()).add(find(total.tgt(m)))

    def reach(start):
        seen, stack = set(), [start]
        while stack:
            for nxt in succ.get(stack.pop(), ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return seen

    reachable = {g: reach(g) for g in {find(x) for x in total.objects}}

    def joined(a, b):
        return a == b or (b in reachable[a] and a in reachable[b])

    obj_pairs, seq_pairs = [], []
    for x in total.objects:
        for y in total.objects:
            if x < y and find(x) != find(y) and joined(find(x), find(y)):
                obj_pairs.append((x, y))
    for m in total.morphisms:
        if joined(find(total.src(m)), find(total.tgt(m))):
            seq_pairs.append(((m,), (total.identity(total.src(m)),)))
    return RelationPair(obj_pairs, seq_pairs)


def ac_colimit(D: DiagramInCat, cap: int = DEFAULT_CAP) -> tuple:
    """Colimit in acyclic categories: the reflection of the colimit in Cat.

    Cycles created by the gluing are collapsed while saturating, so a
    colimit that is infinite in Cat can still have a finite reflection.
    """
    for x, node in D.nodes.items():
        if not is_acyclic(node):
            raise NotAcyclicInput(f"diagram node {x!r} is not acyclic")
    total, inj, R = colimit_relation(D)
    L, q = quotient(total, R.union(_loop_collapse(total, R)), cap)
    r = reflect(L, cap)
    return r.quotient, {x: leg.then(q).then(r.unit) for x, leg in inj.items()}


def default_acyclic_targets() -> list:
    """Small acyclic categories used to probe the reflection adjunction."""
    parallel = FinCat(["x", "y"], [("u", "x", "y"), ("v", "x", "y")])
    return [terminal_category(), discrete_category(["x", "y"]),
            arrow_category("x", "y", "u"), parallel, chain_category(2)]


@dataclass
class UnitCounitReport:
    acyclic_input: bool
    unit_is_iso: bool
    hom_counts: list = field(default_factory=list)   # (target repr, |Ac(pC, D)|, |Cat(C, iD)|)
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_unit_counit(C: FinCat, targets=None, budget=None) -> UnitCounitReport:
    """Compare hom-set sizes across the reflection and check the unit on acyclic input."""
    r = reflect(C)
    acyclic = is_acyclic(C)
    unit_iso = is_isomorphism(r.unit)
    report = UnitCounitReport(acyclic, unit_iso)
    if acyclic and not unit_iso:
        report.failures.append("unit is not an isomorphism on acyclic input")
    for D in targets if targets is not None else default_acyclic_targets():
        if not is_acyclic(D):
            report.failures.append(f"target {D!r} is not acyclic")
            continue
        left = count_functors(r.quotient, D, budget)
        right = count_functors(C, D, budget)
        report.hom_counts.append((repr(D), left, right))
        if left != right:
            report.failures.append(f"hom-set sizes differ for {D!r}: {left} != {right}")
    return report
