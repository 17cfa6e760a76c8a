"""Finite categories, functors between them, and structural predicates.

A :class:`FinCat` stores objects, named non-identity morphisms and an explicit
composition table.  Identities are implicit and named ``id:<object>``.
``compose(f, g)`` is diagrammatic: ``f`` first, then ``g`` (i.e. ``g o f``).
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from ._search import as_budget, backtrack
from .errors import (
    AssociativityViolation,
    DanglingEndpoint,
    DuplicateName,
    InvalidCategory,
    InvalidFunctor,
    MissingComposite,
    NotAnEmbedding,
    UnitViolation,
)

ID_PREFIX = "id:"


def identity_name(obj: str) -> str:
    return ID_PREFIX + obj


class FinCat:
    """A finite category with an explicit composition table.

    Parameters
    ----------
    objects:
        Object identifiers (strings), in the order used for every
        deterministic enumeration.
    morphisms:
        ``(name, src, tgt)`` records for the non-identity morphisms.
    compose:
        Either a mapping ``(first, second) -> result`` or an iterable of
        ``(first, second, result)`` triples.  ``result`` is ``second o first``.
        Entries involving identities are optional; when present they must
        agree with the unit laws.
    check:
        Validate totality, associativity and unit laws.  Internal
        constructions whose output is correct by construction pass
        ``check=False``.
    """

    def __init__(self, objects=(), morphisms=(), compose=(), *, check: bool = True):
        objs = tuple(objects)
        if check and len(set(objs)) != len(objs):
            raise DuplicateName(f"duplicate object names in {objs!r}")
        self.objects: tuple = objs
        self._objset = frozenset(objs)
        src: dict = {}
        tgt: dict = {}
        ident: dict = {}
        for x in objs:
            i = ID_PREFIX + x
            src[i] = tgt[i] = x
            ident[i] = x
        names = []
        for rec in morphisms:
            name, s, t = rec
            if check:
                if name in src:
                    raise DuplicateName(f"duplicate or reserved morphism name {name!r}")
                if s not in self._objset:
                    raise DanglingEndpoint(f"source of {name}", s)
                if t not in self._objset:
                    raise DanglingEndpoint(f"target of {name}", t)
            src[name] = s
            tgt[name] = t
            names.append(name)
        self.morphisms: tuple = tuple(names)
        self._src = src
        self._tgt = tgt
        self._ident = ident
        hom: dict = {}
        out: dict = {x: [ID_PREFIX + x] for x in objs}
        inc: dict = {x: [ID_PREFIX + x] for x in objs}
        for x in objs:
            hom[(x, x)] = [ID_PREFIX + x]
        for m in names:
            hom.setdefault((src[m], tgt[m]), []).append(m)
            out[src[m]].append(m)
            inc[tgt[m]].append(m)
        self._hom = {k: tuple(v) for k, v in hom.items()}
        self._out = {k: tuple(v) for k, v in out.items()}
        self._in = {k: tuple(v) for k, v in inc.items()}

        table: dict = {}
        entries = compose.items() if isinstance(compose, Mapping) else (
            ((a, b), c) for a, b, c in compose)
        for (a, b), c in entries:
            if check:
                for m in (a, b, c):
                    if m not in src:
                        raise DanglingEndpoint(f"composition entry ({a}, {b}) -> {c}", m)
                if tgt[a] != src[b]:
                    raise InvalidCategory(f"composition entry for non-composable pair ({a}, {b})")
                if src[c] != src[a] or tgt[c] != tgt[b]:
                    raise InvalidCategory(
                        f"composite {c} of ({a}, {b}) has endpoints "
                        f"{src[c]}->{tgt[c]}, expected {src[a]}->{tgt[b]}")
            if a in ident:
                if check and c != b:
                    raise UnitViolation(a, b)
                continue
            if b in ident:
                if check and c != a:
                    raise UnitViolation(b, a)
                continue
            if check and (a, b) in table and table[(a, b)] != c:
                raise InvalidCategory(f"conflicting composites for ({a}, {b})")
            table[(a, b)] = c
        self._table = table
        if check:
            self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        table = self._table
        for f in self.morphisms:
            for g in self._out[self._tgt[f]]:
                if g in self._ident:
                    continue
                if (f, g) not in table:
                    raise MissingComposite(f, g)
        for (f, g), fg in table.items():
            for h in self._out[self._tgt[g]]:
                if h in self._ident:
                    continue
                if self.compose(fg, h) != self.compose(f, self.compose(g, h)):
                    raise AssociativityViolation(f, g, h)

    # -- basic structure ----------------------------------------------------

    def src(self, f: str) -> str:
        return self._src[f]

    def tgt(self, f: str) -> str:
        return self._tgt[f]

    def identity(self, x: str) -> str:
        if x not in self._objset:
            raise KeyError(x)
        return ID_PREFIX + x

    def is_identity(self, f: str) -> bool:
        return f in self._ident

    def has_object(self, x) -> bool:
        return x in self._objset

    def has_morphism(self, f) -> bool:
        return f in self._src

    def hom(self, x: str, y: str) -> tuple:
        return self._hom.get((x, y), ())

    def out_morphisms(self, x: str) -> tuple:
        return self._out[x]

    def in_morphisms(self, x: str) -> tuple:
        return self._in[x]

    @property
    def arrows(self) -> tuple:
        """All morphisms, identities first (in object order)."""
        return tuple(ID_PREFIX + x for x in self.objects) + self.morphisms

    def compose(self, first: str, second: str) -> str:
        if self._tgt[first] != self._src[second]:
            raise ValueError(f"{first} and {second} are not composable")
        if first in self._ident:
            return second
        if second in self._ident:
            return first
        return self._table[(first, second)]

    def composable_pairs(self) -> Iterator[tuple]:
        """Every composable ``(first, second)`` pair, identities included."""
        for f in self.arrows:
            for g in self._out[self._tgt[f]]:
                yield f, g

    def nonidentity_triples(self) -> Iterator[tuple]:
        """``(f, g, g o f)`` for composable pairs of non-identity morphisms."""
        for (f, g), h in self._table.items():
            yield f, g, h

    def composition_table(self) -> dict:
        return dict(self._table)

    def __repr__(self) -> str:
        return f"FinCat({len(self.objects)} objects, {len(self.morphisms)} non-identity morphisms)"

    def _key(self):
        key = self.__dict__.get("_cached_key")
        if key is not None:
            return key
        key = self.__dict__["_cached_key"] = (
            frozenset(self.objects),
            frozenset((m, self._src[m], self._tgt[m]) for m in self.morphisms),
            frozenset(self._table.items()),
        )
        return key

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinCat):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    # -- derived categories -------------------------------------------------

    def op(self) -> "FinCat":
        return FinCat(
            self.objects,
            [(m, self._tgt[m], self._src[m]) for m in self.morphisms],
            {(g, f): h for (f, g), h in self._table.items()},
            check=False,
        )

    def full_subcategory(self, objects: Iterable[str]) -> tuple:
        """Full subcategory on ``objects`` plus its inclusion functor."""
        keep = set(objects)
        objs = [x for x in self.objects if x in keep]
        mors = [m for m in self.morphisms if self._src[m] in keep and self._tgt[m] in keep]
        ms = set(mors)
        table = {k: v for k, v in self._table.items() if k[0] in ms and k[1] in ms}
        sub = FinCat(objs, [(m, self._src[m], self._tgt[m]) for m in mors], table, check=False)
        inc = FinFunctor(sub, self, {x: x for x in objs}, {m: m for m in mors}, check=False)
        return sub, inc


# -- small constructors -------------------------------------------------------


def empty_category() -> FinCat:
    return FinCat()


def terminal_category(name: str = "*") -> FinCat:
    return FinCat([name])


def discrete_category(names: Iterable[str]) -> FinCat:
    return FinCat(list(names))


def arrow_category(a: str = "a", b: str = "b", f: str = "f") -> FinCat:
    return FinCat([a, b], [(f, a, b)])


def chain_category(n: int) -> FinCat:
    """The ordinal ``0 < 1 < ... < n-1`` as a category."""
    objs = [str(i) for i in range(n)]
    mors = [(f"{i}<{j}", str(i), str(j)) for i in range(n) for j in range(i + 1, n)]
    table = {(f"{i}<{j}", f"{j}<{k}"): f"{i}<{k}"
             for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)}
    return FinCat(objs, mors, table, check=False)


def category_from_table(objects, morphisms, compose) -> FinCat:
    return FinCat(objects, morphisms, compose)


# -- functors -----------------------------------------------------------------


class FinFunctor:
    """A functor between finite categories.

    ``morphism_map`` may omit identities; they are filled in.
    """

    def __init__(self, source: FinCat, target: FinCat, object_map: Mapping,
                 morphism_map: Mapping = None, *, check: bool = True):
        self.source = source
        self.target = target
        om = dict(object_map)
        mm = {}
        for x in source.objects:
            if x not in om:
                raise InvalidFunctor(f"object {x!r} is not mapped")
            mm[ID_PREFIX + x] = ID_PREFIX + om[x]
        for k, v in (morphism_map or {}).items():
            if k in source._ident:
                if check and v != mm[k]:
                    raise InvalidFunctor(f"identity {k} must map to {mm[k]}, got {v}")
                continue
            mm[k] = v
        self.object_map = om
        self.morphism_map = mm
        if check:
            self.validate()

    def validate(self) -> None:
        C, D = self.source, self.target
        om, mm = self.object_map, self.morphism_map
        for x in C.objects:
            if not D.has_object(om[x]):
                raise InvalidFunctor(f"{x!r} maps to unknown object {om[x]!r}")
        for f in C.morphisms:
            if f not in mm:
                raise InvalidFunctor(f"morphism {f!r} is not mapped")
            g = mm[f]
            if not D.has_morphism(g):
                raise InvalidFunctor(f"{f!r} maps to unknown morphism {g!r}")
            if D.src(g) != om[C.src(f)] or D.tgt(g) != om[C.tgt(f)]:
                raise InvalidFunctor(f"{f!r} maps to {g!r} with wrong endpoints")
        for f, g, h in C.nonidentity_triples():
            if D.compose(mm[f], mm[g]) != mm[h]:
                raise InvalidFunctor(f"composition of ({f}, {g}) is not preserved")

    def obj(self, x: str) -> str:
        return self.object_map[x]

    def mor(self, f: str) -> str:
        return self.morphism_map[f]

    def then(self, other: "FinFunctor") -> "FinFunctor":
        """``other o self``."""
        if other.source is not self.target and other.source != self.target:
            raise InvalidFunctor("functors are not composable")
        return FinFunctor(
            self.source, other.target,
            {x: other.object_map[y] for x, y in self.object_map.items()},
            {f: other.morphism_map[g] for f, g in self.morphism_map.items()},
            check=False,
        )

    def op(self) -> "FinFunctor":
        return FinFunctor(self.source.op(), self.target.op(), self.object_map,
                          self.morphism_map, check=False)

    def is_injective_on_objects(self) -> bool:
        return len(set(self.object_map.values())) == len(self.object_map)

    def is_faithful(self) -> bool:
        seen = set()
        for f, g in self.morphism_map.items():
            key = (self.source.src(f), self.source.tgt(f), g)
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_full(self) -> bool:
        C, D = self.source, self.target
        for x in C.objects:
            for y in C.objects:
                image = {self.morphism_map[f] for f in C.hom(x, y)}
                if len(image) != len(D.hom(self.object_map[x], self.object_map[y])):
                    return False
        return True

    def is_embedding(self) -> bool:
        return self.is_injective_on_objects() and self.is_faithful()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinFunctor):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.object_map == other.object_map
                and self.morphism_map == other.morphism_map)

    def __hash__(self):
        return hash((frozenset(self.object_map.items()), frozenset(self.morphism_map.items())))

    def __repr__(self) -> str:
        return f"FinFunctor({self.source!r} -> {self.target!r})"


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, {x: x for x in C.objects}, {m: m for m in C.morphisms}, check=False)


def constant_functor(C: FinCat, D: FinCat, y: str) -> FinFunctor:
    return FinFunctor(C, D, {x: y for x in C.objects},
                      {m: D.identity(y) for m in C.morphisms}, check=False)


# -- structural predicates ----------------------------------------------------


def is_acyclic(C: FinCat) -> bool:
    """No non-identity endomorphisms and no antiparallel pairs."""
    for m in C.morphisms:
        s, t = C.src(m), C.tgt(m)
        if s == t or C.hom(t, s):
            return False
    return True


def is_sieve(F: FinFunctor, mode: str = "sieve") -> bool:
    """Whether the embedding ``F`` is a sieve (``mode='sieve'``) or a cosieve."""
    if mode not in ("sieve", "cosieve"):
        raise ValueError(f"mode must be 'sieve' or 'cosieve', not {mode!r}")
    if not F.is_embedding():
        raise NotAnEmbedding("functor is not injective on objects and faithful")
    D = F.target
    image_objs = set(F.object_map.values())
    image_mors = set(F.morphism_map.values())
    for g in D.arrows:
        end, other = (D.tgt(g), D.src(g)) if mode == "sieve" else (D.src(g), D.tgt(g))
        if end in image_objs and (other not in image_objs or g not in image_mors):
            return False
    return True


def cosieve_generated(C: FinCat, S: Iterable[str]) -> FinFunctor:
    """Smallest cosieve containing ``S``, as an embedding into ``C``."""
    seen = set()
    queue = deque(S)
    while queue:
        x = queue.popleft()
        if x in seen:
            continue
        seen.add(x)
        for m in C.out_morphisms(x):
            queue.append(C.tgt(m))
    return C.full_subcategory(seen)[1]


def smallness_bound(C: FinCat) -> int:
    """|objects| + |morphisms| + |composable pairs|, identities counted."""
    pairs = sum(len(C.in_morphisms(x)) * len(C.out_morphisms(x)) for x in C.objects)
    return len(C.objects) + len(C.arrows) + pairs


def coproduct(parts: Sequence[FinCat]) -> tuple:
    """Disjoint union with ``"<index>.<name>"`` identifiers, plus injections."""
    objs, mors, table = [], [], {}
    for i, P in enumerate(parts):
        objs.extend(f"{i}.{x}" for x in P.objects)
        mors.extend((f"{i}.{m}", f"{i}.{P.src(m)}", f"{i}.{P.tgt(m)}") for m in P.morphisms)
        table.update({(f"{i}.{a}", f"{i}.{b}"): f"{i}.{c}"
                      for (a, b), c in P.composition_table().items()})
    total = FinCat(objs, mors, table, check=False)
    injections = [
        FinFunctor(P, total, {x: f"{i}.{x}" for x in P.objects},
                   {m: f"{i}.{m}" for m in P.morphisms}, check=False)
        for i, P in enumerate(parts)
    ]
    return total, injections


# -- functor search -----------------------------------------------------------


def _object_order(C: FinCat, domain_size) -> list:
    """Objects ordered so each is as connected as possible to earlier ones."""
    placed: list = []
    rest = list(C.objects)
    neighbours = {x: set() for x in C.objects}
    for m in C.morphisms:
        s, t = C.src(m), C.tgt(m)
        neighbours[s].add(t)
        neighbours[t].add(s)
    placed_set = set()
    while rest:
        best = max(rest, key=lambda x: (len(neighbours[x] & placed_set),
                                        -domain_size(x), -rest.index(x)))
        rest.remove(best)
        placed.append(best)
        placed_set.add(best)
    return placed


def _functor_problem(C: FinCat, D: FinCat, object_domains=None, morphism_domains=None,
                     injective: bool = False):
    object_domains = object_domains or {}
    morphism_domains = morphism_domains or {}
    order = _object_order(C, lambda x: len(object_domains.get(x, D.objects)))
    variables: list = []
    position: dict = {}
    placed = set()
    for x in order:
        position[("o", x)] = len(variables)
        variables.append(("o", x))
        placed.add(x)
        for m in C.morphisms:
            if ("m", m) not in position and C.src(m) in placed and C.tgt(m) in placed:
                position[("m", m)] = len(variables)
                variables.append(("m", m))

    def domain(var, a):
        kind, name = var
        if kind == "o":
            return object_domains.get(name, D.objects)
        hom = D.hom(a[("o", C.src(name))], a[("o", C.tgt(name))])
        allowed = morphism_domains.get(name)
        if allowed is not None:
            return [g for g in hom if g in allowed]
        return hom

    checks: dict = {}

    def attach(var_list, fn):
        last = max(var_list, key=position.__getitem__)
        checks.setdefault(last, []).append(fn)

    for f, g, h in C.nonidentity_triples():
        vs = [("m", f), ("m", g)]
        if C.is_identity(h):
            def chk(a, f=f, g=g, x=C.src(f)):
                return D.compose(a[("m", f)], a[("m", g)]) == ID_PREFIX + a[("o", x)]
        else:
            vs.append(("m", h))

            def chk(a, f=f, g=g, h=h):
                return D.compose(a[("m", f)], a[("m", g)]) == a[("m", h)]
        attach(vs, chk)

    if injective:
        for idx, x in enumerate(order):
            earlier = order[:idx]

            def chk(a, x=x, earlier=earlier):
                y = a[("o", x)]
                if len(C.hom(x, x)) != len(D.hom(y, y)):
                    return False
                for e in earlier:
                    z = a[("o", e)]
                    if z == y:
                        return False
                    if len(C.hom(x, e)) != len(D.hom(y, z)) or len(C.hom(e, x)) != len(D.hom(z, y)):
                        return False
                return True
            checks.setdefault(("o", x), []).append(chk)
        by_hom: dict = {}
        for m in C.morphisms:
            by_hom.setdefault((C.src(m), C.tgt(m)), []).append(m)
        for ms in by_hom.values():
            for idx, m in enumerate(ms):
                earlier = [e for e in ms[:idx]]

                def chk(a, m=m, earlier=earlier):
                    v = a[("m", m)]
                    if D.is_identity(v):
                        return False
                    return all(a[("m", e)] != v for e in earlier)
                attach([("m", m)] + [("m", e) for e in earlier], chk)
    return variables, domain, checks


def _assignment_to_functor(C, D, a) -> FinFunctor:
    return FinFunctor(C, D, {x: a[("o", x)] for x in C.objects},
                      {m: a[("m", m)] for m in C.morphisms}, check=False)


def iter_functors(C: FinCat, D: FinCat, budget=None, object_domains=None,
                  morphism_domains=None) -> Iterator[FinFunctor]:
    """Lazily enumerate functors ``C -> D`` (optionally with restricted images)."""
    variables, domain, checks = _functor_problem(C, D, object_domains, morphism_domains)
    for a in backtrack(variables, domain, checks, budget):
        yield _assignment_to_functor(C, D, a)


def enumerate_functors(C: FinCat, D: FinCat, budget=None) -> list:
    """All functors ``C -> D`` in a deterministic order."""
    return list(iter_functors(C, D, budget))


def count_functors(C: FinCat, D: FinCat, budget=None) -> int:
    variables, domain, checks = _functor_problem(C, D)
    return sum(1 for _ in backtrack(variables, domain, checks, budget))


def _invariants(C: FinCat):
    sizes = sorted(
        (len(C.hom(x, x)), sorted(len(C.hom(x, y)) for y in C.objects),
         sorted(len(C.hom(y, x)) for y in C.objects))
        for x in C.objects)
    return len(C.objects), len(C.morphisms), sizes


def find_isomorphism(C: FinCat, D: FinCat, budget=None) -> Optional[FinFunctor]:
    """An invertible functor ``C -> D`` or ``None``."""
    if _invariants(C) != _invariants(D):
        return None

    def signature(K, x):
        return (len(K.hom(x, x)), sorted(len(K.hom(x, y)) for y in K.objects),
                sorted(len(K.hom(y, x)) for y in K.objects))

    dsig = {y: signature(D, y) for y in D.objects}
    doms = {x: [y for y in D.objects if dsig[y] == signature(C, x)] for x in C.objects}
    variables, domain, checks = _functor_problem(C, D, doms, injective=True)
    for a in backtrack(variables, domain, checks, budget):
        return _assignment_to_functor(C, D, a)
    return None


def find_isomorphism_under(F: FinFunctor, G: FinFunctor, budget=None) -> Optional[FinFunctor]:
    """An isomorphism ``phi`` of targets with ``phi o F = G``, or ``None``."""
    if F.source != G.source:
        raise InvalidFunctor("functors must share their source")
    Z, W = F.target, G.target
    if _invariants(Z) != _invariants(W):
        return None
    odom, mdom = {}, {}
    for x in F.source.objects:
        if odom.setdefault(F.obj(x), [G.obj(x)]) != [G.obj(x)]:
            return None
    for m in F.source.morphisms:
        z, w = F.mor(m), G.mor(m)
        if Z.is_identity(z) or W.is_identity(w):
            if not (Z.is_identity(z) and W.is_identity(w)):
                return None
            continue
        if mdom.setdefault(z, {w}) != {w}:
            return None
    variables, domain, checks = _functor_problem(Z, W, odom, mdom, injective=True)
    for a in backtrack(variables, domain, checks, budget):
        phi = _assignment_to_functor(Z, W, a)
        if F.then(phi) == G:
            return phi
    return None


def are_isomorphic(C: FinCat, D: FinCat, budget=None) -> bool:
    return find_isomorphism(C, D, budget) is not None


def is_isomorphism(F: FinFunctor) -> bool:
    C, D = F.source, F.target
    return (len(C.objects) == len(D.objects) and len(C.morphisms) == len(D.morphisms)
            and len(set(F.morphism_map.values())) == len(C.arrows))


def inverse_functor(F: FinFunctor) -> FinFunctor:
    if not is_isomorphism(F):
        raise InvalidFunctor("functor is not an isomorphism")
    return FinFunctor(F.target, F.source, {v: k for k, v in F.object_map.items()},
                      {v: k for k, v in F.morphism_map.items()}, check=False)


# -- Dwyer maps ---------------------------------------------------------------


@dataclass
class DwyerWitness:
    """Decomposition ``A -f-> C' -j-> C`` with retraction and transformation."""

    inclusion_part: FinFunctor   # f: A -> C'
    cosieve_part: FinFunctor     # j: C' -> C
    retraction: FinFunctor       # r: C' -> A
    transformation: dict         # c -> component (f r)(c) -> c, a morphism of C'

    def __bool__(self) -> bool:
        return True

    def problems(self, F: FinFunctor) -> list:
        """Independent re-check of every witness condition against ``F``."""
        out = []
        f, j, r, eta = self.inclusion_part, self.cosieve_part, self.retraction, self.transformation
        Cp = j.source
        if f.then(j) != F:
            out.append("j o f differs from the given functor")
        try:
            if not is_sieve(j, "cosieve"):
                out.append("j is not a cosieve")
        except NotAnEmbedding:
            out.append("j is not an embedding")
        if f.then(r) != identity_functor(F.source):
            out.append("r o f is not the identity")
        fr = r.then(f)
        for c in Cp.objects:
            e = eta.get(c)
            if e is None or Cp.src(e) != fr.obj(c) or Cp.tgt(e) != c:
                out.append(f"component at {c} has wrong type")
                return out
        for g in Cp.arrows:
            c, d = Cp.src(g), Cp.tgt(g)
            if Cp.compose(fr.mor(g), eta[d]) != Cp.compose(eta[c], g):
                out.append(f"naturality fails at {g}")
        for a in F.source.objects:
            if not Cp.is_identity(eta[f.obj(a)]):
                out.append(f"component at image of {a} is not an identity")
        return out


@dataclass
class NotDwyer:
    stage: str          # "not-a-sieve" | "no-retraction-transformation-pair"
    reason: str = ""

    def __bool__(self) -> bool:
        return False


def _upclosed_supersets(C: FinCat, base: frozenset, budget) -> Iterator[frozenset]:
    rest = [x for x in C.objects if x not in base]
    for size in range(len(rest) + 1):
        for extra in itertools.combinations(rest, size):
            budget.spend()
            U = base | set(extra)
            if all(C.tgt(m) in U for x in extra for m in C.out_morphisms(x)):
                yield frozenset(U)


def _dwyer_search(F: FinFunctor, U: frozenset, budget):
    A, C = F.source, F.target
    Cp, j = C.full_subcategory(U)
    inv_obj = {v: k for k, v in F.object_map.items()}
    inv_mor = {v: k for k, v in F.morphism_map.items()}
    below_count = {a: sum(1 for b in A.objects if A.hom(b, a)) for a in A.objects}
    ranked = sorted(A.objects, key=lambda a: -below_count[a])

    order = [x for x in Cp.objects if x in inv_obj]
    seen = set(order)
    queue = deque(order)
    while queue:
        x = queue.popleft()
        for m in Cp.out_morphisms(x) + Cp.in_morphisms(x):
            for y in (Cp.src(m), Cp.tgt(m)):
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
    order += [x for x in Cp.objects if x not in seen]

    variables: list = []
    position: dict = {}
    placed = set()
    for x in order:
        for v in (("o", x), ("e", x)):
            position[v] = len(variables)
            variables.append(v)
        placed.add(x)
        for m in Cp.morphisms:
            if ("m", m) not in position and Cp.src(m) in placed and Cp.tgt(m) in placed:
                position[("m", m)] = len(variables)
                variables.append(("m", m))

    def domain(var, a):
        kind, name = var
        if kind == "o":
            if name in inv_obj:
                return (inv_obj[name],)
            return [b for b in ranked if Cp.hom(F.obj(b), name)]
        if kind == "e":
            if name in inv_obj:
                return (Cp.identity(name),)
            return Cp.hom(F.obj(a[("o", name)]), name)
        if name in inv_mor:
            return (inv_mor[name],)
        return A.hom(a[("o", Cp.src(name))], a[("o", Cp.tgt(name))])

    checks: dict = {}

    def attach(vs, fn):
        checks.setdefault(max(vs, key=position.__getitem__), []).append(fn)

    for f, g, h in Cp.nonidentity_triples():
        if Cp.is_identity(h):
            def chk(a, f=f, g=g, x=Cp.src(f)):
                return A.compose(a[("m", f)], a[("m", g)]) == ID_PREFIX + a[("o", x)]
            attach([("m", f), ("m", g)], chk)
        else:
            def chk(a, f=f, g=g, h=h):
                return A.compose(a[("m", f)], a[("m", g)]) == a[("m", h)]
            attach([("m", f), ("m", g), ("m", h)], chk)
    for g in Cp.morphisms:
        c, d = Cp.src(g), Cp.tgt(g)

        def nat(a, g=g, c=c, d=d):
            return Cp.compose(F.mor(a[("m", g)]), a[("e", d)]) == Cp.compose(a[("e", c)], g)
        attach([("m", g), ("e", c), ("e", d)], nat)

    for a in backtrack(variables, domain, checks, budget):
        r = FinFunctor(Cp, A, {x: a[("o", x)] for x in Cp.objects},
                       {m: a[("m", m)] for m in Cp.morphisms}, check=False)
        f = FinFunctor(A, Cp, F.object_map, F.morphism_map, check=False)
        eta = {x: a[("e", x)] for x in Cp.objects}
        return DwyerWitness(f, j, r, eta)
    return None


def is_dwyer(F: FinFunctor, budget=None):
    """Search for a Dwyer decomposition of the sieve ``F``.

    Every cosieve containing the image is tried, smallest first, starting
    with the generated one.  Returns a :class:`DwyerWitness` or a falsy
    :class:`NotDwyer`.
    """
    budget = as_budget(budget)
    try:
        sieve = is_sieve(F, "sieve")
    except NotAnEmbedding as exc:
        return NotDwyer("not-a-sieve", str(exc))
    if not sieve:
        return NotDwyer("not-a-sieve", "image is not closed under incoming morphisms")
    C = F.target
    base = frozenset(cosieve_generated(C, F.object_map.values()).source.objects)
    for U in _upclosed_supersets(C, base, budget):
        w = _dwyer_search(F, U, budget)
        if w is not None:
            return w
    return NotDwyer("no-retraction-transformation-pair",
                    "no cosieve containing the image admits a retraction with transformation")
