"""Simplicial complexes, posets, nerves, subdivision and the generating maps I and J.

Complexes are ordered: every simplex is stored as a tuple sorted by the
vertex order, so a complex doubles as a simplicial set whose nondegenerate
simplices are exactly its faces.
"""

from __future__ import annotations

import functools
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ._search import backtrack
from .congruence import DEFAULT_CAP, present_category
from .fincat import FinCat, FinFunctor, is_acyclic


class TruncationWarning(UserWarning):
    """A nerve was cut off at its dimension cap while longer chains exist."""


def simplex_label(members: Sequence[str]) -> str:
    return "{" + ",".join(members) + "}"


class SimplicialComplex:
    """Finite ordered abstract simplicial complex.

    ``simplices`` may list only maximal faces; the downward closure is
    computed, and every vertex becomes a 0-simplex.
    """

    def __init__(self, vertices: Iterable[str], simplices: Iterable[Iterable[str]] = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        self._pos = {v: i for i, v in enumerate(self.vertices)}
        closed = {(v,) for v in self.vertices}
        for s in simplices:
            s = tuple(s)
            if not s:
                raise ValueError("simplices must be nonempty")
            for v in s:
                if v not in self._pos:
                    raise ValueError(f"simplex {s!r} uses unknown vertex {v!r}")
            top = tuple(sorted(set(s), key=self._pos.__getitem__))
            if top in closed:
                continue
            n = len(top)
            for mask in range(1, 1 << n):
                closed.add(tuple(top[i] for i in range(n) if mask >> i & 1))
        self.simplices = tuple(sorted(closed, key=self._key))
        self._set = frozenset(self.simplices)

    def _key(self, s):
        return len(s), [self._pos[v] for v in s]

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_dim(self, n: int) -> list:
        return [s for s in self.simplices if len(s) == n + 1]

    def __contains__(self, simplex) -> bool:
        return tuple(sorted(set(simplex), key=self._pos.get)) in self._set

    def maximal_simplices(self) -> list:
        out = []
        for s in self.simplices:
            ss = set(s)
            if not any(len(t) > len(s) and ss <= set(t) for t in self.simplices):
                out.append(s)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(s) - 1) for s in self.simplices)

    def f_vector(self) -> list:
        return [len(self.of_dim(n)) for n in range(self.dim + 1)]

    def is_subcomplex_of(self, other: "SimplicialComplex") -> bool:
        return all(s in other._set for s in self.simplices)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return set(self.vertices) == set(other.vertices) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __repr__(self):
        return f"SimplicialComplex(f_vector={self.f_vector()})"


def standard_simplex(n: int) -> SimplicialComplex:
    vs = [str(i) for i in range(n + 1)]
    return SimplicialComplex(vs, [vs] if n >= 0 else [])


def boundary(n: int) -> SimplicialComplex:
    """The boundary of the standard n-simplex (empty for n = 0)."""
    if n == 0:
        return SimplicialComplex([])
    vs = [str(i) for i in range(n + 1)]
    return SimplicialComplex(vs, [[v for v in vs if v != str(i)] for i in range(n + 1)])


def horn(n: int, k: int) -> SimplicialComplex:
    """Union of the faces of the standard n-simplex opposite vertices other than k."""
    if not 0 <= k <= n:
        raise ValueError("horn index must satisfy 0 <= k <= n")
    faces = [[str(j) for j in range(n + 1) if j != i] for i in range(n + 1) if i != k]
    used = sorted({v for f in faces for v in f}, key=int)
    return SimplicialComplex(used, faces)


class Poset:
    """Finite partial order; ``leq`` pairs are closed reflexively and checked."""

    def __init__(self, elements: Iterable[str], leq: Iterable[tuple], *, check: bool = True):
        self.elements = tuple(elements)
        self._pos = {e: i for i, e in enumerate(self.elements)}
        up = {e: {e} for e in self.elements}
        for a, b in leq:
            up[a].add(b)
        self._up = up
        if check:
            self._validate()
        down = {e: set() for e in self.elements}
        for a, bs in up.items():
            for b in bs:
                down[b].add(a)
        self._down = down

    def _validate(self):
        for a, bs in self._up.items():
            for b in bs:
                if b not in self._up:
                    raise ValueError(f"unknown element {b!r}")
                if b != a and a in self._up[b]:
                    raise ValueError(f"antisymmetry fails for {a!r}, {b!r}")
                if not self._up[b] <= bs:
                    raise ValueError(f"transitivity fails through {a!r} <= {b!r}")

    def leq(self, a, b) -> bool:
        return b in self._up[a]

    def above(self, a) -> list:
        return sorted(self._up[a], key=self._pos.__getitem__)

    def below(self, a) -> list:
        return sorted(self._down[a], key=self._pos.__getitem__)

    def __len__(self):
        return len(self.elements)

    def as_category(self) -> FinCat:
        """Thin category with a morphism ``a<b`` for each strict relation."""
        mors = []
        table = {}
        for a in self.elements:
            for b in self.above(a):
                if b != a:
                    mors.append((f"{a}<{b}", a, b))
                    for c in self.above(b):
                        if c != b:
                            table[(f"{a}<{b}", f"{b}<{c}")] = f"{a}<{c}"
        return FinCat(self.elements, mors, table, check=False)

    @classmethod
    def from_category(cls, C: FinCat) -> "Poset":
        for x in C.objects:
            for y in C.objects:
                if len(C.hom(x, y)) > 1:
                    raise ValueError("category is not thin")
        return cls(C.objects, [(C.src(m), C.tgt(m)) for m in C.morphisms])


def face_poset(K: SimplicialComplex) -> Poset:
    labels = {s: simplex_label(s) for s in K.simplices}
    pairs = []
    for s in K.simplices:
        ss = set(s)
        for t in K.simplices:
            if len(t) > len(s) and ss <= set(t):
                pairs.append((labels[s], labels[t]))
    return Poset([labels[s] for s in K.simplices], pairs, check=False)


def order_complex(P: Poset) -> SimplicialComplex:
    chains = []

    def extend(chain):
        chains.append(chain)
        for b in P.above(chain[-1]):
            if b != chain[-1]:
                extend(chain + (b,))

    for a in P.elements:
        extend((a,))
    return SimplicialComplex(P.elements, chains)


def sd(K: SimplicialComplex, times: int = 1) -> SimplicialComplex:
    """Barycentric subdivision: the order complex of the face poset."""
    for _ in range(times):
        K = order_complex(face_poset(K))
    return K


def csd2(K: SimplicialComplex) -> Poset:
    """The poset ``tau_1 Sd^2 K``, computed as the face poset of ``sd K``."""
    return face_poset(sd(K))


# -- simplicial sets with bounded dimension ------------------------------------


@dataclass
class BoundedSSet:
    """Nondegenerate simplices up to ``max_dim`` with their faces.

    ``faces[s][i]`` is ``(t, surj)``: the i-th face of ``s`` equals the
    degeneracy of the nondegenerate simplex ``t`` along the monotone
    surjection ``surj`` (a tuple listing, for each vertex of the face, the
    vertex of ``t`` it lands on).
    """

    max_dim: int
    simplices: dict
    faces: dict
    labels: dict = field(default_factory=dict)
    complete: bool = True
    dims: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.dims:
            self.dims = {s: n for n, ss in self.simplices.items() for s in ss}

    def face(self, simplex, surj, i):
        """i-th face of the possibly degenerate simplex ``(simplex, surj)``."""
        rest = surj[:i] + surj[i + 1:]
        m = self.dims[simplex]
        if len(set(rest)) == m + 1:
            return simplex, rest
        missing = surj[i]
        t, s2 = self.faces[simplex][missing]
        shifted = tuple(v - 1 if v > missing else v for v in rest)
        return t, tuple(s2[v] for v in shifted)

    def vertices_of(self, simplex) -> list:
        n = self.dims[simplex]
        out = []
        for k in range(n + 1):
            cur, surj = simplex, tuple(range(n + 1))
            keep = k
            while len(surj) > 1:
                drop = len(surj) - 1 if keep < len(surj) - 1 else 0
                cur, surj = self.face(cur, surj, drop)
                if drop < keep:
                    keep -= 1
            out.append(cur)
        return out

    def check_identities(self) -> list:
        """Violations of ``d_i d_j = d_{j-1} d_i`` for ``i < j``."""
        bad = []
        for n, ss in self.simplices.items():
            if n < 2:
                continue
            for s in ss:
                ident = tuple(range(n + 1))
                for j in range(n + 1):
                    for i in range(j):
                        lhs = self.face(*self.face(s, ident, j), i)
                        rhs = self.face(*self.face(s, ident, i), j - 1)
                        if lhs != rhs:
                            bad.append((s, i, j))
        return bad

    def count(self, n: int) -> int:
        return len(self.simplices.get(n, ()))


def _longest_chain(C: FinCat) -> int:
    memo = {}

    def longest_from(x):
        if x not in memo:
            memo[x] = max((1 + longest_from(C.tgt(m)) for m in C.out_morphisms(x)
                           if not C.is_identity(m)), default=0)
        return memo[x]

    return max((longest_from(x) for x in C.objects), default=0)


def nerve(C: FinCat, max_dim: int = None) -> BoundedSSet:
    """Nerve of ``C``: n-simplices are chains of n composable morphisms.

    For acyclic ``C`` the default cap is the longest chain, so nothing is
    lost.  For other categories the default cap is 2 and a
    :class:`TruncationWarning` is issued when longer chains exist.
    """
    acyclic = is_acyclic(C)
    if max_dim is None:
        max_dim = _longest_chain(C) if acyclic else 2
    simplices = {0: [(x, ()) for x in C.objects]}
    for n in range(1, max_dim + 2):
        nxt = []
        for x0, fs in simplices[n - 1]:
            end = C.tgt(fs[-1]) if fs else x0
            for m in C.out_morphisms(end):
                if not C.is_identity(m):
                    nxt.append((x0, fs + (m,)))
        simplices[n] = nxt
    complete = not simplices.pop(max_dim + 1)
    if not complete and not acyclic:
        warnings.warn(f"nerve truncated at dimension {max_dim}", TruncationWarning, stacklevel=2)
    simplices = {n: ss for n, ss in simplices.items() if ss or n == 0}

    def normalize(x0, gs):
        core = []
        surj = [0]
        for g in gs:
            if not C.is_identity(g):
                core.append(g)
            surj.append(len(core))
        return (x0, tuple(core)), tuple(surj)

    faces = {}
    for n, ss in simplices.items():
        for s in ss:
            x0, fs = s
            if n == 0:
                faces[s] = ()
                continue
            out = []
            for i in range(n + 1):
                if i == 0:
                    out.append(normalize(C.tgt(fs[0]), fs[1:]))
                elif i == n:
                    out.append(normalize(x0, fs[:-1]))
                else:
                    g = C.compose(fs[i - 1], fs[i])
                    out.append(normalize(x0, fs[:i - 1] + (g,) + fs[i + 1:]))
            faces[s] = tuple(out)
    labels = {}
    for s in simplices.get(0, ()):
        labels[s] = s[0]
    for s in simplices.get(1, ()):
        labels[s] = s[1][0]
    return BoundedSSet(max_dim, simplices, faces, labels, complete)


def complex_as_sset(K: SimplicialComplex) -> BoundedSSet:
    simplices = {}
    faces = {}
    for s in K.simplices:
        n = len(s) - 1
        simplices.setdefault(n, []).append(s)
        faces[s] = tuple((s[:i] + s[i + 1:], tuple(range(n))) for i in range(n + 1)) if n else ()
    labels = {(v,): v for v in K.vertices}
    for s in simplices.get(1, ()):
        labels[s] = f"{s[0]}->{s[1]}"
    return BoundedSSet(max(K.dim, 0), simplices, faces, labels, True)


def tau1(X, cap: int = DEFAULT_CAP) -> FinCat:
    """Fundamental category: generated by 1-simplices, one relation per 2-simplex."""
    if isinstance(X, SimplicialComplex):
        X = complex_as_sset(X)
    if X.max_dim < 2 and not X.complete:
        raise ValueError("fundamental category needs the 2-skeleton")
    verts = X.simplices.get(0, [])
    objects = [X.labels[v] for v in verts]
    gens = []
    for e in X.simplices.get(1, []):
        (t, _), (s, _) = X.faces[e]
        gens.append((X.labels[e], X.labels[s], X.labels[t]))

    def path(face):
        t, _ = face
        return () if X.dims[t] == 0 else (X.labels[t],)

    relations = []
    for sigma in X.simplices.get(2, []):
        d0, d1, d2 = X.faces[sigma]
        start = X.labels[X.vertices_of(sigma)[0]]
        relations.append((start, path(d2) + path(d0), path(d1)))
    cat, _ = present_category(objects, gens, relations, cap)
    return cat


# -- generating maps I and J ------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _generator(kind: str, n: int, k):
    full = standard_simplex(n)
    if kind == "I":
        sub = boundary(n)
    elif kind == "J":
        if n < 1:
            raise ValueError("horn generators need n >= 1")
        sub = horn(n, k)
    else:
        raise ValueError(f"unknown generating set {kind!r}")
    big = csd2(full)
    small = csd2(sub)
    B = big.as_category()
    A = small.as_category()
    F = FinFunctor(A, B, {x: x for x in A.objects}, {m: m for m in A.morphisms}, check=False)
    return F


def thol_generator(kind: str, n: int, k: int = None) -> FinFunctor:
    """Inclusion ``cSd^2 dDelta^n -> cSd^2 Delta^n`` (I) or of a horn (J).

    Both sides are poset categories; ``k`` is the horn index for J.
    """
    if kind == "J" and (k is None or not 0 <= k <= n):
        raise ValueError("J generators need a horn index 0 <= k <= n")
    return _generator(kind, n, k if kind == "J" else None)


def generating_set(kind: str, max_dim: int) -> list:
    """All generators of I or J with ``n <= max_dim``, as ``(label, functor)``."""
    out = []
    for n in range(max_dim + 1):
        if kind == "I":
            out.append((f"I{n}", thol_generator("I", n)))
        elif n >= 1:
            for k in range(n + 1):
                out.append((f"J{n},{k}", thol_generator("J", n, k)))
    return out


# -- maps between complexes ---------------------------------------------------


def enumerate_simplicial_maps(K: SimplicialComplex, X: SimplicialComplex, budget=None,
                              ordered: bool = False) -> list:
    """Vertex maps carrying simplices of ``K`` onto simplices of ``X``.

    With ``ordered=True`` the map must also be weakly monotone on every
    simplex, i.e. a map of the underlying simplicial sets.
    """
    order = list(K.vertices)
    pos = {v: i for i, v in enumerate(order)}
    xpos = {v: i for i, v in enumerate(X.vertices)}
    checks = {}
    for s in K.simplices:
        if len(s) < 2:
            continue
        last = max(s, key=pos.__getitem__)

        def chk(a, s=s):
            img = [a[v] for v in s]
            if ordered and any(xpos[p] > xpos[q] for p, q in zip(img, img[1:])):
                return False
            return tuple(img) in X
        checks.setdefault(last, []).append(chk)
    maps = []
    for a in backtrack(order, lambda v, a: X.vertices, checks, budget):
        maps.append(a)
    return maps


def ex_bounded(X: SimplicialComplex, n: int, budget=None) -> tuple:
    """``Ex(X)_n`` as the maps ``sd(Delta^n) -> X``: ``(count, maps)``."""
    if n > 3:
        raise ValueError("ex_bounded is limited to n <= 3")
    maps = enumerate_simplicial_maps(sd(standard_simplex(n)), X, budget, ordered=True)
    return len(maps), maps


def count_maps_into_ex(K: SimplicialComplex, X: SimplicialComplex, budget=None) -> int:
    """Maps ``K -> Ex X``: compatible choices of Ex-simplices on maximal faces."""
    tops = K.maximal_simplices()
    choices = []
    for s in tops:
        src = sd(SimplicialComplex(list(s), [list(s)]))
        choices.append(enumerate_simplicial_maps(src, X, budget, ordered=True))

    def compatible(a, idx):
        mine = a[idx]
        for j in range(idx):
            other = a[j]
            for v in set(mine) & set(other):
                if mine[v] != other[v]:
                    return False
        return True

    checks = {i: [functools.partial(compatible, idx=i)] for i in range(len(tops))}
    return sum(1 for _ in backtrack(list(range(len(tops))), lambda i, a: choices[i], checks, budget))


def sset_maps_to_nerve(K: SimplicialComplex, C: FinCat, budget=None) -> list:
    """Maps from the ordered complex ``K`` into the nerve of ``C``.

    The nerve is 2-coskeletal, so a map is a vertex and edge assignment
    whose triangles commute.
    """
    variables = []
    placed = set()
    for v in K.vertices:
        variables.append(("v", v))
        placed.add(v)
        for e in K.of_dim(1):
            if e[0] in placed and e[1] in placed and ("e", e) not in variables:
                variables.append(("e", e))
    position = {v: i for i, v in enumerate(variables)}

    def domain(var, a):
        if var[0] == "v":
            return C.objects
        u, w = var[1]
        return C.hom(a[("v", u)], a[("v", w)])

    checks = {}
    for t in K.of_dim(2):
        x, y, z = t
        vs = [("e", (x, y)), ("e", (y, z)), ("e", (x, z))]
        last = max(vs, key=position.__getitem__)

        def chk(a, x=x, y=y, z=z):
            return C.compose(a[("e", (x, y))], a[("e", (y, z))]) == a[("e", (x, z))]
        checks.setdefault(last, []).append(chk)
    return list(backtrack(variables, domain, checks, budget))
