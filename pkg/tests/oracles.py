"""Brute-force reference computations used to derive expected values.

Nothing here calls into accat's algorithms; categories are only read
through their public accessors (objects, morphisms, src, tgt, compose).
"""

import itertools

import sympy
from sympy.matrices.normalforms import smith_normal_form


def all_arrows(C):
    return [f"id:{x}" for x in C.objects] + list(C.morphisms)


def brute_functors(C, D):
    """Yield ``(object_map, arrow_map)`` for every functor C -> D, by exhaustive trial."""
    D_arrows = all_arrows(D)
    for objs in itertools.product(D.objects, repeat=len(C.objects)):
        om = dict(zip(C.objects, objs))
        options = []
        for m in C.morphisms:
            s, t = om[C.src(m)], om[C.tgt(m)]
            options.append([g for g in D_arrows if D.src(g) == s and D.tgt(g) == t])
        for choice in itertools.product(*options):
            mm = {f"id:{x}": f"id:{om[x]}" for x in C.objects}
            mm.update(zip(C.morphisms, choice))
            if all(mm[C.compose(a, b)] == D.compose(mm[a], mm[b])
                   for a in C.morphisms for b in C.morphisms if C.tgt(a) == C.src(b)):
                yield om, mm


def brute_functor_count(C, D):
    return sum(1 for _ in brute_functors(C, D))


def respects(D, om, mm, object_pairs, sequence_pairs):
    """Whether a functor given by its maps identifies every generating pair."""
    if any(om[x] != om[y] for x, y in object_pairs):
        return False

    def image(seq):
        out = mm[seq[0]]
        for m in seq[1:]:
            if D.tgt(out) != D.src(mm[m]):
                return None
            out = D.compose(out, mm[m])
        return out

    for u, v in sequence_pairs:
        a, b = image(u), image(v)
        if a is None or a != b:
            return False
    return True


def brute_isomorphic(C, D):
    if (len(C.objects), len(C.morphisms)) != (len(D.objects), len(D.morphisms)):
        return False
    for perm in itertools.permutations(D.objects):
        om = dict(zip(C.objects, perm))
        options = []
        for m in C.morphisms:
            s, t = om[C.src(m)], om[C.tgt(m)]
            options.append([g for g in D.morphisms if D.src(g) == s and D.tgt(g) == t])
        for choice in itertools.product(*options):
            if len(set(choice)) != len(choice):
                continue
            mm = {f"id:{x}": f"id:{om[x]}" for x in C.objects}
            mm.update(zip(C.morphisms, choice))
            if all(mm[C.compose(a, b)] == D.compose(mm[a], mm[b])
                   for a in C.morphisms for b in C.morphisms if C.tgt(a) == C.src(b)):
                return True
    return False


def brute_acyclic(C):
    for m in C.morphisms:
        if C.src(m) == C.tgt(m):
            return False
    for a in C.morphisms:
        for b in C.morphisms:
            if C.src(a) == C.tgt(b) and C.tgt(a) == C.src(b):
                return False
    return True


def composable_pairs(C):
    arrows = all_arrows(C)
    return sum(1 for a in arrows for b in arrows if C.tgt(a) == C.src(b))


# -- simplicial ----------------------------------------------------------------


def closure(maximal):
    faces = set()
    for s in maximal:
        s = tuple(sorted(s))
        for r in range(1, len(s) + 1):
            faces.update(itertools.combinations(s, r))
    return faces


def chains(elements, less):
    """All nonempty chains of a finite strict order, as frozensets."""
    elements = list(elements)
    out = []

    def grow(chain, rest):
        out.append(frozenset(chain))
        for i, e in enumerate(rest):
            if all(less(c, e) for c in chain):
                grow(chain + [e], rest[i + 1:])

    ordered = sorted(elements, key=len)
    for i, e in enumerate(ordered):
        grow([e], ordered[i + 1:])
    return out


def subdivide(faces):
    """Simplices of the barycentric subdivision: chains of faces under inclusion."""
    return chains([frozenset(f) for f in faces], lambda a, b: a < b)


def simplex_counts(simplices):
    counts = {}
    for s in simplices:
        counts[len(s) - 1] = counts.get(len(s) - 1, 0) + 1
    return [counts[n] for n in sorted(counts)]


def boundary_matrix(simplices, n):
    rows = sorted((s for s in simplices if len(s) == n), key=lambda s: (len(s), s))
    cols = sorted((s for s in simplices if len(s) == n + 1), key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(rows)}
    M = sympy.zeros(len(rows), len(cols))
    for j, s in enumerate(cols):
        for i in range(len(s)):
            M[index[s[:i] + s[i + 1:]], j] += (-1) ** i
    return M


def betti_and_torsion(maximal):
    """Integral homology of a complex given by maximal simplices on sortable vertices."""
    simplices = closure(maximal)
    top = max(len(s) for s in simplices) - 1
    ranks, torsion = {}, {}
    for n in range(1, top + 1):
        M = boundary_matrix(simplices, n)
        if M.shape[0] == 0 or M.shape[1] == 0:
            ranks[n], torsion[n - 1] = 0, ()
            continue
        snf = smith_normal_form(M, domain=sympy.ZZ)
        diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
        ranks[n] = len(diag)
        torsion[n - 1] = tuple(sorted(d for d in diag if d > 1))
    betti = []
    for n in range(top + 1):
        size = sum(1 for s in simplices if len(s) == n + 1)
        betti.append(size - ranks.get(n, 0) - ranks.get(n + 1, 0))
    tors = [torsion.get(n, ()) for n in range(top + 1)]
    while betti and betti[-1] == 0 and not tors[-1]:
        betti.pop()
        tors.pop()
    return tuple(betti), tuple(tors)


def sympy_invariants(rows):
    M = sympy.Matrix(rows)
    if M.shape[0] == 0 or M.shape[1] == 0:
        return []
    snf = smith_normal_form(M, domain=sympy.ZZ)
    return [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
