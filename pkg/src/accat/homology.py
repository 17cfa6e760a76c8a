"""Integral simplicial homology through Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import TruncatedInput
from .fincat import FinFunctor, is_acyclic
from .simplicial import BoundedSSet, SimplicialComplex, complex_as_sset, nerve


# -- Smith normal form --------------------------------------------------------


@dataclass
class SmithForm:
    """``U @ M @ V == D`` with ``U`` and ``V`` unimodular."""

    D: list
    U: list
    V: list

    @property
    def diagonal(self) -> list:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(A))]


def smith_normal_form(M: Sequence[Sequence[int]]) -> SmithForm:
    """Diagonalize an integer matrix so that each entry divides the next.

    Pivots are the smallest nonzero absolute value in the remaining block,
    leftmost column first, then topmost row.
    """
    A = [[int(v) for v in row] for row in M]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = _identity(rows)
    V = _identity(cols)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for R in A:
            R[i], R[j] = R[j], R[i]
        for R in V:
            R[i], R[j] = R[j], R[i]

    def add_row(src, dst, q):   # row dst += q * row src
        A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):   # col dst += q * col src
        for R in A:
            R[dst] += q * R[src]
        for R in V:
            R[dst] += q * R[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for j in range(t, cols):
                for i in range(t, rows):
                    v = A[i][j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
            if best is None:
                return SmithForm(A, U, V)
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // p))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // p))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(A[i][j] % p for j in range(t + 1, cols))), None)
            if bad is not None:
                add_row(bad, t, 1)
                continue
            if p < 0:
                A[t] = [-a for a in A[t]]
                U[t] = [-a for a in U[t]]
            break
    return SmithForm(A, U, V)


def _sparse_invariants(columns: list, n_rows: int) -> list:
    """Nonzero invariant factors of a sparse matrix given as column dicts.

    Unit pivots are eliminated sparsely; the remaining block goes through
    the dense routine.
    """
    rows: dict = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
    col_rows: dict = {}
    for r, row in rows.items():
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    units = 0
    while True:
        pivot = None
        for r in sorted(rows, key=lambda r: len(rows[r])):
            row = rows[r]
            c = next((c for c, v in sorted(row.items()) if v in (1, -1)), None)
            if c is not None:
                pivot = (r, c)
                break
        if pivot is None:
            break
        r, c = pivot
        prow = rows.pop(r)
        p = prow[c]
        for cc in prow:
            col_rows[cc].discard(r)
        for i in list(col_rows[c]):
            row = rows[i]
            q = row[c] * p   # p is a unit, so row[c] / p == row[c] * p
            for cc, v in prow.items():
                nv = row.get(cc, 0) - q * v
                if nv:
                    if cc not in row:
                        col_rows[cc].add(i)
                    row[cc] = nv
                elif cc in row:
                    del row[cc]
                    col_rows[cc].discard(i)
            if not row:
                del rows[i]
        units += 1
    rest_cols = sorted({c for row in rows.values() for c in row})
    rest_rows = sorted(rows)
    diag = []
    if rest_rows:
        dense = [[rows[r].get(c, 0) for c in rest_cols] for r in rest_rows]
        diag = [d for d in smith_normal_form(dense).diagonal if d]
    return [1] * units + diag


# -- chain complexes and homology ---------------------------------------------


@dataclass
class ChainComplexZ:
    """Normalized chains: ``basis[n]`` lists nondegenerate n-simplices and
    ``boundary[n]`` holds one column dict per basis element of dimension n."""

    basis: dict
    boundary: dict

    @property
    def top(self) -> int:
        return max(self.basis, default=-1)

    def boundary_squares_to_zero(self) -> bool:
        for n in self.basis:
            if n < 2:
                continue
            for col in self.boundary[n]:
                acc: dict = {}
                for r, v in col.items():
                    for r2, w in self.boundary[n - 1][r].items():
                        acc[r2] = acc.get(r2, 0) + v * w
                if any(acc.values()):
                    return False
        return True

    def dense_boundary(self, n: int) -> list:
        rows = len(self.basis.get(n - 1, ()))
        cols = self.boundary.get(n, [])
        return [[col.get(r, 0) for col in cols] for r in range(rows)]


def chain_complex(X) -> ChainComplexZ:
    if isinstance(X, SimplicialComplex):
        X = complex_as_sset(X)
    basis = {n: list(ss) for n, ss in X.simplices.items() if ss}
    index = {n: {s: i for i, s in enumerate(ss)} for n, ss in basis.items()}
    boundary = {}
    for n, ss in basis.items():
        cols = []
        for s in ss:
            col: dict = {}
            if n > 0:
                for i, (t, surj) in enumerate(X.faces[s]):
                    if X.dims[t] != n - 1:
                        continue   # degenerate faces vanish in normalized chains
                    r = index[n - 1][t]
                    col[r] = col.get(r, 0) + (-1) ** i
                col = {r: v for r, v in col.items() if v}
            cols.append(col)
        boundary[n] = cols
    return ChainComplexZ(basis, boundary)


@dataclass(frozen=True)
class HomologyProfile:
    """Betti numbers and torsion per dimension, trailing zero groups trimmed."""

    betti: tuple
    torsion: tuple = field(default=())

    def __post_init__(self):
        b = list(self.betti)
        t = [tuple(x) for x in self.torsion] or [()] * len(b)
        while b and b[-1] == 0 and not t[-1]:
            b.pop()
            t.pop()
        object.__setattr__(self, "betti", tuple(b))
        object.__setattr__(self, "torsion", tuple(t))

    @classmethod
    def point(cls) -> "HomologyProfile":
        return cls((1,))

    @classmethod
    def sphere(cls, d: int) -> "HomologyProfile":
        if d == 0:
            return cls((2,))
        return cls((1,) + (0,) * (d - 1) + (1,))

    def group(self, n: int) -> tuple:
        if n < len(self.betti):
            return self.betti[n], self.torsion[n]
        return 0, ()

    def lines(self) -> list:
        out = []
        for n, (b, tors) in enumerate(zip(self.betti, self.torsion)):
            parts = []
            if b:
                parts.append("Z" if b == 1 else f"Z^{b}")
            parts += [f"Z/{t}" for t in tors]
            out.append(f"H_{n} = " + (" ⊕ ".join(parts) if parts else "0"))
        return out

    def __str__(self):
        return "\n".join(self.lines())


def homology(X, allow_truncated: bool = False) -> HomologyProfile:
    """Integral homology of a complex or a simplicial set with finite data.

    A truncated nerve only determines homology below its cap; it is refused
    unless ``allow_truncated`` is set, in which case the top group is dropped.
    """
    limit = None
    if isinstance(X, BoundedSSet) and not X.complete:
        if not allow_truncated:
            raise TruncatedInput("simplicial set is truncated; homology would be wrong at the top")
        limit = X.max_dim - 1
    cc = chain_complex(X)
    top = cc.top
    invariants = {}
    for n in range(1, top + 1):
        invariants[n] = _sparse_invariants(cc.boundary[n], len(cc.basis.get(n - 1, ())))
    betti, torsion = [], []
    for n in range(top + 1):
        if limit is not None and n > limit:
            break
        rank_out = len(invariants.get(n, ()))
        into = invariants.get(n + 1, [])
        betti.append(len(cc.basis.get(n, ())) - rank_out - len(into))
        torsion.append(tuple(sorted(abs(d) for d in into if abs(d) > 1)))
    return HomologyProfile(tuple(betti), tuple(torsion))


@dataclass(frozen=True)
class PossiblyEquivalent:
    profile: HomologyProfile

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotEquivalent:
    dimension: int
    source: HomologyProfile
    target: HomologyProfile

    def __bool__(self):
        return False


def homology_equivalent(F: FinFunctor):
    """Necessary test for ``N(F)`` being a weak equivalence: equal homology profiles."""
    profiles = []
    for C in (F.source, F.target):
        if not is_acyclic(C):
            raise TruncatedInput("nerve of a non-acyclic category is not finite")
        profiles.append(homology(nerve(C)))
    a, b = profiles
    if a == b:
        return PossiblyEquivalent(a)
    n = 0
    while a.group(n) == b.group(n):
        n += 1
    return NotEquivalent(n, a, b)
