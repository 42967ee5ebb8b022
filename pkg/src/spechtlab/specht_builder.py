"""Specht modules over GF(2) in the standard polytabloid basis.

The basis of S^lam is the list of standard tableaux sorted by column-reading
word (read each column top to bottom, columns left to right, compare
lexicographically).  Generator matrices are stored in row convention:
row j of ``images[i]`` holds the coordinates of s_{i+1} e_j, so a batch of
row vectors is acted on by ``rows @ images[i]``.

Three engines produce the same matrices: a generic Garnir straightener,
a set-based engine for hooks and a tabloid engine for two-row shapes.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import sys
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numba as nb
import numpy as np

from .f2_linalg import (
    F2Matrix,
    EchelonBuilder,
    QuotientMap,
    SparseRows,
    Subspace,
    _gather_bits,
    _matmul,
    kernel,
    left_kernel_rows,
    msb,
    nwords,
    pack_rows,
    rank,
)
from .partition_kit import Partition, PartitionError, as_partition, binomial, dim_specht

BASIS_ORDER = "column-reading-lex/v1"
_PERM_CACHE_BYTES = 1 << 29


class BuildError(ValueError):
    pass


# permutations: tuple p with p[x - 1] = image of x


Perm = tuple


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def transposition(n: int, a: int, b: int) -> Perm:
    p = list(range(1, n + 1))
    p[a - 1], p[b - 1] = b, a
    return tuple(p)


def adjacent(n: int, i: int) -> Perm:
    return transposition(n, i, i + 1)


def cycle(n: int, *pts: int) -> Perm:
    p = list(range(1, n + 1))
    for x, y in zip(pts, pts[1:] + pts[:1]):
        p[x - 1] = y
    return tuple(p)


def compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i] - 1] for i in range(len(q)))


def perm_word(p: Perm) -> list[int]:
    """Adjacent transpositions (1-based i for s_i) whose successive application gives p."""
    p = list(p)
    word = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                # p = (p s_i) s_i, so s_i acts first
                p[i], p[i + 1] = p[i + 1], p[i]
                word.append(i + 1)
                changed = True
    return word


# tableaux


@dataclass(frozen=True)
class Tableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise BuildError(f"rows {self.rows} do not fill {self.shape}")
        flat = sorted(x for r in self.rows for x in r)
        if flat != list(range(1, self.shape.n + 1)):
            raise BuildError(f"entries of {self.rows} are not a bijection onto 1..{self.shape.n}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Tableau":
        rows = tuple(tuple(int(x) for x in r) for r in rows if len(r))
        return cls(Partition([len(r) for r in rows]), rows)

    @classmethod
    def from_columns(cls, shape, cols: Sequence[Sequence[int]]) -> "Tableau":
        shape = as_partition(shape)
        rows = [[] for _ in shape.parts]
        for c in cols:
            for i, x in enumerate(c):
                rows[i].append(x)
        return cls(shape, tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return self.shape.n

    @property
    def columns(self) -> tuple[tuple[int, ...], ...]:
        width = self.shape.part(1)
        return tuple(tuple(r[c] for r in self.rows if len(r) > c) for c in range(width))

    def is_row_standard(self) -> bool:
        return all(all(a < b for a, b in zip(r, r[1:])) for r in self.rows)

    def is_column_standard(self) -> bool:
        return all(all(a < b for a, b in zip(c, c[1:])) for c in self.columns)

    def is_standard(self) -> bool:
        return self.is_row_standard() and self.is_column_standard()

    def column_sorted(self) -> "Tableau":
        return Tableau.from_columns(self.shape, [sorted(c) for c in self.columns])

    def reading_word(self) -> tuple[int, ...]:
        return tuple(x for c in self.columns for x in c)

    def column_key(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(c)) for c in self.columns)

    def act(self, p: Perm) -> "Tableau":
        return Tableau(self.shape, tuple(tuple(p[x - 1] for x in r) for r in self.rows))

    def tabloid(self) -> "TabloidKey":
        return TabloidKey(tuple(tuple(sorted(r)) for r in self.rows))

    def __str__(self) -> str:
        return "/".join(" ".join(map(str, r)) for r in self.rows)


@dataclass(frozen=True, order=True)
class TabloidKey:
    row_sets: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = sorted(x for r in self.row_sets for x in r)
        if flat != list(range(1, len(flat) + 1)):
            raise BuildError(f"row sets {self.row_sets} do not partition 1..{len(flat)}")
        if any(list(r) != sorted(r) for r in self.row_sets):
            raise BuildError("row sets must be sorted")

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.row_sets)


def polytabloid_terms(t: Tableau) -> list[TabloidKey]:
    """Tabloids {sigma t} for sigma in the column group; distinct, each with coefficient 1."""
    cols = t.columns
    out = []
    for perms in itertools.product(*(itertools.permutations(c) for c in cols)):
        rows = [[] for _ in t.rows]
        for c in perms:
            for i, x in enumerate(c):
                rows[i].append(x)
        out.append(TabloidKey(tuple(tuple(sorted(r)) for r in rows)))
    return out


def _standard_fillings(parts: tuple[int, ...]) -> Iterable[list[list[int]]]:
    n = sum(parts)
    rows: list[list[int]] = [[] for _ in parts]

    def rec(v):
        if v > n:
            yield [list(r) for r in rows]
            return
        for i, length in enumerate(parts):
            if len(rows[i]) < length and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(v)
                yield from rec(v + 1)
                rows[i].pop()

    yield from rec(1)


def standard_tableaux(lam) -> list[Tableau]:
    lam = as_partition(lam)
    if lam.is_two_part and lam.n:
        return TwoRowEngine.get(lam).tableaux()
    if lam.is_hook and lam.n:
        return HookEngine.get(lam).tableaux()
    tabs = [Tableau(lam, tuple(tuple(r) for r in f)) for f in _standard_fillings(lam.parts)]
    return sorted(tabs, key=Tableau.reading_word)


# generic straightening


class Straightener:
    """Garnir straightening with memoisation on column sets.

    Vectors are python ints used as bitsets over the standard basis.
    """

    def __init__(self, lam):
        self.shape = as_partition(lam)
        self.basis = sorted(
            (Tableau(self.shape, tuple(tuple(r) for r in f)) for f in _standard_fillings(self.shape.parts)),
            key=Tableau.reading_word,
        )
        self.index = {t.column_key(): i for i, t in enumerate(self.basis)}
        self._memo: dict = {}

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __call__(self, t: Tableau) -> int:
        if t.shape != self.shape:
            raise BuildError(f"tableau of shape {t.shape} given to a {self.shape} straightener")
        return self._coords(t.column_key())

    def _coords(self, key) -> int:
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        idx = self.index.get(key)
        if idx is not None:
            out = 1 << idx
        else:
            out = 0
            for other in _garnir_terms(key):
                out ^= self._coords(other)
        self._memo[key] = out
        return out


def _garnir_terms(key):
    """Column keys of the other terms of a Garnir relation at the first row violation."""
    cols = [list(c) for c in key]
    for c in range(len(cols) - 1):
        left, right = cols[c], cols[c + 1]
        for i in range(len(right)):
            if left[i] > right[i]:
                X = left[i:]
                Y = right[: i + 1]
                pool = sorted(X + Y)
                xs = set(X)
                out = []
                for A in itertools.combinations(pool, len(X)):
                    if set(A) == xs:
                        continue
                    rest = [x for x in pool if x not in A]
                    new = list(key)
                    new[c] = tuple(sorted(left[:i] + list(A)))
                    new[c + 1] = tuple(sorted(rest + right[i + 1 :]))
                    out.append(tuple(new))
                return out
    raise BuildError("tableau is already standard")


def straighten(t: Tableau) -> np.ndarray:
    """Coordinates of e_t in the standard basis, as a 0/1 vector."""
    st = _straightener(t.shape)
    bits = st(t)
    out = np.zeros(st.dim, dtype=np.uint8)
    for i in range(st.dim):
        if bits >> i & 1:
            out[i] = 1
    return out


_STRAIGHTENERS: dict[Partition, Straightener] = {}


def _straightener(lam) -> Straightener:
    lam = as_partition(lam)
    if lam not in _STRAIGHTENERS:
        _STRAIGHTENERS[lam] = Straightener(lam)
    return _STRAIGHTENERS[lam]


def brute_force_coords(t: Tableau) -> np.ndarray:
    """Solve for e_t in the span of standard polytabloids inside the tabloid space."""
    basis = standard_tableaux(t.shape)
    keys: dict[TabloidKey, int] = {}
    rows = []
    for s in basis + [t]:
        row = set()
        for k in polytabloid_terms(s):
            row ^= {keys.setdefault(k, len(keys))}
        rows.append(row)
    dense = np.zeros((len(rows), len(keys)), dtype=np.uint8)
    for i, row in enumerate(rows):
        dense[i, list(row)] = 1
    K = left_kernel_rows(pack_rows(dense), len(keys))
    d = len(basis)
    sols = [k for k in (np.unpackbits(r.view(np.uint8), bitorder="little")[: d + 1] for r in K) if k[d]]
    if len(sols) != 1 or len(K) != 1:
        raise BuildError("standard polytabloids are not a basis or e_t is outside their span")
    return sols[0][:d].copy()


# two-row engine


def _binomial_table(n: int, k: int) -> np.ndarray:
    tab = np.zeros((n + 2, k + 2), dtype=np.int64)
    for a in range(n + 2):
        for b in range(k + 2):
            tab[a, b] = binomial(a, b)
    return tab


@nb.njit(cache=True)
def _expand_pairs(tops, bots, binom):
    """Colex ranks of the tabloids of e_t for two-row tableaux given by column pairs."""
    m, k = tops.shape
    out = np.empty((m, 1 << k), dtype=np.int64)
    vals = np.empty(k, dtype=np.int64)
    for i in range(m):
        for mask in range(1 << k):
            for j in range(k):
                vals[j] = tops[i, j] if (mask >> j) & 1 else bots[i, j]
            # insertion sort; k is small
            for a in range(1, k):
                x = vals[a]
                b = a - 1
                while b >= 0 and vals[b] > x:
                    vals[b + 1] = vals[b]
                    b -= 1
                vals[b + 1] = x
            r = 0
            for j in range(k):
                r += binom[vals[j] - 1, j + 1]
            out[i, mask] = r
    return out


@nb.njit(cache=True)
def _straighten_ranks(vecs, exp, std_of_rank, ntab, dim):
    """Express tabloid sums (rows of rank lists, xor semantics) in the standard basis.

    Polytabloid e_u has leading tabloid of largest colex rank, so peeling off
    the largest surviving tabloid is forward substitution.  Returns the packed
    coordinates and the index of the first row outside the Specht module (or -1).
    """
    m = vecs.shape[0]
    out = np.zeros((m, (dim + 63) >> 6), dtype=np.uint64)
    res = np.zeros((ntab + 63) >> 6, dtype=np.uint64)
    one = np.uint64(1)
    for i in range(m):
        cnt = 0
        top = 0
        for q in range(vecs.shape[1]):
            r = vecs[i, q]
            if r < 0:
                continue
            b = one << np.uint64(r & 63)
            res[r >> 6] ^= b
            cnt += 1 if res[r >> 6] & b else -1
            if (r >> 6) > top:
                top = r >> 6
        w = top
        while cnt > 0:
            while res[w] == 0:
                w -= 1
            r = (w << 6) + msb(res[w])
            u = std_of_rank[r]
            if u < 0:
                res[:] = 0
                return out, i
            out[i, u >> 6] ^= one << np.uint64(u & 63)
            for q in range(exp.shape[1]):
                rr = exp[u, q]
                b = one << np.uint64(rr & 63)
                res[rr >> 6] ^= b
                cnt += 1 if res[rr >> 6] & b else -1
    return out, -1


@nb.njit(cache=True)
def _gram_from_expansions(exp, ntab, dim):
    counts = np.zeros(ntab + 1, dtype=np.int64)
    for u in range(dim):
        for q in range(exp.shape[1]):
            counts[exp[u, q] + 1] += 1
    for t in range(ntab):
        counts[t + 1] += counts[t]
    fill = counts[:-1].copy()
    owners = np.empty(counts[-1], dtype=np.int64)
    for u in range(dim):
        for q in range(exp.shape[1]):
            t = exp[u, q]
            owners[fill[t]] = u
            fill[t] += 1
    g = np.zeros((dim, (dim + 63) >> 6), dtype=np.uint64)
    for t in range(ntab):
        for a in range(counts[t], counts[t + 1]):
            s = owners[a]
            for b in range(counts[t], counts[t + 1]):
                u = owners[b]
                g[s, u >> 6] ^= np.uint64(1) << np.uint64(u & 63)
    return g


class TwoRowEngine:
    """Tabloid engine for lam = (n-k, k): tabloids are k-subsets ranked in colex order."""

    _cache: dict[Partition, "TwoRowEngine"] = {}

    def __init__(self, lam):
        lam = as_partition(lam)
        if not lam.is_two_part or not lam.n:
            raise BuildError(f"{lam} is not a nonempty two-row partition")
        self.shape = lam
        self.n = lam.n
        self.k = k = lam.part(2)
        n = self.n
        self.binom = _binomial_table(n, k)
        self.ntab = binomial(n, k)
        sets = []
        for T in itertools.combinations(range(1, n + 1), k):
            if all(T[j] >= 2 * (j + 1) for j in range(k)):
                sets.append(T)
        row1s = [tuple(x for x in range(1, n + 1) if x not in set(T)) for T in sets]

        def word(i):
            r1, r2 = row1s[i], sets[i]
            w = []
            for j in range(len(r1)):
                w.append(r1[j])
                if j < k:
                    w.append(r2[j])
            return tuple(w)

        order = sorted(range(len(sets)), key=word)
        self.row2 = np.array([sets[i] for i in order], dtype=np.int64).reshape(len(sets), k)
        self.row1 = np.array([row1s[i] for i in order], dtype=np.int64).reshape(len(sets), n - k)
        self.dim = len(sets)
        self.exp = _expand_pairs(self.row1[:, :k].copy(), self.row2, self.binom)
        self.std_of_rank = np.full(self.ntab, -1, dtype=np.int64)
        self.std_of_rank[self.exp.max(axis=1)] = np.arange(self.dim)

    @classmethod
    def get(cls, lam) -> "TwoRowEngine":
        lam = as_partition(lam)
        if lam not in cls._cache:
            cls._cache[lam] = cls(lam)
        return cls._cache[lam]

    def tableaux(self) -> list[Tableau]:
        return [Tableau(self.shape, (tuple(map(int, a)), tuple(map(int, b))) if self.k else (tuple(map(int, a)),))
                for a, b in zip(self.row1, self.row2)]

    def rank_of(self, row2: Sequence[int]) -> int:
        return int(sum(self.binom[x - 1, j + 1] for j, x in enumerate(sorted(row2))))

    def coords_of_ranks(self, vecs: np.ndarray) -> np.ndarray:
        vecs = np.ascontiguousarray(vecs, dtype=np.int64)
        out, bad = _straighten_ranks(vecs, self.exp, self.std_of_rank, self.ntab, self.dim)
        if bad >= 0:
            raise BuildError(f"tabloid combination {bad} does not lie in S^{self.shape}")
        return out

    def expand(self, tops: np.ndarray, bots: np.ndarray) -> np.ndarray:
        return _expand_pairs(np.ascontiguousarray(tops, dtype=np.int64), np.ascontiguousarray(bots, dtype=np.int64), self.binom)

    def perm_image(self, p: Perm) -> np.ndarray:
        pa = np.array((0,) + tuple(p), dtype=np.int64)
        return self.coords_of_ranks(self.expand(pa[self.row1[:, : self.k]], pa[self.row2]))

    def gram(self) -> F2Matrix:
        return F2Matrix(self.dim, self.dim, _gram_from_expansions(self.exp, self.ntab, self.dim))

    def tabloid_vectors(self) -> F2Matrix:
        """Polytabloid expansions of the basis over the colex-ordered tabloids."""
        out = F2Matrix(self.dim, self.ntab)
        for u in range(self.dim):
            for r in self.exp[u]:
                out.data[u, r >> 6] ^= np.uint64(1) << np.uint64(r & 63)
        return out


# hook engine


class HookEngine:
    """Hooks (n-r, 1^r): e_t depends only on the first column C, and 1 lies in C when t is standard.

    If 1 is not in C then the Garnir relation on C and {1} gives
    e_C = sum over x in C of e_{C - x + 1}.
    """

    _cache: dict[Partition, "HookEngine"] = {}

    def __init__(self, lam):
        lam = as_partition(lam)
        if not lam.is_hook or not lam.n:
            raise BuildError(f"{lam} is not a hook")
        self.shape = lam
        self.n = lam.n
        self.r = lam.leg
        self.sets = [(1,) + c for c in itertools.combinations(range(2, self.n + 1), self.r)]
        self.index = {self._mask(c): i for i, c in enumerate(self.sets)}
        self.dim = len(self.sets)

    @classmethod
    def get(cls, lam) -> "HookEngine":
        lam = as_partition(lam)
        if lam not in cls._cache:
            cls._cache[lam] = cls(lam)
        return cls._cache[lam]

    @staticmethod
    def _mask(c: Iterable[int]) -> int:
        m = 0
        for x in c:
            m |= 1 << x
        return m

    def tableaux(self) -> list[Tableau]:
        out = []
        for c in self.sets:
            rest = tuple(x for x in range(1, self.n + 1) if x not in c)
            out.append(Tableau(self.shape, ((1,) + rest,) + tuple((x,) for x in c[1:])))
        return out

    def coords_of_set(self, c: Iterable[int]) -> list[int]:
        """Basis indices (xor semantics) of e_C for a first-column set C of size r + 1."""
        c = tuple(c)
        if 1 in c:
            return [self.index[self._mask(c)]]
        m = self._mask(c)
        return [self.index[(m & ~(1 << x)) | 2] for x in c]

    def coords_of_sets(self, sets: Iterable[Iterable[int]]) -> np.ndarray:
        out = np.zeros(nwords(self.dim), dtype=np.uint64)
        for c in sets:
            for i in self.coords_of_set(c):
                out[i >> 6] ^= np.uint64(1) << np.uint64(i & 63)
        return out

    def perm_image(self, p: Perm) -> np.ndarray:
        out = np.zeros((self.dim, nwords(self.dim)), dtype=np.uint64)
        for i, c in enumerate(self.sets):
            for j in self.coords_of_set(p[x - 1] for x in c):
                out[i, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
        return out

    def gram(self) -> F2Matrix:
        # <e_C, e_D> counts pairs x, y with C - x = D - y as ordered columns: r! such orderings each
        if self.r >= 2:
            return F2Matrix.zeros(self.dim, self.dim)
        if self.r == 0:
            return F2Matrix.identity(1)
        # r = 1: C = {1, a}; common set {1} always, plus {a} when C = D
        dense = np.ones((self.dim, self.dim), dtype=np.uint8) ^ np.eye(self.dim, dtype=np.uint8)
        return F2Matrix.from_dense(dense)


class GenericEngine:
    def __init__(self, lam):
        self.shape = as_partition(lam)
        self.st = _straightener(self.shape)
        self.dim = self.st.dim

    def tableaux(self) -> list[Tableau]:
        return list(self.st.basis)

    def perm_image(self, p: Perm) -> np.ndarray:
        out = np.zeros((self.dim, nwords(self.dim)), dtype=np.uint64)
        for i, t in enumerate(self.st.basis):
            bits = self.st(t.act(p))
            j = 0
            while bits:
                if bits & 1:
                    out[i, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
                bits >>= 1
                j += 1
        return out

    def gram(self) -> F2Matrix:
        keys: dict[TabloidKey, int] = {}
        rows = [[keys.setdefault(k, len(keys)) for k in polytabloid_terms(t)] for t in self.st.basis]
        E = np.zeros((self.dim, len(keys)), dtype=np.uint8)
        for i, r in enumerate(rows):
            E[i, r] = 1
        return F2Matrix.from_dense((E.astype(np.int64) @ E.T.astype(np.int64)) % 2)


def engine_for(lam):
    lam = as_partition(lam)
    if lam.n == 0:
        raise BuildError("the empty partition has no symmetric group action to build")
    if lam.is_two_part:
        return TwoRowEngine.get(lam)
    if lam.is_hook:
        return HookEngine.get(lam)
    return GenericEngine(lam)


# modules


class RepModule:
    """A GF(2) S_n-module given by the images of the adjacent transpositions."""

    def __init__(self, images: Sequence[F2Matrix], label: str, n: int | None = None,
                 basis_desc: list | None = None, engine=None, dim: int | None = None):
        self.images = list(images)
        self.n = len(self.images) + 1 if n is None else n
        if dim is None:
            dim = self.images[0].nrows if self.images else 1
        self.dim = dim
        self.label = label
        self.basis_desc = basis_desc
        self.engine = engine
        self._sparse: dict[int, SparseRows] = {}
        self._perm_cache: dict[Perm, F2Matrix] = {}

    def __repr__(self) -> str:
        return f"RepModule({self.label}, dim={self.dim}, n={self.n})"

    @cached_property
    def gens(self) -> list[F2Matrix]:
        """Column-convention generator matrices."""
        return [g.T for g in self.images]

    # action

    def _sparse_of(self, M: F2Matrix, key) -> SparseRows | None:
        sp = self._sparse.get(key)
        if sp is None:
            sp = SparseRows.from_matrix(M)
            self._sparse[key] = sp
        return sp if sp.nnz < 4 * M.nrows * max(nwords(M.ncols), 1) else None

    def _apply(self, M: F2Matrix, key, rows: np.ndarray) -> np.ndarray:
        rows = np.ascontiguousarray(np.atleast_2d(rows), dtype=np.uint64)
        if self.dim == 0 or rows.shape[0] == 0:
            return np.zeros((rows.shape[0], nwords(self.dim)), dtype=np.uint64)
        sp = self._sparse_of(M, key)
        if sp is not None:
            return sp.right_of(rows)
        return _matmul(rows, self.dim, M.data)

    def act(self, i: int, rows: np.ndarray) -> np.ndarray:
        """Apply s_{i+1} to packed row vectors."""
        return self._apply(self.images[i], i, rows)

    def perm_image(self, p: Perm) -> F2Matrix:
        p = tuple(p)
        hit = self._perm_cache.get(p)
        if hit is not None:
            return hit
        if self.engine is not None:
            M = F2Matrix(self.dim, self.dim, self.engine.perm_image(p))
        else:
            rows = F2Matrix.identity(self.dim).data
            for i in perm_word(p):
                rows = self.act(i - 1, rows)
            M = F2Matrix(self.dim, self.dim, rows)
        if len(self._perm_cache) < 64 and (len(self._perm_cache) + 1) * M.data.nbytes <= _PERM_CACHE_BYTES:
            self._perm_cache[p] = M
        return M

    def act_perm(self, p: Perm, rows: np.ndarray) -> np.ndarray:
        p = tuple(p)
        if self.engine is not None or p in self._perm_cache:
            return self._apply(self.perm_image(p), p, rows)
        for i in perm_word(p):
            rows = self.act(i - 1, rows)
        return rows

    def spin_generators(self) -> list[Perm]:
        """s_1 and the long cycle generate S_n; spinning with two generators is much cheaper."""
        if self.n <= 2:
            return [adjacent(self.n, 1)] if self.n == 2 else []
        return [adjacent(self.n, 1), cycle(self.n, *range(1, self.n + 1))]

    def spin(self, seeds: np.ndarray, base: Subspace | None = None, cap: int | None = None) -> Subspace:
        """Smallest invariant subspace containing seeds and base.

        With cap set, stops once the part beyond base exceeds cap; the result is then partial.
        """
        basis, _ = self.spin_partial(seeds, base, cap)
        return Subspace.span(basis, self.dim) if len(basis) else Subspace.zero(self.dim)

    def spin_partial(self, seeds, base: Subspace | None = None, cap: int | None = None):
        d = self.dim
        eb = EchelonBuilder(d)
        if base is not None and base.dim:
            eb.add(base.basis)
        start = eb.dim
        limit = None if cap is None else start + cap
        seeds = np.atleast_2d(np.asarray(seeds, dtype=np.uint64)).reshape(-1, nwords(d))
        before = eb.dim
        eb.add(seeds)
        frontier = eb.rows[before : eb.dim].copy()
        gens = self.spin_generators()
        complete = True
        while len(frontier) and eb.dim < d:
            nxt = []
            for p in gens:
                if limit is not None and eb.dim > limit:
                    break
                before = eb.dim
                eb.add(self.act_perm(p, frontier))
                if eb.dim > before:
                    nxt.append(eb.rows[before : eb.dim].copy())
            if limit is not None and eb.dim > limit:
                complete = False
                break
            frontier = np.vstack(nxt) if nxt else np.zeros((0, nwords(d)), dtype=np.uint64)
        return eb.basis().copy(), complete

    # checks

    def check_involutions(self) -> bool:
        I = F2Matrix.identity(self.dim).data
        return all(np.array_equal(self.act(i, self.act(i, I)), I) for i in range(len(self.images)))

    def check_braid(self) -> bool:
        I = F2Matrix.identity(self.dim).data
        m = len(self.images)
        for i in range(m - 1):
            a = self.act(i, self.act(i + 1, self.act(i, I)))
            b = self.act(i + 1, self.act(i, self.act(i + 1, I)))
            if not np.array_equal(a, b):
                return False
        for i in range(m):
            for j in range(i + 2, m):
                if not np.array_equal(self.act(i, self.act(j, I)), self.act(j, self.act(i, I))):
                    return False
        return True

    def verify(self) -> None:
        if not self.check_involutions():
            raise BuildError(f"{self.label}: a generator is not an involution")
        if not self.check_braid():
            raise BuildError(f"{self.label}: braid relations fail")

    def is_invariant(self, U: Subspace) -> bool:
        return all(not U.reduce(self.act(i, U.basis)).any() for i in range(len(self.images)))

    # derived modules

    def restrict(self, U: Subspace, label: str | None = None) -> "RepModule":
        imgs = []
        for i in range(len(self.images)):
            moved = self.act(i, U.basis)
            if U.reduce(moved).any():
                raise BuildError("subspace is not invariant")
            imgs.append(F2Matrix(U.dim, U.dim, _gather_bits(moved, U.pivots)))
        return RepModule(imgs, label or f"sub({self.label})", n=self.n, dim=U.dim)

    def quotient(self, U: Subspace, label: str | None = None) -> "RepModule":
        q = QuotientMap(U)
        lifts = q.lift(F2Matrix.identity(q.dim).data)
        imgs = [F2Matrix(q.dim, q.dim, q.project(self.act(i, lifts))) for i in range(len(self.images))]
        return RepModule(imgs, label or f"{self.label}/sub", n=self.n, dim=q.dim)

    def dual(self) -> "RepModule":
        return RepModule([g.T for g in self.images], f"dual({self.label})", n=self.n, dim=self.dim)

    # disk cache

    def to_bytes(self) -> bytes:
        return b"".join(g.to_bytes() for g in self.images)

    def provenance(self) -> str:
        h = hashlib.sha256()
        h.update(self.to_bytes())
        return h.hexdigest()

    def save(self, directory, stem: str | None = None) -> Path:
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        stem = stem or module_cache_key(self.label)
        blob = self.to_bytes()
        (directory / f"{stem}.bin").write_bytes(blob)
        meta = {
            "shape": self.label,
            "n": self.n,
            "dim": self.dim,
            "basis_order": BASIS_ORDER,
            "basis": [list(t.reading_word()) for t in self.basis_desc] if self.basis_desc else None,
            "provenance": hashlib.sha256(blob).hexdigest(),
        }
        (directory / f"{stem}.json").write_text(json.dumps(meta))
        return directory / f"{stem}.bin"

    @classmethod
    def load(cls, path) -> "RepModule":
        path = Path(path)
        meta = json.loads(path.with_suffix(".json").read_text())
        blob = path.read_bytes()
        if hashlib.sha256(blob).hexdigest() != meta["provenance"]:
            raise BuildError(f"{path}: provenance hash mismatch")
        imgs, off = [], 0
        for _ in range(meta["n"] - 1):
            size = 20 + 8 * meta["dim"] * nwords(meta["dim"])
            imgs.append(F2Matrix.from_bytes(blob[off : off + size]))
            off += size
        return cls(imgs, meta["shape"], n=meta["n"], dim=meta["dim"])


def module_cache_key(label: str) -> str:
    return hashlib.sha256(f"{label}|{BASIS_ORDER}".encode()).hexdigest()[:16]


_MODULES: dict[Partition, RepModule] = {}


def rep_matrices(lam, cache_dir=None) -> RepModule:
    lam = as_partition(lam)
    hit = _MODULES.get(lam)
    if hit is not None:
        return hit
    eng = engine_for(lam)
    label = str(lam)
    mod = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"{module_cache_key(label)}.bin"
        if path.exists():
            mod = RepModule.load(path)
            mod.engine = eng
            mod.basis_desc = None
    if mod is None:
        n = lam.n
        imgs = [F2Matrix(eng.dim, eng.dim, eng.perm_image(adjacent(n, i))) for i in range(1, n)]
        mod = RepModule(imgs, label, n=n, engine=eng, dim=eng.dim)
        if cache_dir is not None:
            mod.save(cache_dir)
    _MODULES[lam] = mod
    return mod


def basis_tableaux(lam) -> list[Tableau]:
    return engine_for(lam).tableaux()


def gram_matrix(lam) -> F2Matrix:
    return engine_for(lam).gram()


_SIMPLES: dict[Partition, RepModule] = {}


def simple_dim(lam) -> int:
    lam = as_partition(lam)
    if lam in _SIMPLES:
        return _SIMPLES[lam].dim
    return rank(gram_matrix(lam))


def simple_module(lam) -> RepModule:
    lam = as_partition(lam)
    from .partition_kit import is_p_regular

    if not is_p_regular(lam, 2):
        raise BuildError(f"{lam} is 2-singular; D^{lam} is not defined")
    if lam not in _SIMPLES:
        S = rep_matrices(lam)
        rad = kernel(gram_matrix(lam))
        _SIMPLES[lam] = S.quotient(rad, label=f"D^({lam})")
    return _SIMPLES[lam]


# homomorphisms


class SpechtHom:
    """A module map stored in row convention: row j is the image of the j-th domain basis vector."""

    def __init__(self, domain: RepModule, codomain: RepModule, rows: np.ndarray, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.rows = F2Matrix(domain.dim, codomain.dim, np.ascontiguousarray(rows, dtype=np.uint64))
        if check and not self.is_equivariant():
            raise BuildError(f"map {domain.label} -> {codomain.label} is not equivariant")

    @property
    def matrix(self) -> F2Matrix:
        """Column convention: codomain.dim x domain.dim."""
        return self.rows.T

    def is_equivariant(self) -> bool:
        for i in range(self.domain.n - 1):
            left = self.domain.act(i, F2Matrix.identity(self.domain.dim).data)
            left = _matmul(left, self.domain.dim, self.rows.data) if self.domain.dim else left
            right = self.codomain.act(i, self.rows.data)
            if not np.array_equal(left, right):
                return False
        return True

    @property
    def rank(self) -> int:
        return rank(self.rows)

    def image(self) -> Subspace:
        return Subspace.span(self.rows.data, self.codomain.dim)

    def kernel(self) -> Subspace:
        K = left_kernel_rows(self.rows.data, self.codomain.dim)
        return Subspace.span(K, self.domain.dim) if len(K) else Subspace.zero(self.domain.dim)

    def __matmul__(self, other: "SpechtHom") -> "SpechtHom":
        """self after other."""
        rows = _matmul(other.rows.data, other.codomain.dim, self.rows.data)
        return SpechtHom(other.domain, self.codomain, rows, check=False)

    def is_zero(self) -> bool:
        return self.rows.is_zero()


def _theta_tabloids(i: int, n: int) -> tuple[TwoRowEngine, TwoRowEngine, np.ndarray]:
    if n % 2:
        raise BuildError("theta_hat is only constructed for even n")
    if not 0 <= i < n // 2:
        raise BuildError(f"need 0 <= i < n/2, got i={i}")
    src = TwoRowEngine.get(Partition((n - i, i)))
    dst = TwoRowEngine.get(Partition((n - i - 1, i + 1)))
    l = (n - 2 * i) // 2
    a = src.row1[:, :i]
    c = src.row1[:, i:]
    parts = []
    for j in range(l):
        tops = np.hstack([a, c[:, 2 * j : 2 * j + 1]])
        bots = np.hstack([src.row2, c[:, 2 * j + 1 : 2 * j + 2]])
        parts.append(dst.expand(tops, bots))
    return src, dst, np.hstack(parts)


def theta_hat(i: int, n: int) -> SpechtHom:
    """The map S^(n-i,i) -> S^(n-i-1,i+1), e_s -> sum_j e_{t_j}."""
    src, dst, ranks = _theta_tabloids(i, n)
    rows = dst.coords_of_ranks(ranks)
    return SpechtHom(rep_matrices(src.shape), rep_matrices(dst.shape), rows)


def theta_tabloid_rows(i: int, n: int) -> F2Matrix:
    """Images of the domain basis under theta_hat, written over the tabloids of the codomain shape."""
    _, dst, ranks = _theta_tabloids(i, n)
    out = F2Matrix(ranks.shape[0], dst.ntab)
    for u in range(ranks.shape[0]):
        for r in ranks[u]:
            out.data[u, r >> 6] ^= np.uint64(1) << np.uint64(r & 63)
    return out


def tabloid_keys(mu: Sequence[int]) -> list[TabloidKey]:
    """Two-row tabloids in colex order of the second row."""
    a, b = mu
    n = a + b
    out = []
    for T in itertools.combinations(range(1, n + 1), b):
        out.append((T, TabloidKey((tuple(x for x in range(1, n + 1) if x not in T), T))))
    out.sort(key=lambda p: sum(binomial(x - 1, j + 1) for j, x in enumerate(p[0])))
    return [k for _, k in out]


def psi_row_map(u: int, mu: Sequence[int]) -> F2Matrix:
    """psi_{1,u}: M^mu -> M^(mu1+u, mu2-u); row = source tabloid, column = target tabloid (colex order)."""
    a, b = mu
    if not 1 <= u <= b:
        raise BuildError(f"u must lie in 1..{b}")
    n = a + b
    src = tabloid_keys((a, b))
    tgt = {k.row_sets[1]: i for i, k in enumerate(tabloid_keys((a + u, b - u)))}
    out = F2Matrix(len(src), len(tgt))
    for i, key in enumerate(src):
        for sub in itertools.combinations(key.row_sets[1], b - u):
            j = tgt[sub]
            out.data[i, j >> 6] ^= np.uint64(1) << np.uint64(j & 63)
    return out


def star_submodule(i: int, n: int) -> Subspace:
    """S^{*(n-i,i)}: the image of theta_hat(i-1)."""
    if i < 1:
        raise BuildError("the star submodule needs i >= 1")
    return theta_hat(i - 1, n).image()


# filtrations


@dataclass
class Filtration:
    module: RepModule
    labels: list[str]
    generators: list[np.ndarray]
    column_sets: list[list[tuple[int, ...]]]
    steps: list[Subspace] = field(default_factory=list)
    expected: list[int] = field(default_factory=list)

    @property
    def dims(self) -> list[int]:
        return [s.dim for s in self.steps]

    @property
    def quotient_dims(self) -> list[int]:
        out, prev = [], 0
        for s in self.steps:
            out.append(s.dim - prev)
            prev = s.dim
        return out

    def ok(self) -> bool:
        increasing = all(a <= b for a, b in zip(self.steps, self.steps[1:]))
        return increasing and self.quotient_dims == self.expected and self.steps[-1].dim == self.module.dim


def _choose_columns(head: Sequence[int], groups: Sequence[tuple[Sequence[int], int]]) -> list[tuple[int, ...]]:
    out = []
    for picks in itertools.product(*(itertools.combinations(g, k) for g, k in groups)):
        out.append(tuple(sorted(list(head) + [x for p in picks for x in p])))
    return out


def hook_filtration_columns(n: int, r: int, k: int) -> list[tuple[int, ...]]:
    """First-column sets T_X of the k-th generator for the filtration of (n-r, 1^r)."""
    nums = iter(range(1, n + 1))
    if r > 2 * k:
        a1, b1 = next(nums), next(nums)
        groups = [((next(nums), next(nums)), 1) for _ in range(r - 2 * k - 1)]
        groups += [((next(nums), next(nums), next(nums)), 2) for _ in range(k)]
        return _choose_columns((a1, b1), groups)
    a1 = next(nums)
    groups = [((next(nums), next(nums), next(nums)), 2) for _ in range(k)]
    return _choose_columns((a1,), groups)


def hook_filtration(n: int, r: int) -> Filtration:
    if not 0 <= r <= n - r:
        raise BuildError("hook_filtration needs 0 <= r <= n - r; use second_filtration")
    lam = Partition.hook(n, r)
    M = rep_matrices(lam)
    eng = HookEngine.get(lam) if r else None
    gens, colsets, steps, expected, labels = [], [], [], [], []
    prev = Subspace.zero(M.dim)
    for k in range(r // 2 + 1):
        cols = hook_filtration_columns(n, r, k)
        v = eng.coords_of_sets(cols) if eng else np.ones(1, dtype=np.uint64)
        gens.append(v)
        colsets.append(cols)
        prev = M.spin(v, base=prev)
        steps.append(prev)
        expected.append(dim_specht((n - r + 2 * k, r - 2 * k)))
        labels.append(f"M{k}")
    return Filtration(M, labels, gens, colsets, steps, expected)


def second_filtration_columns(n: int, r: int, l: int) -> list[tuple[int, ...]]:
    nums = iter(range(1, n + 1))
    if 2 * l == n - r:
        a = next(nums)
        bs = (next(nums), next(nums), next(nums))
        cs = tuple(next(nums) for _ in range(r - 1))
        return _choose_columns((a,), [(bs, 2), (cs, len(cs) - 1)])
    pairs = n - r - 1 if l == 0 else n - r - 2 * l
    ncs = 2 * r - n + 2 if l == 0 else 2 * r + 2 * l + 1 - n
    a1, b1 = next(nums), next(nums)
    groups = [((next(nums), next(nums)), 1) for _ in range(pairs - 1)]
    cs = tuple(next(nums) for _ in range(ncs))
    groups.append((cs, len(cs) - 1))
    return _choose_columns((a1, b1), groups)


def star_dim(r: int, n: int) -> int:
    """dim S^{*(r, n-r)} = dim S^(r+1, n-r-1) - dim S^(r+1, n-r-2)."""
    if n - r - 2 < 0:
        return dim_specht((r + 1, n - r - 1))
    return dim_specht((r + 1, n - r - 1)) - dim_specht((r + 1, n - r - 2))


def second_filtration(n: int, r: int) -> Filtration:
    if n % 2:
        raise BuildError("second_filtration is constructed for even n only")
    if not (n - r <= r <= n - 2):
        raise BuildError("second_filtration needs n - r <= r <= n - 2")
    lam = Partition.hook(n, r)
    M = rep_matrices(lam)
    eng = HookEngine.get(lam)
    gens, colsets, steps, expected, labels = [], [], [], [], []
    prev = Subspace.zero(M.dim)
    for l in range((n - r) // 2 + 1):
        if 2 * l == n - r and r + 3 > n:
            # no room for the (r+3)-tuple; the last step is the whole module anyway
            cols, v = [], np.zeros(nwords(M.dim), dtype=np.uint64)
            prev = Subspace.full(M.dim)
        else:
            cols = second_filtration_columns(n, r, l)
            v = eng.coords_of_sets(cols)
            prev = M.spin(v, base=prev)
        gens.append(v)
        colsets.append(cols)
        steps.append(prev)
        expected.append(star_dim(r, n) if l == 0 else dim_specht((r + 2 * l, n - r - 2 * l)))
        labels.append(f"N{l}")
    return Filtration(M, labels, gens, colsets, steps, expected)


# odd-n duality


def duality_seed_columns(n: int, r: int) -> list[tuple[int, ...]]:
    """First columns of the polytabloids in f(e_s) = h e_t: {l} with r+2..n for l = 1..r+1."""
    tail = tuple(range(r + 2, n + 1))
    return [tuple(sorted((l,) + tail)) for l in range(1, r + 2)]


def duality_map(n: int, r: int) -> SpechtHom:
    """Isomorphism S^(n-r,1^r) -> S^(r+1,1^(n-r-1)) for odd n."""
    if n % 2 == 0:
        raise BuildError("duality_map needs odd n")
    if not 1 <= r < n:
        raise BuildError("need 1 <= r < n")
    dom = Partition.hook(n, r)
    cod = Partition.hook(n, n - r - 1)
    deng, ceng = HookEngine.get(dom), HookEngine.get(cod)
    seed = duality_seed_columns(n, r)
    rows = np.zeros((deng.dim, nwords(ceng.dim)), dtype=np.uint64)
    for u, C in enumerate(deng.sets):
        rest = [x for x in range(1, n + 1) if x not in C]
        pi = {}
        for x, y in zip(range(1, n + 1), list(C) + rest):
            pi[x] = y
        rows[u] = ceng.coords_of_sets([tuple(pi[x] for x in c) for c in seed])
    return SpechtHom(rep_matrices(dom), rep_matrices(cod), rows)


sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
