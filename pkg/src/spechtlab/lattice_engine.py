"""Submodule lattices of GF(2) S_n-modules by spinning and Hom computations.

Simple submodules of a quotient M/X are found either by replaying a spin
program of a known simple module D, or, for two-row labels mu, from the
Specht presentation of S^mu: the images of S^mu -> M/X are exactly the
vectors w of M/X killed by the presentation's relations, and the simple
ones are those spinning up to dim D^mu.
"""

from __future__ import annotations

import itertools
import json
import re
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numba as nb
import numpy as np

from .f2_linalg import (
    F2Matrix,
    QuotientMap,
    Subspace,
    _first_bit,
    combine,
    left_kernel_rows,
    nwords,
)
from .partition_kit import Partition, as_partition, is_p_regular, two_part_partitions
from .specht_builder import (
    Perm,
    RepModule,
    adjacent,
    identity_perm,
    simple_dim,
    transposition,
)
from . import two_part_oracle as oracle

DEFAULT_GUARD = 10_000


class LatticeError(RuntimeError):
    pass


def spin(M: RepModule, seeds) -> Subspace:
    return M.spin(seeds)


# spin programs


@nb.njit(cache=True)
def _reduce_tracked(v, t, rows, trs, pivots, count):
    """Semi-echelon reduction of v with coefficient tracking in t."""
    for i in range(count):
        p = pivots[i]
        if (v[p >> 6] >> np.uint64(p & 63)) & np.uint64(1):
            for k in range(v.shape[0]):
                v[k] ^= rows[i, k]
            for k in range(t.shape[0]):
                t[k] ^= trs[i, k]


@dataclass
class SpinProgram:
    dim: int
    seed: int
    steps: list[tuple[int, int]]
    relations: list[tuple[int, int, np.ndarray]]
    events: list[tuple[str, int, int, int]]  # ("step", parent, gen, new index) or ("rel", parent, gen, rel index)

    def replay(self, M: RepModule, w: np.ndarray) -> tuple[np.ndarray, bool]:
        """Basis generated from w inside M and whether every relation holds."""
        vecs = [np.atleast_2d(np.asarray(w, dtype=np.uint64))[0]]
        ok = True
        for kind, parent, g, idx in self.events:
            img = M.act(g, vecs[parent][None, :])[0]
            if kind == "step":
                vecs.append(img)
            else:
                acc = img.copy()
                coeffs = self.relations[idx][2]
                for j in range(len(vecs)):
                    if (coeffs[j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                        acc ^= vecs[j]
                ok &= not acc.any()
        return np.array(vecs), ok


def spin_program(D: RepModule) -> SpinProgram:
    if D.dim == 0:
        raise LatticeError("cannot build a spin program for the zero module")
    d = D.dim
    W = nwords(d)
    rows = np.zeros((d, W), dtype=np.uint64)
    trs = np.zeros((d, W), dtype=np.uint64)
    pivots = np.zeros(d, dtype=np.int64)
    basis = np.zeros((d, W), dtype=np.uint64)
    count = 0

    def insert(v):
        nonlocal count
        t = np.zeros(W, dtype=np.uint64)
        if count < d:
            t[count >> 6] |= np.uint64(1) << np.uint64(count & 63)
        r = v.copy()
        _reduce_tracked(r, t, rows, trs, pivots, count)
        f = _first_bit(r)
        if f < 0:
            # r = v + sum(basis selected by t minus the new slot) = 0
            if count < d:
                t[count >> 6] ^= np.uint64(1) << np.uint64(count & 63)
            return False, t
        rows[count] = r
        trs[count] = t
        pivots[count] = f
        basis[count] = v
        count += 1
        return True, None

    seed = np.zeros(W, dtype=np.uint64)
    seed[0] = 1
    insert(seed)
    steps, relations, events = [], [], []
    i = 0
    while i < count:
        for g in range(D.n - 1):
            img = D.act(g, basis[i][None, :])[0]
            added, coeffs = insert(img)
            if added:
                steps.append((i, g))
                events.append(("step", i, g, count - 1))
            else:
                relations.append((i, g, coeffs))
                events.append(("rel", i, g, len(relations) - 1))
        i += 1
    if count != d:
        raise LatticeError(f"{D.label} is not cyclic on its first basis vector (spun {count} of {d})")
    return SpinProgram(d, 0, steps, relations, events)


def _project(X: Subspace | None, rows: np.ndarray) -> np.ndarray:
    if X is None or X.dim == 0:
        return rows
    return QuotientMap(X).project(rows)


def hom_space(D: RepModule, M: RepModule, X: Subspace | None = None,
              program: SpinProgram | None = None) -> np.ndarray:
    """Seed images w in M (modulo X) of the homomorphisms D -> M/X, as independent packed rows."""
    prog = program or spin_program(D)
    m = M.dim
    q = QuotientMap(X) if X is not None and X.dim else None
    cand = q.lift(F2Matrix.identity(q.dim).data) if q else F2Matrix.identity(m).data
    vecs = [cand]
    for kind, parent, g, idx in prog.events:
        if len(vecs[0]) == 0:
            break
        img = M.act(g, vecs[parent])
        if kind == "step":
            vecs.append(img)
            continue
        acc = img.copy()
        coeffs = prog.relations[idx][2]
        for j in range(len(vecs)):
            if (coeffs[j >> 6] >> np.uint64(j & 63)) & np.uint64(1):
                acc ^= vecs[j]
        acc = q.project(acc) if q else acc
        if not acc.any():
            continue
        K = left_kernel_rows(acc, q.dim if q else m)
        c = len(vecs[0])
        vecs = [combine(K, c, v) if len(K) else np.zeros((0, v.shape[1]), dtype=np.uint64) for v in vecs]
    return vecs[0]


# Specht presentations


@dataclass(frozen=True)
class SpechtPresentation:
    """Relations R with R z = 0 presenting S^mu on the polytabloid z of a fixed tableau.

    The tableau has singleton columns 1..n-2k and pair columns (n-2k+1, n-2k+2), ...
    Each relation is a tuple of permutations summed (the identity included).
    """

    mu: Partition
    relations: tuple[tuple[Perm, ...], ...]

    @classmethod
    def of(cls, mu) -> "SpechtPresentation":
        mu = as_partition(mu)
        if not mu.is_two_part:
            raise LatticeError("presentations are implemented for two-row labels")
        n, k = mu.n, mu.part(2)
        e = identity_perm(n)
        s = n - 2 * k
        rels: list[tuple[Perm, ...]] = []
        for i in range(1, s):
            rels.append((e, adjacent(n, i)))
        pairs = [(s + 2 * j + 1, s + 2 * j + 2) for j in range(k)]
        for p, q in pairs:
            rels.append((e, transposition(n, p, q)))
        for (p1, q1), (p2, q2) in zip(pairs, pairs[1:]):
            rels.append((e, transposition(n, q1, p2), transposition(n, p1, p2)))
            rels.append((e, transposition(n, q1, p2), transposition(n, q1, q2)))
        if k and s:
            p, q = pairs[-1]
            rels.append((e, transposition(n, p, 1), transposition(n, q, 1)))
        return cls(mu, tuple(rels))


def hom_from_specht(M: RepModule, X: Subspace | None, pres: SpechtPresentation,
                    memo: dict | None = None) -> np.ndarray:
    """Representatives (mod X) of the images of z under all maps S^mu -> M/X."""
    q = QuotientMap(X) if X is not None and X.dim else None
    qd = q.dim if q else M.dim
    memo = {} if memo is None else memo
    key: tuple = ()
    cand = memo.get(key)
    if cand is None:
        cand = q.lift(F2Matrix.identity(qd).data) if q else F2Matrix.identity(M.dim).data
        memo[key] = cand
    for rel in pres.relations:
        key = key + (rel,)
        hit = memo.get(key)
        if hit is not None:
            cand = hit
            continue
        if len(cand):
            acc = np.zeros_like(cand)
            for p in rel:
                acc ^= cand if p == rel[0] else M.act_perm(p, cand)
            acc = q.project(acc) if q else acc
            if acc.any():
                K = left_kernel_rows(acc, qd)
                cand = combine(K, len(cand), cand) if len(K) else np.zeros((0, cand.shape[1]), dtype=np.uint64)
        memo[key] = cand
    return cand


# candidates and socles


@dataclass
class Candidate:
    label: Partition
    dim: int
    module: RepModule | None = None
    presentation: SpechtPresentation | None = None
    _program: SpinProgram | None = None

    @classmethod
    def specht(cls, mu) -> "Candidate":
        mu = as_partition(mu)
        return cls(mu, simple_dim(mu), presentation=SpechtPresentation.of(mu))

    @classmethod
    def from_module(cls, label, D: RepModule) -> "Candidate":
        return cls(as_partition(label), D.dim, module=D)

    def seeds(self, M: RepModule, X: Subspace | None, memo: dict) -> np.ndarray:
        if self.presentation is not None:
            return hom_from_specht(M, X, self.presentation, memo)
        if self._program is None:
            self._program = spin_program(self.module)
        return hom_space(self.module, M, X, self._program)


def _nonzero_combos(rows: np.ndarray, limit: int = 12) -> Iterable[np.ndarray]:
    h = len(rows)
    if h > limit:
        raise LatticeError(f"Hom space of dimension {h} is too large to enumerate")
    for mask in range(1, 1 << h):
        v = np.zeros(rows.shape[1], dtype=np.uint64)
        for i in range(h):
            if mask >> i & 1:
                v ^= rows[i]
        yield v


def simple_submodules_over(M: RepModule, X: Subspace, cand: Candidate, memo: dict) -> list[Subspace]:
    """All X' > X with X'/X simple and isomorphic to the candidate's simple."""
    if cand.dim == 0:
        return []
    W = cand.seeds(M, X, memo)
    if len(W) == 0:
        return []
    q = M.dim - X.dim
    if q == cand.dim:
        return [Subspace.full(M.dim)]
    found: dict[str, Subspace] = {}
    for w in _nonzero_combos(W):
        basis, complete = M.spin_partial(w, base=X, cap=cand.dim)
        if complete and len(basis) - X.dim == cand.dim:
            S = Subspace.span(basis, M.dim)
            found.setdefault(S.digest(), S)
    return list(found.values())


def socle_simples(M: RepModule, simples: Sequence[Candidate], X: Subspace | None = None) -> list[tuple[Partition, Subspace]]:
    """Distinct simple submodules of M/X (as subspaces of M containing X), with their labels."""
    X = X if X is not None else Subspace.zero(M.dim)
    memo: dict = {}
    out = []
    for c in simples:
        for S in simple_submodules_over(M, X, c, memo):
            out.append((c.label, S))
    if M.dim > X.dim and not out:
        raise LatticeError("no simple submodule found: the candidate list misses a composition factor")
    return out


def socle(M: RepModule, simples: Sequence[Candidate], X: Subspace | None = None) -> Subspace:
    X = X if X is not None else Subspace.zero(M.dim)
    out = X
    for _, S in socle_simples(M, simples, X):
        out = out + S
    return out


def factor_multiset(lam) -> Counter:
    """Composition factors of a two-row or hook Specht module, from the combinatorial oracle."""
    lam = as_partition(lam)
    if lam.is_two_part:
        return Counter({f.nu: 1 for f in oracle.profile(lam, 2).factors})
    if lam.is_hook:
        n, r = lam.n, lam.leg
        return Counter({Partition((n - j, j)): m for j, m in oracle.hook_factors(n, r).items() if m})
    raise LatticeError(f"no factor oracle for {lam}")


def candidates_for(factors: Counter) -> list[Candidate]:
    return [Candidate.specht(mu) for mu in sorted(factors, key=lambda p: (-p.part(2), p.parts))]


# lattices


@dataclass
class LatticeGraph:
    dims: list[int]
    edges: list[tuple[int, int, str]]
    top: int
    bottom: int
    spaces: list[Subspace] | None = None
    truncated: bool = False
    module_label: str = ""

    @property
    def nodes(self) -> list[tuple[int, int]]:
        return list(enumerate(self.dims))

    def __len__(self) -> int:
        return len(self.dims)

    def dim_multiset(self) -> Counter:
        return Counter(self.dims)

    def covers(self) -> dict[int, list[tuple[int, str]]]:
        out: dict[int, list[tuple[int, str]]] = {i: [] for i in range(len(self.dims))}
        for a, b, lab in self.edges:
            out[a].append((b, lab))
        return out

    def leq(self) -> np.ndarray:
        """Inclusion order as a boolean reachability matrix."""
        n = len(self.dims)
        R = np.eye(n, dtype=bool)
        up = self.covers()
        for i in sorted(range(n), key=lambda i: -self.dims[i]):
            for j, _ in up[i]:
                R[i] |= R[j]
        return R

    def reversed(self) -> "LatticeGraph":
        total = self.dims[self.top]
        return LatticeGraph([total - d for d in self.dims], [(b, a, lab) for a, b, lab in self.edges],
                            top=self.bottom, bottom=self.top, module_label=f"dual({self.module_label})")

    def relabel(self, mapping: dict[str, str]) -> "LatticeGraph":
        return LatticeGraph(list(self.dims), [(a, b, mapping.get(l, l)) for a, b, l in self.edges],
                            self.top, self.bottom, module_label=self.module_label)

    def maximal_chain(self) -> list[int]:
        up = self.covers()
        chain = [self.bottom]
        while chain[-1] != self.top:
            nxt = up[chain[-1]]
            if not nxt:
                raise LatticeError("maximal chain stops below the top")
            chain.append(nxt[0][0])
        return chain

    def chain_labels(self, chain: Sequence[int] | None = None) -> list[str]:
        chain = chain or self.maximal_chain()
        lab = {(a, b): l for a, b, l in self.edges}
        return [lab[(a, b)] for a, b in zip(chain, chain[1:])]

    def factor_multiset(self) -> Counter:
        return Counter(self.chain_labels())

    def node_factors(self) -> list[Counter]:
        """Composition factors of each node, read along any path from the bottom."""
        out: list[Counter | None] = [None] * len(self.dims)
        out[self.bottom] = Counter()
        up = self.covers()
        for i in sorted(range(len(self.dims)), key=lambda i: self.dims[i]):
            if out[i] is None:
                continue
            for j, lab in up[i]:
                if out[j] is None:
                    out[j] = out[i] + Counter([lab])
        return out  # type: ignore[return-value]

    # serialisation

    def to_json(self, with_basis: bool = False) -> dict:
        out = {
            "nodes": [{"id": i, "dim": d} for i, d in enumerate(self.dims)],
            "edges": [{"from": a, "to": b, "label": l} for a, b, l in self.edges],
            "top": self.top,
            "bottom": self.bottom,
        }
        if self.truncated:
            out["truncated"] = True
        if self.module_label:
            out["module"] = self.module_label
        if with_basis and self.spaces is not None:
            for node, S in zip(out["nodes"], self.spaces):
                node["basis"] = F2Matrix(S.dim, S.ambient, S.basis).to_text().splitlines()
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw), indent=1)

    @classmethod
    def from_json(cls, data) -> "LatticeGraph":
        if isinstance(data, str):
            data = json.loads(data)
        nodes = sorted(data["nodes"], key=lambda x: x["id"])
        if [x["id"] for x in nodes] != list(range(len(nodes))):
            raise LatticeError("node ids must be 0..N-1")
        return cls([x["dim"] for x in nodes], [(e["from"], e["to"], e["label"]) for e in data["edges"]],
                   data["top"], data["bottom"], truncated=data.get("truncated", False),
                   module_label=data.get("module", ""))

    def to_dot(self) -> str:
        lines = ["digraph lattice {", "  rankdir=BT;"]
        if self.module_label:
            lines.append(f'  label="S^({self.module_label})";')
        lines.append(f'  graph [top="n{self.top}", bottom="n{self.bottom}"];')
        for i, d in enumerate(self.dims):
            lines.append(f'  n{i} [label="{d}"];')
        for a, b, l in self.edges:
            lines.append(f'  n{a} -> n{b} [label="D^({l})"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "LatticeGraph":
        dims = {int(m.group(1)): int(m.group(2)) for m in re.finditer(r'n(\d+) \[label="(\d+)"\];', text)}
        edges = [(int(a), int(b), l) for a, b, l in re.findall(r'n(\d+) -> n(\d+) \[label="D\^\(([^)]*)\)"\];', text)]
        tb = re.search(r'graph \[top="n(\d+)", bottom="n(\d+)"\];', text)
        lab = re.search(r'label="S\^\(([^)]*)\)";', text)
        if tb is None:
            raise LatticeError("DOT text lacks the top/bottom attributes")
        return cls([dims[i] for i in range(len(dims))], edges, int(tb.group(1)), int(tb.group(2)),
                   module_label=lab.group(1) if lab else "")

    def levels(self) -> list[int]:
        lev = [0] * len(self.dims)
        up = self.covers()
        for i in sorted(range(len(self.dims)), key=lambda i: self.dims[i]):
            for j, _ in up[i]:
                lev[j] = max(lev[j], lev[i] + 1)
        return lev

    def to_tikz(self) -> str:
        lev = self.levels()
        rows: dict[int, list[int]] = {}
        for i in sorted(range(len(self.dims)), key=lambda i: (lev[i], self.dims[i], i)):
            rows.setdefault(lev[i], []).append(i)
        pos = {}
        for y, ids in rows.items():
            for k, i in enumerate(ids):
                pos[i] = (k - (len(ids) - 1) / 2, y)
        out = ["\\begin{tikzpicture}[main/.style = {draw, circle}, scale = 3]"]
        if self.module_label:
            out.append(f"\\node at (0,-1/2) {{The submodule lattice for $S^{{({self.module_label})}}_2$}};")
        for i, d in enumerate(self.dims):
            x, y = pos[i]
            out.append(f"\\node[main] (v{i}) at ({x:g},{y}) {{${d}$}};")
        for a, b, l in self.edges:
            out.append(f"\\draw[->] (v{a}) edge [\"$D_2^{{({l})}}$\", pos = 0.5] (v{b});")
        out.append("\\end{tikzpicture}")
        return "\n".join(out) + "\n"

    # structure

    def _require_complete(self):
        if self.truncated:
            raise LatticeError("lattice was truncated by the node guard")

    def is_uniserial(self) -> bool:
        self._require_complete()
        up = self.covers()
        return all(len(v) <= 1 for v in up.values())

    def meet_join(self) -> tuple[np.ndarray, np.ndarray]:
        R = self.leq()
        n = len(self.dims)
        meet = np.zeros((n, n), dtype=np.int64)
        join = np.zeros((n, n), dtype=np.int64)
        for a in range(n):
            for b in range(n):
                lower = np.nonzero(R[:, a] & R[:, b])[0]
                upper = np.nonzero(R[a] & R[b])[0]
                m = [x for x in lower if all(R[y, x] for y in lower)]
                j = [x for x in upper if all(R[x, y] for y in upper)]
                if len(m) != 1 or len(j) != 1:
                    raise LatticeError("graph is not a lattice")
                meet[a, b], join[a, b] = m[0], j[0]
        return meet, join

    def is_distributive(self) -> bool:
        """Checks a meet (b join c) = (a meet b) join (a meet c) on all triples; no M3 or N5 sublattice."""
        self._require_complete()
        meet, join = self.meet_join()
        n = len(self.dims)
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if meet[a, join[b, c]] != join[meet[a, b], meet[a, c]]:
                        return False
        return True

    def isomorphic(self, other: "LatticeGraph", label_map: dict[str, str] | None = None,
                   match_dims: bool = False) -> dict[int, int] | None:
        """A node bijection carrying edges (and mapped labels) onto edges, or None."""
        if len(self) != len(other) or len(self.edges) != len(other.edges):
            return None
        lm = label_map or {}
        mine = {(a, b): lm.get(l, l) for a, b, l in self.edges}
        theirs = {(a, b): l for a, b, l in other.edges}
        if Counter(mine.values()) != Counter(theirs.values()):
            return None
        lev_a, lev_b = self.levels(), other.levels()

        def sig(g, lev, i, labs):
            ins = sorted(l for (a, b), l in labs.items() if b == i)
            outs = sorted(l for (a, b), l in labs.items() if a == i)
            return (lev[i], tuple(ins), tuple(outs))

        sa = [sig(self, lev_a, i, mine) for i in range(len(self))]
        sb = [sig(other, lev_b, i, theirs) for i in range(len(other))]
        order = sorted(range(len(self)), key=lambda i: self.dims[i])
        phi: dict[int, int] = {}
        used = set()

        def ok(i, j):
            if sa[i] != sb[j] or (match_dims and self.dims[i] != other.dims[j]):
                return False
            for (a, b), l in mine.items():
                if a == i and b in phi and theirs.get((j, phi[b])) != l:
                    return False
                if b == i and a in phi and theirs.get((phi[a], j)) != l:
                    return False
            return True

        def rec(k):
            if k == len(order):
                return True
            i = order[k]
            for j in range(len(other)):
                if j not in used and ok(i, j):
                    phi[i] = j
                    used.add(j)
                    if rec(k + 1):
                        return True
                    del phi[i]
                    used.discard(j)
            return False

        return dict(phi) if rec(0) else None


def _simple_head(label) -> Partition | None:
    try:
        lam = as_partition(label)
    except Exception:
        return None
    return lam if lam.n and is_p_regular(lam, 2) else None


def submodule_lattice(M: RepModule, simples: Sequence[Candidate] | None = None,
                      factors: Counter | None = None, guard: int = DEFAULT_GUARD) -> LatticeGraph:
    """Breadth-first closure from 0: every simple submodule of M/X gives a covering node X' of X."""
    if factors is None:
        try:
            factors = factor_multiset(M.label)
        except Exception:
            factors = None
    if simples is None:
        if factors is None:
            raise LatticeError(f"no candidate simples known for {M.label}")
        simples = candidates_for(factors)
    by_label = {c.label: c for c in simples}
    head = _simple_head(M.label)
    zero = Subspace.zero(M.dim)
    spaces = [zero]
    seen = {zero.digest(): 0}
    counts = [Counter()]
    edges: list[tuple[int, int, str]] = []
    queue = deque([0])
    truncated = False
    while queue:
        x = queue.popleft()
        X = spaces[x]
        if X.dim == M.dim:
            continue
        memo: dict = {}
        found_any = False
        for mu, cand in by_label.items():
            if factors is not None and counts[x][mu] >= factors.get(mu, 0):
                continue
            if mu == head and M.dim - X.dim != cand.dim:
                # S^mu has simple head D^mu occurring once, so D^mu sits at the bottom
                # of a quotient only when that quotient is D^mu itself
                continue
            for S in simple_submodules_over(M, X, cand, memo):
                found_any = True
                key = S.digest()
                y = seen.get(key)
                if y is None:
                    if len(spaces) >= guard:
                        truncated = True
                        continue
                    y = len(spaces)
                    seen[key] = y
                    spaces.append(S)
                    counts.append(counts[x] + Counter([mu]))
                    queue.append(y)
                edges.append((x, y, str(mu)))
        if not found_any and not truncated:
            raise LatticeError(f"quotient of dim {M.dim - X.dim} has no simple submodule among the candidates")
    # deterministic ids: by dimension, then canonical basis bytes
    order = sorted(range(len(spaces)), key=lambda i: (spaces[i].dim, spaces[i].digest()))
    new = {old: k for k, old in enumerate(order)}
    dims = [spaces[i].dim for i in order]
    es = sorted({(new[a], new[b], l) for a, b, l in edges})
    seen_pairs = Counter((a, b) for a, b, _ in es)
    if any(v > 1 for v in seen_pairs.values()):
        raise LatticeError("a covering pair received two different labels")
    top = new[seen[Subspace.full(M.dim).digest()]] if Subspace.full(M.dim).digest() in seen else len(dims) - 1
    return LatticeGraph(dims, es, top=top, bottom=new[0], spaces=[spaces[i] for i in order],
                        truncated=truncated, module_label=M.label)


def dual_module(M: RepModule) -> RepModule:
    return M.dual()


def is_uniserial(L: LatticeGraph) -> bool:
    return L.is_uniserial()


def is_distributive(L: LatticeGraph) -> bool:
    return L.is_distributive()


def check_lattice(M: RepModule, L: LatticeGraph) -> list[str]:
    """Invariance of every node, covering edges, and dimension accounting of labels."""
    problems = []
    R = L.leq()
    for i, S in enumerate(L.spaces or []):
        if not M.is_invariant(S):
            problems.append(f"node {i} is not invariant")
    for a, b, lab in L.edges:
        if L.dims[b] - L.dims[a] != simple_dim(lab):
            problems.append(f"edge {a}->{b} labelled {lab} has the wrong dimension")
        between = [z for z in range(len(L)) if z not in (a, b) and R[a, z] and R[z, b]]
        if between:
            problems.append(f"edge {a}->{b} is not a covering")
    if L.spaces is not None:
        for i, j in itertools.combinations(range(len(L)), 2):
            si, sj = L.spaces[i], L.spaces[j]
            if (si <= sj) != bool(R[i, j]) or (sj <= si) != bool(R[j, i]):
                problems.append(f"inclusion of nodes {i},{j} disagrees with the graph")
    total = sum(simple_dim(l) for l in L.chain_labels())
    if total != L.dims[L.top]:
        problems.append("composition factor dimensions do not add up to the module")
    return problems


# comparison with the oracle


@dataclass
class PredictionReport:
    lam: Partition
    mismatches: list[str] = field(default_factory=list)
    submodules: dict[int, int] = field(default_factory=dict)  # d -> node id of M_d

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {"lambda": list(self.lam.parts), "ok": self.ok, "mismatches": self.mismatches,
                "M_d": {str(d): i for d, i in self.submodules.items()}}


def compare_with_prediction(L: LatticeGraph, prof: oracle.TwoPartProfile) -> PredictionReport:
    rep = PredictionReport(prof.lam)
    if L.truncated:
        rep.mismatches.append("lattice truncated")
        return rep
    want = Counter(str(f.nu) for f in prof.factors)
    got = L.factor_multiset()
    if got != want:
        rep.mismatches.append(f"factors {dict(got)} != predicted {dict(want)}")
        return rep
    socle_edges = [l for a, b, l in L.edges if a == L.bottom]
    soc = str(oracle.socle_2part(prof.lam).nu) if prof.lam.part(2) else str(prof.lam)
    if socle_edges != [soc]:
        rep.mismatches.append(f"socle {socle_edges} != predicted [{soc}]")
    verdict = bool(oracle.uniserial_2part(prof.lam))
    if L.is_uniserial() != verdict:
        rep.mismatches.append(f"uniserial {L.is_uniserial()} != predicted {verdict}")
    nf = L.node_factors()
    for f in prof.factors:
        having = [i for i in range(len(L)) if nf[i][str(f.nu)]]
        smallest = min(having, key=lambda i: L.dims[i])
        R = L.leq()
        if not all(R[smallest, i] for i in having):
            rep.mismatches.append(f"no unique smallest submodule containing D^({f.nu})")
        rep.submodules[f.d] = smallest
    if len(rep.submodules) == len(prof.factors):
        R = L.leq()
        predicted = set(prof.order_pairs())
        for fi in prof.factors:
            for fj in prof.factors:
                if fi.d == fj.d:
                    continue
                contains = bool(R[rep.submodules[fj.d], rep.submodules[fi.d]])
                if contains != ((fi.d, fj.d) in predicted):
                    rep.mismatches.append(f"containment M_{fi.d} >= M_{fj.d}: observed {contains}")
    return rep


def periodic_label_map(lam, mu) -> dict[str, str]:
    """Labels of S^lam mapped to those of S^mu through the common d values."""
    lam, mu = as_partition(lam), as_partition(mu)
    per = oracle.lattice_periodic(lam, mu)
    if not per.holds or per.bijection is None:
        raise LatticeError(f"{lam} and {mu} are not predicted to be periodic")
    pl, pm = oracle.profile(lam), oracle.profile(mu)
    return {str(pl.factor_by_d(d).nu): str(pm.factor_by_d(e).nu) for d, e in per.bijection.items()}


def lattice_of(lam, guard: int = DEFAULT_GUARD) -> LatticeGraph:
    from .specht_builder import rep_matrices

    lam = as_partition(lam)
    return submodule_lattice(rep_matrices(lam), factors=factor_multiset(lam), guard=guard)


def two_part_labels(n: int) -> list[Partition]:
    return two_part_partitions(n, regular_only=True)
