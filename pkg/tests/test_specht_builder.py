import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spechtlab import specht_builder as sb
from spechtlab.f2_linalg import F2Matrix, Subspace, kernel, pack_rows, rank
from spechtlab.partition_kit import Partition, binomial, dim_specht, partitions_of
from spechtlab.specht_builder import (
    HookEngine,
    Tableau,
    TabloidKey,
    TwoRowEngine,
    adjacent,
    compose,
    cycle,
    perm_word,
    polytabloid_terms,
    rep_matrices,
    standard_tableaux,
    straighten,
)


def column_standard_tableaux(lam):
    lam = Partition(lam)
    n = lam.n
    widths = lam.conjugate().parts
    for perm in itertools.permutations(range(1, n + 1)):
        cols, k = [], 0
        ok = True
        for w in widths:
            c = perm[k:k + w]
            if any(a > b for a, b in zip(c, c[1:])):
                ok = False
                break
            cols.append(c)
            k += w
        if ok:
            yield Tableau.from_columns(lam, cols)


class TabloidOracle:
    """Coordinates of polytabloids found by elimination in the tabloid space."""

    def __init__(self, lam):
        self.basis = standard_tableaux(lam)
        self.keys: dict[TabloidKey, int] = {}
        rows = [self._vec(t) for t in self.basis]
        width = len(self.keys)
        self.d = len(rows)
        self.mat = np.zeros((self.d, width), dtype=np.uint8)
        for i, r in enumerate(rows):
            self.mat[i, r] = 1
        # row echelon of the basis with a transform, so that solving is reduction
        a = np.hstack([self.mat, np.eye(self.d, dtype=np.uint8)])
        self.piv = []
        r = 0
        for c in range(width):
            hit = next((i for i in range(r, self.d) if a[i, c]), None)
            if hit is None:
                continue
            a[[r, hit]] = a[[hit, r]]
            for i in range(self.d):
                if i != r and a[i, c]:
                    a[i] ^= a[r]
            self.piv.append(c)
            r += 1
        assert r == self.d, "standard polytabloids must be independent"
        self.ech = a

    def _vec(self, t):
        out = set()
        for k in polytabloid_terms(t):
            out ^= {self.keys.setdefault(k, len(self.keys))}
        return sorted(out)

    def coords(self, t):
        v = np.zeros(self.mat.shape[1], dtype=np.uint8)
        idx = self._vec(t)
        assert max(idx, default=-1) < len(v), "polytabloid leaves the tabloid span"
        v[idx] = 1
        x = np.zeros(self.d, dtype=np.uint8)
        for i, c in enumerate(self.piv):
            if v[c]:
                v ^= self.ech[i, : len(v)]
                x ^= self.ech[i, len(v):]
        assert not v.any(), "polytabloid is outside the span of the standard ones"
        return x


def test_tableau_basics():
    t = Tableau.from_rows([[1, 3, 5], [2, 4]])
    assert t.is_standard()
    assert t.columns == ((1, 2), (3, 4), (5,))
    assert t.reading_word() == (1, 2, 3, 4, 5)
    with pytest.raises(sb.BuildError):
        Tableau.from_rows([[1, 1], [2]])
    with pytest.raises(sb.BuildError):
        TabloidKey(((1, 3), (2, 4, 4)))
    assert len(polytabloid_terms(t)) == 4


def test_permutations():
    p = cycle(5, 1, 2, 3)
    q = adjacent(5, 4)
    assert compose(p, q) == (2, 3, 1, 5, 4)
    for perm in itertools.permutations(range(1, 6)):
        w = perm_word(perm)
        acc = tuple(range(1, 6))
        for i in w:
            acc = compose(adjacent(5, i), acc)
        assert acc == perm


def test_standard_tableaux_examples():
    assert len(standard_tableaux((2, 1))) == 2
    assert len(standard_tableaux((9, 5))) == 1001
    assert len(standard_tableaux((6, 1, 1, 1, 1))) == 126
    tabs = standard_tableaux((3, 2, 1))
    assert len(tabs) == 16
    words = [t.reading_word() for t in tabs]
    assert words == sorted(words)
    for lam in ["5,3", "4,1^3", "3,3,1"]:
        tabs = standard_tableaux(lam)
        assert all(t.is_standard() for t in tabs)
        assert [t.reading_word() for t in tabs] == sorted(t.reading_word() for t in tabs)


def test_straighten_examples():
    for lam in ["3,2", "2,2,1", "3,1,1"]:
        for i, t in enumerate(standard_tableaux(lam)):
            e = np.zeros(dim_specht(lam), dtype=np.uint8)
            e[i] = 1
            assert (straighten(t) == e).all()
    bad = Tableau.from_columns((2, 2), [(1, 4), (2, 3)])
    assert bad.is_column_standard() and not bad.is_standard()
    assert straighten(bad).tolist() == [1, 1]


def test_straighten_matches_tabloid_oracle():
    # every column-standard tableau of every shape with n <= 6
    for n in range(1, 7):
        for lam in partitions_of(n):
            oracle = TabloidOracle(lam)
            for t in column_standard_tableaux(lam.parts):
                assert (straighten(t) == oracle.coords(t)).all(), str(t)


_SEVEN = [p for p in partitions_of(7)]
_ORACLES: dict = {}


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(_SEVEN), st.permutations(list(range(1, 8))))
def test_straighten_matches_oracle_n7(lam, perm):
    cols, k = [], 0
    for w in lam.conjugate().parts:
        cols.append(tuple(sorted(perm[k:k + w])))
        k += w
    t = Tableau.from_columns(lam, cols)
    if lam not in _ORACLES:
        _ORACLES[lam] = TabloidOracle(lam)
    assert (straighten(t) == _ORACLES[lam].coords(t)).all()


def test_brute_force_helper():
    bad = Tableau.from_columns((3, 2), [(2, 4), (1, 5), (3,)])
    assert (sb.brute_force_coords(bad) == straighten(bad)).all()


def test_engines_agree_with_generic():
    for lam in ["4,3", "5,2", "4,4", "4,1^3", "3,1^4", "2,1^5"]:
        lam = Partition.parse(lam)
        M = rep_matrices(lam)
        G = sb.GenericEngine(lam)
        for i in range(1, lam.n):
            want = F2Matrix(M.dim, M.dim, G.perm_image(adjacent(lam.n, i)))
            assert M.images[i - 1] == want
        assert sb.gram_matrix(lam) == G.gram()


def test_trivial_and_sign_modules():
    for n in range(2, 8):
        for lam in [(n,), (1,) * n]:
            M = rep_matrices(lam)
            assert M.dim == 1
            assert all(g == F2Matrix.identity(1) for g in M.images)


@pytest.mark.parametrize("lam", ["5,3", "6,2", "4,2,1", "5,1^3", "7,7"])
def test_involution_and_braid(lam):
    M = rep_matrices(lam)
    assert M.check_involutions()
    assert M.check_braid()


def test_9_5_module():
    M = rep_matrices("9,5")
    assert M.dim == 1001
    assert M.check_involutions()
    assert M.check_braid()


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(1, 7))), st.permutations(list(range(1, 7))))
def test_perm_action_is_homomorphism(p, q):
    M = rep_matrices("4,2")
    p, q = tuple(p), tuple(q)
    assert M.perm_image(compose(p, q)) == M.perm_image(q) @ M.perm_image(p)


def test_gram_ranks():
    assert rank(sb.gram_matrix((13, 1))) == 12
    assert rank(sb.gram_matrix((12, 2))) == 64
    for n in range(2, 7):
        assert rank(sb.gram_matrix((1,) * n)) == 0
    G = sb.gram_matrix((5, 3))
    assert G == G.T


def test_simple_modules():
    assert sb.simple_dim((9,)) == 1
    assert sb.simple_dim((10, 4)) == 364
    assert sb.simple_dim((9, 5)) == 560
    D = sb.simple_module((6, 2))
    assert D.dim == 14
    assert D.check_involutions() and D.check_braid()
    with pytest.raises(sb.BuildError):
        sb.simple_module((2, 2))
    with pytest.raises(sb.BuildError):
        sb.simple_module((3, 1, 1))


def test_kernel_of_gram_9_5():
    assert kernel(sb.gram_matrix((9, 5))).dim == 1001 - 560


def test_module_cache_roundtrip(tmp_path):
    M = rep_matrices("5,2")
    path = M.save(tmp_path)
    N = sb.RepModule.load(path)
    assert N.dim == M.dim and all(a == b for a, b in zip(M.images, N.images))
    M2 = rep_matrices("5,2", cache_dir=tmp_path)
    assert all(a == b for a, b in zip(M.images, M2.images))


def test_theta_hat_basic():
    for n in (4, 6, 8):
        assert sb.theta_hat(0, n).rank == 1
    with pytest.raises(sb.BuildError):
        sb.theta_hat(1, 7)


@pytest.mark.parametrize("n", [4, 6, 8, 10, 12])
def test_theta_hat_exactness(n):
    k = n // 2
    thetas = [sb.theta_hat(i, n) for i in range(k)]
    for t in thetas:
        assert t.is_equivariant()
    for i in range(k - 1):
        assert (thetas[i + 1] @ thetas[i]).is_zero()
        assert thetas[i].rank + thetas[i + 1].rank == dim_specht((n - i - 1, i + 1))
        assert thetas[i].rank == dim_specht((n - i - 1, i))
    assert thetas[-1].rank == dim_specht((k, k))


def test_psi_maps():
    n = 6
    for i in range(0, 3):
        mu = (n - i - 1, i + 1)
        T = sb.theta_tabloid_rows(i, n)
        for u in range(1, mu[1] + 1):
            assert (T @ sb.psi_row_map(u, mu)).is_zero()
    P = sb.psi_row_map(2, (4, 2))
    assert P.ncols == 1 and all(P[r, 0] == 1 for r in range(P.nrows))
    with pytest.raises(sb.BuildError):
        sb.psi_row_map(3, (4, 2))


def test_kernel_intersection_4_2():
    mu = (4, 2)
    maps = [sb.psi_row_map(u, mu) for u in (1, 2)]
    dense = np.hstack([m.to_dense() for m in maps])
    K = kernel(F2Matrix.from_dense(dense.T))
    assert K.dim == dim_specht(mu) == 9


def test_star_submodules():
    assert sb.star_submodule(5, 14).dim == 429
    S = sb.star_submodule(7, 14)
    assert S.dim == 429 == dim_specht((7, 7))
    S = sb.star_submodule(3, 8)
    assert S.dim == sb.simple_dim((6, 2))
    M = rep_matrices((5, 3))
    assert M.is_invariant(S)
    for n in (8, 10, 12):
        for i in range(1, n // 2 + 1):
            assert sb.star_submodule(i, n).dim == sb.star_dim(n - i, n)
    assert [sb.star_submodule(i, 14).dim for i in range(1, 8)] == [1, 12, 65, 208, 429, 572, 429]


def test_hook_filtration_10_4():
    F = sb.hook_filtration(10, 4)
    assert F.dims == [90, 125, 126]
    assert F.quotient_dims == [90, 35, 1]
    assert F.ok()
    assert F.column_sets[0][0] == (1, 2, 3, 5, 7)
    assert len(F.column_sets[0]) == 8
    with pytest.raises(sb.BuildError):
        sb.hook_filtration(8, 5)


def test_hook_filtration_trivial_and_telescoping():
    F = sb.hook_filtration(7, 0)
    assert F.dims == [1]
    for n in range(1, 17):
        for r in range(0, n // 2 + 1):
            if n - r >= r:
                assert sum(dim_specht((n - r + 2 * k, r - 2 * k)) for k in range(r // 2 + 1)) == binomial(n - 1, r)


def test_second_filtration():
    F = sb.second_filtration(8, 5)
    assert F.dims == [14, 21]
    assert F.ok()
    for n in (4, 6, 8, 10, 12):
        for r in range(n // 2, n - 1):
            F = sb.second_filtration(n, r)
            assert F.ok(), (n, r)
            assert F.dims[0] == sb.star_dim(r, n)
    with pytest.raises(sb.BuildError):
        sb.second_filtration(9, 5)


def test_duality_map():
    seed = sb.duality_seed_columns(11, 4)
    assert len(seed) == 5
    f = sb.duality_map(11, 4)
    assert f.rank == binomial(10, 4)
    assert f.is_equivariant()
    for n in (3, 5, 7, 9):
        for r in range(1, n - 1):
            assert sb.duality_map(n, r).rank == binomial(n - 1, r)
    with pytest.raises(sb.BuildError):
        sb.duality_map(10, 3)
