"""End-to-end checks of the lattice, filtration and table computations.

Each test carries a criterion marker; the terminal summary prints one PASS/FAIL
line per criterion.
"""

from functools import lru_cache

import numpy as np
import pytest

from spechtlab import lattice_engine as le
from spechtlab import specht_builder as sb
from spechtlab import two_part_oracle as oracle
from spechtlab.partition_kit import Partition, binomial, dim_specht, partitions_of

import lattice_fixtures as fx
import test_f2_linalg
import test_specht_builder
import test_two_part_oracle

crit = pytest.mark.criterion


@lru_cache(maxsize=None)
def lattice(lam) -> le.LatticeGraph:
    return le.lattice_of(lam)


@lru_cache(maxsize=None)
def module(lam):
    return sb.rep_matrices(lam)


@lru_cache(maxsize=None)
def formula_simple_dim(nu: tuple) -> int:
    """dim D^nu from Specht dims by unitriangularity of the decomposition matrix."""
    nu = Partition(nu)
    return dim_specht(nu) - sum(formula_simple_dim(f.nu.parts) for f in oracle.profile(nu).factors if f.nu != nu)


def chain_total(L) -> int:
    return sum(sb.simple_dim(l) for l in L.chain_labels())


def predicted_dims(base: str, target: str) -> list[int]:
    """Node dims of S^target read off the computed lattice of S^base through the periodic relabelling."""
    L = lattice(base)
    m = le.periodic_label_map(base, target)
    return sorted(sum(c * formula_simple_dim(Partition.parse(m[l]).parts) for l, c in nf.items())
                  for nf in L.node_factors())


# 1


@crit(1, "S^(9,5) lattice")
def test_nine_five():
    L = lattice("9,5")
    assert sorted(L.dims) == [0, 64, 65, 77, 429, 441, 1001]
    assert fx.match_fixture(L, fx.NINE_FIVE) is not None
    assert le.check_lattice(module("9,5"), L) == []


# 2


@pytest.fixture(scope="module")
def seventeen_five():
    return le.lattice_of("17,5")


@crit(2, "periodicity at (17,5) and (25,5)")
def test_seventeen_five_reference_dims(seventeen_five):
    # the reference top node is dim D^(17,5); dim S^(17,5) is 19019
    assert sorted(seventeen_five.dims) == [0, 188, 189, 209, 4655, 4675, 14344]


@crit(2, "periodicity at (17,5) and (25,5)")
def test_seventeen_five_isomorphic_to_nine_five(seventeen_five):
    L = seventeen_five
    assert sorted(L.dims) == [0, 188, 189, 209, 4655, 4675, 19019]
    assert L.dims[L.top] == dim_specht((17, 5)) == chain_total(L)
    m = le.periodic_label_map("9,5", "17,5")
    assert lattice("9,5").isomorphic(L, label_map=m) is not None
    assert oracle.lattice_periodic((9, 5), (17, 5)).bijection == {0: 0, 1: 1, 3: 3, 4: 4, 5: 5}
    assert predicted_dims("9,5", "17,5") == sorted(L.dims)


@crit(2, "periodicity at (17,5) and (25,5)")
def test_twenty_five_five_by_oracle():
    per = oracle.lattice_periodic((9, 5), (25, 5))
    assert per.holds
    assert predicted_dims("9,5", "25,5") == [0, 376, 377, 405, 20097, 20125, 115101]
    assert dim_specht((25, 5)) == 115101
    # the relabelled diamond keeps the expected edge labels
    m = le.periodic_label_map("9,5", "25,5")
    assert sorted(m.values()) == ["25,5", "26,4", "28,2", "29,1", "30"]


# 3


GALLERY = ["14", "13,1", "12,2", "11,3", "10,4", "9,5", "8,6", "7,7"]


@crit(3, "n=14 gallery and star submodules")
@pytest.mark.parametrize("lam", GALLERY)
def test_gallery(lam):
    L = lattice(lam)
    phi = fx.match_fixture(L, fx.GALLERY_14[lam])
    assert phi is not None
    assert le.check_lattice(module(lam), L) == []
    if lam in fx.STAR_NODES_14:
        i = Partition.parse(lam).part(2)
        star = sb.star_submodule(i, 14)
        inside = {name for name, j in phi.items() if L.spaces[j] <= star}
        assert inside == fx.STAR_NODES_14[lam]
        assert star.dim == sb.star_dim(14 - i, 14)


# 4


@crit(4, "exact sequence of theta maps")
@pytest.mark.parametrize("n", [8, 10, 12, 14])
def test_exact_sequence(n):
    k = n // 2
    thetas = [sb.theta_hat(i, n) for i in range(k)]
    assert thetas[0].rank == 1
    for i in range(k - 1):
        assert (thetas[i + 1] @ thetas[i]).is_zero()
        assert thetas[i].rank + thetas[i + 1].rank == dim_specht((n - i - 1, i + 1))
    assert thetas[-1].rank == dim_specht((k, k))


# 5


@crit(5, "hook filtration")
def test_hook_filtrations():
    for n in range(1, 13):
        for r in range(0, n // 2 + 1):
            F = sb.hook_filtration(n, r)
            want = [dim_specht((n - r + 2 * k, r - 2 * k)) for k in range(r // 2 + 1)]
            assert F.quotient_dims == want, (n, r)
            assert F.dims[-1] == binomial(n - 1, r)


@crit(5, "hook filtration")
def test_six_one_four_lattice():
    L = lattice("6,1^4")
    assert len(L) == 22
    assert fx.match_fixture(L, fx.HOOK_6_1_4) is not None
    assert sorted(L.dims).count(83) == 3 and sorted(L.dims).count(99) == 3
    F = sb.hook_filtration(10, 4)
    assert [s.digest() for s in F.steps] == [L.spaces[i].digest() for i in
                                              (L.dims.index(90), L.dims.index(125), L.dims.index(126))]


# 6


@crit(6, "second filtration and odd-n duality")
def test_six_one_two_lattice():
    L = lattice("6,1^2")
    assert sorted(L.dims) == [0, 6, 7, 20, 21]
    assert fx.match_fixture(L, fx.HOOK_6_1_2) is not None


@crit(6, "second filtration and odd-n duality")
def test_second_filtrations():
    for n in range(4, 15, 2):
        for r in range(n // 2, n - 1):
            assert sb.second_filtration(n, r).ok(), (n, r)


@crit(6, "second filtration and odd-n duality")
@pytest.mark.parametrize("n", [9, 11, 13])
def test_self_duality(n):
    for r in range(n):
        A = lattice(str(Partition.hook(n, r)))
        B = lattice(str(Partition.hook(n, n - r - 1)))
        assert A.isomorphic(A.reversed(), match_dims=True) is not None, r
        assert A.isomorphic(B, match_dims=True) is not None, r


# 7


@crit(7, "oracle and matrix lattices agree")
@pytest.mark.parametrize("n", range(1, 15))
def test_oracle_vs_matrix(n):
    for b in range(n // 2 + 1):
        lam = Partition((n - b, b))
        rep = le.compare_with_prediction(lattice(str(lam)), oracle.profile(lam))
        assert rep.ok, (str(lam), rep.mismatches)


# 8


REFERENCE_WITNESS = {
    "even": [6, 12, 8, 24, 4, 14, 6, 26, 6, 8, 8, 28, 4, 10, 6, 30,
             6, 12, 8, 16, 4, 14, 6, 18, 6, 8, 8, 20, 4, 10, 6, 22],
    "odd": [7, 23, 7, 13, 9, 25, 5, 15, 7, 27, 7, 9, 9, 29, 5, 11,
            7, 31, 7, 13, 9, 17, 5, 15, 7, 19, 7, 9, 9, 21, 5, 11],
}
REFERENCE_UNIQUE_MIN = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2), (2, 3), (3, 3), (0, 4), (4, 4),
                        (5, 6), (6, 7), (7, 7), (0, 8), (8, 8), (13, 14), (14, 15), (15, 15), (0, 16), (16, 16)]
REFERENCE_FILTRATION_WITNESS = [(4, 4, 4), (6, 7, 5), (0, 8, 6), (8, 8, 6), (13, 14, 10), (14, 15, 5),
                                (15, 15, 11), (0, 16, 6), (16, 16, 6)]
REFERENCE_REMAINING = [(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (2, 2), (2, 3), (3, 3), (0, 4), (5, 6), (7, 7)]


@crit(8, "classification tables")
def test_tables():
    for parity, col in REFERENCE_WITNESS.items():
        assert oracle.witness_table(parity) == list(enumerate(col))
    assert oracle.unique_min_table() == REFERENCE_UNIQUE_MIN
    assert oracle.filtration_witness_table() == REFERENCE_FILTRATION_WITNESS
    assert oracle.remaining_cases_table() == REFERENCE_REMAINING


@crit(8, "classification tables")
@pytest.mark.parametrize("n", range(1, 14))
def test_hook_uniserial_vs_lattice(n):
    for r in range(n):
        L = lattice(str(Partition.hook(n, r)))
        assert L.is_uniserial() == oracle.hook_uniserial(n, r), (n, r)


# 9


@crit(9, "decomposition numbers and dimension accounting")
def test_hook_decomposition_numbers():
    assert [oracle.hook_decomp(13, 4, j) for j in (4, 2, 0)] == [1, 2, 3]
    L = lattice("9,1^4")
    assert L.factor_multiset() == {"9,4": 1, "11,2": 2, "13": 3}


@crit(9, "decomposition numbers and dimension accounting")
def test_chain_dimension_accounting():
    shapes = {str(Partition((n - b, b))) for n in range(1, 15) for b in range(n // 2 + 1)}
    shapes |= {str(Partition.hook(n, r)) for n in range(1, 14) for r in range(n)}
    for lam in sorted(shapes):
        L = lattice(lam)
        assert chain_total(L) == L.dims[L.top] == dim_specht(Partition.parse(lam)), lam
        for a, b, l in L.edges:
            assert L.dims[b] - L.dims[a] == sb.simple_dim(l)


# 10


@crit(10, "property suites")
def test_straightening_exhaustive_n7():
    for lam in partitions_of(7):
        oracle_ = test_specht_builder.TabloidOracle(lam)
        for t in test_specht_builder.column_standard_tableaux(lam.parts):
            assert np.array_equal(sb.straighten(t), oracle_.coords(t)), str(t)


@crit(10, "property suites")
@pytest.mark.parametrize("name", [
    "test_straighten_matches_tabloid_oracle",
    "test_engines_agree_with_generic",
    "test_perm_action_is_homomorphism",
    "test_9_5_module",
])
def test_specht_properties(name):
    getattr(test_specht_builder, name)()


@crit(10, "property suites")
@pytest.mark.parametrize("lam", ["5,3", "6,2", "4,2,1", "5,1^3", "7,7"])
def test_braid_and_involution(lam):
    test_specht_builder.test_involution_and_braid(lam)


@crit(10, "property suites")
@pytest.mark.parametrize("name", [
    "test_subspace_idempotence_and_membership",
    "test_canonical_form",
    "test_modular_law",
    "test_rref_transform_random",
    "test_matmul_associative_and_transpose",
])
def test_subspace_laws(name):
    getattr(test_f2_linalg, name)()


@crit(10, "property suites")
@pytest.mark.parametrize("name", [
    "test_interval_closure",
    "test_reformulation_equivalence",
    "test_unique_maximal_is_socle",
    "test_uniserial_iff_total_order",
])
def test_oracle_properties(name):
    getattr(test_two_part_oracle, name)()
