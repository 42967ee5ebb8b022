import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spechtlab.f2_linalg import (
    EchelonBuilder,
    F2Matrix,
    SparseRows,
    Subspace,
    kernel,
    left_kernel_rows,
    pack_rows,
    rank,
    rref,
    rref_with_transform,
    unpack_rows,
)


def rng(seed=0):
    return np.random.default_rng(seed)


def random_subspace(g, ambient, k):
    return Subspace.span(F2Matrix.random(k, ambient, g).data, ambient)


def dense_rank(a):
    a = (np.array(a, dtype=np.uint8) & 1).copy()
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c]), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] ^= a[r]
        r += 1
    return r


def test_pack_roundtrip_and_padding():
    g = rng(1)
    d = g.integers(0, 2, size=(7, 131), dtype=np.uint8)
    p = pack_rows(d)
    assert p.shape == (7, 3)
    assert (unpack_rows(p, 131) == d).all()
    M = F2Matrix.from_dense(d)
    assert (M.data[:, -1] >> np.uint64(131 - 128) == 0).all()


def test_rref_trivial():
    I = F2Matrix.identity(70)
    R, r, piv = rref(I)
    assert R == I and r == 70 and list(piv) == list(range(70))
    Z = F2Matrix.zeros(5, 9)
    R, r, piv = rref(Z)
    assert R == Z and r == 0 and len(piv) == 0


def test_rref_transform_random():
    g = rng(2)
    for shape in [(50, 50), (30, 70), (90, 40)]:
        M = F2Matrix.random(*shape, g)
        R, E = rref_with_transform(M)
        assert E @ M == R
        R2, r, piv = rref(M)
        assert R2 == R
        assert r == dense_rank(M.to_dense())
        # pivots strictly increase and each pivot column is a unit column
        dense = R.to_dense()[:r]
        assert all(a < b for a, b in zip(piv, piv[1:]))
        for i, c in enumerate(piv):
            assert dense[:, c].sum() == 1 and dense[i, c] == 1


def test_rref_fixpoint():
    g = rng(3)
    for _ in range(5):
        M = F2Matrix.random(40, 75, g)
        R, _, _ = rref(M)
        assert rref(R)[0] == R


def test_kernel():
    assert kernel(F2Matrix.identity(20)).dim == 0
    assert kernel(F2Matrix.zeros(4, 20)).dim == 20
    g = rng(4)
    for _ in range(5):
        M = F2Matrix.random(30, 64, g)
        K = kernel(M)
        assert K.dim == 64 - rank(M)
        for v in K.basis:
            assert not M.apply(v).any()


def test_left_kernel_rows():
    g = rng(5)
    M = F2Matrix.random(40, 25, g)
    K = left_kernel_rows(M.data, 25)
    assert K.shape[0] == 40 - rank(M)
    X = F2Matrix(K.shape[0], 40, K)
    assert (X @ M).is_zero()


def test_matmul_associative_and_transpose():
    g = rng(6)
    for n in (17, 64, 130, 256):
        A, B, C = (F2Matrix.random(n, n, g) for _ in range(3))
        assert (A @ B) @ C == A @ (B @ C)
        assert (A @ B).T == B.T @ A.T
        assert A.T.T == A
    A = F2Matrix.random(9, 70, g)
    B = F2Matrix.random(70, 33, g)
    want = (A.to_dense().astype(int) @ B.to_dense().astype(int)) % 2
    assert ((A @ B).to_dense() == want).all()


def test_serialization():
    g = rng(7)
    M = F2Matrix.random(13, 77, g)
    assert F2Matrix.from_bytes(M.to_bytes()) == M
    assert F2Matrix.from_text(M.to_text()) == M
    with pytest.raises(ValueError):
        F2Matrix.from_bytes(b"XXXX" + M.to_bytes()[4:])


def test_save_load(tmp_path):
    M = F2Matrix.random(5, 5, rng(8))
    M.save(tmp_path / "m.bin")
    assert F2Matrix.load(tmp_path / "m.bin") == M


def test_sparse_rows_match_dense():
    g = rng(9)
    d = (g.random((60, 90)) < 0.05).astype(np.uint8)
    A = F2Matrix.from_dense(d)
    S = SparseRows.from_matrix(A)
    assert S.to_matrix() == A
    assert S.nnz == int(d.sum())
    B = F2Matrix.random(90, 40, g)
    assert F2Matrix(60, 40, S.left_of(B.data)) == A @ B
    C = F2Matrix.random(10, 60, g)
    assert F2Matrix(10, 90, S.right_of(C.data)) == C @ A


def test_subspace_idempotence_and_membership():
    g = rng(10)
    U = random_subspace(g, 64, 12)
    assert U + U == U
    assert U & U == U
    for v in U.basis:
        assert U.contains(v)
    assert Subspace.zero(64) <= U <= Subspace.full(64)
    with pytest.raises(ValueError):
        U + Subspace.zero(65)


def test_canonical_form():
    g = rng(11)
    for _ in range(10):
        U = random_subspace(g, 100, 15)
        change = F2Matrix.random(U.dim, U.dim, g)
        while rank(change) < U.dim:
            change = F2Matrix.random(U.dim, U.dim, g)
        V = Subspace.span((change @ U.matrix()).data, 100)
        assert U == V
        assert U.digest() == V.digest()
        assert hash(U) == hash(V)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 2**32 - 1))
def test_modular_law(k1, k2, seed):
    g = rng(seed)
    U = random_subspace(g, 64, k1)
    W = random_subspace(g, 64, k2)
    # force some overlap
    if U.dim and W.dim:
        W = W + Subspace.span(U.basis[:1], 64)
    assert (U + W).dim + (U & W).dim == U.dim + W.dim
    I = U & W
    assert I <= U and I <= W
    assert U <= U + W and W <= U + W


def test_quotient_map():
    g = rng(12)
    U = random_subspace(g, 80, 20)
    q = U.quotient()
    assert q.dim == 60
    v = F2Matrix.random(5, 60, g).data
    assert (q.project(q.lift(v)) == v).all()
    assert not q.project(U.basis).any()


def test_echelon_builder():
    g = rng(13)
    rows = F2Matrix.random(30, 40, g).data
    eb = EchelonBuilder(40)
    added = eb.add(rows)
    assert eb.dim == rank(F2Matrix(30, 40, rows)) == int(added.sum())
    assert eb.subspace() == Subspace.span(rows, 40)
    assert not eb.reduce(rows).any()
