"""Bit-packed linear algebra over GF(2).

Rows are packed little-endian into uint64 words: bit j of a row lives in
word j >> 6 at position j & 63.  Every kernel is compiled with numba.
"""

from __future__ import annotations

import hashlib
import struct
from pathlib import Path

import numba as nb
import numpy as np

U64 = np.uint64
_ONE = np.uint64(1)
_MAGIC = b"F2M1"


def nwords(n: int) -> int:
    return (n + 63) >> 6


# kernels


@nb.njit(cache=True)
def ctz(x):
    """Trailing zero count of a nonzero uint64."""
    n = 0
    if (x & np.uint64(0xFFFFFFFF)) == 0:
        n += 32
        x >>= np.uint64(32)
    if (x & np.uint64(0xFFFF)) == 0:
        n += 16
        x >>= np.uint64(16)
    if (x & np.uint64(0xFF)) == 0:
        n += 8
        x >>= np.uint64(8)
    if (x & np.uint64(0xF)) == 0:
        n += 4
        x >>= np.uint64(4)
    if (x & np.uint64(0x3)) == 0:
        n += 2
        x >>= np.uint64(2)
    if (x & np.uint64(0x1)) == 0:
        n += 1
    return n


@nb.njit(cache=True)
def msb(x):
    """Index of the highest set bit of a nonzero uint64."""
    n = 0
    if x >> np.uint64(32):
        n += 32
        x >>= np.uint64(32)
    if x >> np.uint64(16):
        n += 16
        x >>= np.uint64(16)
    if x >> np.uint64(8):
        n += 8
        x >>= np.uint64(8)
    if x >> np.uint64(4):
        n += 4
        x >>= np.uint64(4)
    if x >> np.uint64(2):
        n += 2
        x >>= np.uint64(2)
    if x >> np.uint64(1):
        n += 1
    return n


@nb.njit(cache=True)
def _getbit(row, j):
    return (row[j >> 6] >> np.uint64(j & 63)) & np.uint64(1)


@nb.njit(cache=True)
def _rref_inplace(a, ncols):
    """Gauss-Jordan on a (rows x words); returns the pivot columns."""
    nrows, nw = a.shape
    pivots = np.empty(min(nrows, ncols), dtype=np.int64)
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        mask = np.uint64(1) << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if a[r, w] & mask:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(w, nw):
                t = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = t
        for r in range(nrows):
            if r != rank and (a[r, w] & mask):
                for k in range(w, nw):
                    a[r, k] ^= a[rank, k]
        pivots[rank] = col
        rank += 1
    return pivots[:rank]


@nb.njit(cache=True)
def _reduce_rows(vecs, basis, pivots):
    """Fully reduce each row of vecs against an RREF basis (in place)."""
    nv, nw = vecs.shape
    for i in range(nv):
        for b in range(pivots.shape[0]):
            c = pivots[b]
            if (vecs[i, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                for k in range(c >> 6, nw):
                    vecs[i, k] ^= basis[b, k]


@nb.njit(cache=True)
def _semi_reduce(vec, rows, pivots, count):
    nw = vec.shape[0]
    for b in range(count):
        c = pivots[b]
        if (vec[c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
            for k in range(c >> 6, nw):
                vec[k] ^= rows[b, k]


@nb.njit(cache=True)
def _first_bit(vec):
    for k in range(vec.shape[0]):
        x = vec[k]
        if x:
            return (k << 6) + ctz(x)
    return -1


@nb.njit(cache=True)
def _insert_batch(batch, rows, pivots, count, cap_count):
    """Semi-echelon insertion of each batch row; returns new count and an added-mask."""
    added = np.zeros(batch.shape[0], dtype=np.bool_)
    for i in range(batch.shape[0]):
        if count >= cap_count:
            break
        v = batch[i]
        _semi_reduce(v, rows, pivots, count)
        f = _first_bit(v)
        if f >= 0:
            rows[count, :] = v
            pivots[count] = f
            count += 1
            added[i] = True
    return count, added


@nb.njit(cache=True)
def _matmul(a, acols, b):
    """a (m x k) times b (k x n), both packed; acols = k."""
    m = a.shape[0]
    out = np.zeros((m, b.shape[1]), dtype=np.uint64)
    nwb = b.shape[1]
    for i in range(m):
        for w in range(a.shape[1]):
            x = a[i, w]
            while x:
                low = x & (~x + np.uint64(1))
                j = ctz(low)
                col = (w << 6) + j
                if col < acols:
                    for k in range(nwb):
                        out[i, k] ^= b[col, k]
                x ^= low
    return out


@nb.njit(cache=True)
def _transpose(a, nrows, ncols):
    out = np.zeros((ncols, (nrows + 63) >> 6), dtype=np.uint64)
    for i in range(nrows):
        wi = i >> 6
        bi = np.uint64(1) << np.uint64(i & 63)
        for w in range(a.shape[1]):
            x = a[i, w]
            while x:
                low = x & (~x + np.uint64(1))
                j = ctz(low)
                col = (w << 6) + j
                if col < ncols:
                    out[col, wi] |= bi
                x ^= low
    return out


@nb.njit(cache=True)
def _kernel_from_rref(r, pivots, ncols):
    rank = pivots.shape[0]
    is_piv = np.zeros(ncols, dtype=np.bool_)
    for i in range(rank):
        is_piv[pivots[i]] = True
    nfree = ncols - rank
    out = np.zeros((nfree, (ncols + 63) >> 6), dtype=np.uint64)
    k = 0
    for f in range(ncols):
        if is_piv[f]:
            continue
        out[k, f >> 6] |= np.uint64(1) << np.uint64(f & 63)
        for i in range(rank):
            if (r[i, f >> 6] >> np.uint64(f & 63)) & np.uint64(1):
                p = pivots[i]
                out[k, p >> 6] |= np.uint64(1) << np.uint64(p & 63)
        k += 1
    return out


@nb.njit(cache=True)
def _gather_bits(a, cols):
    """Select columns 'cols' of each packed row into a new packed matrix."""
    m = a.shape[0]
    out = np.zeros((m, (cols.shape[0] + 63) >> 6), dtype=np.uint64)
    for i in range(m):
        for t in range(cols.shape[0]):
            c = cols[t]
            if (a[i, c >> 6] >> np.uint64(c & 63)) & np.uint64(1):
                out[i, t >> 6] |= np.uint64(1) << np.uint64(t & 63)
    return out


@nb.njit(cache=True)
def _scatter_bits(a, cols, ncols):
    m = a.shape[0]
    out = np.zeros((m, (ncols + 63) >> 6), dtype=np.uint64)
    for i in range(m):
        for t in range(cols.shape[0]):
            if (a[i, t >> 6] >> np.uint64(t & 63)) & np.uint64(1):
                c = cols[t]
                out[i, c >> 6] |= np.uint64(1) << np.uint64(c & 63)
    return out


@nb.njit(cache=True)
def _row_parity_products(a, v):
    """Bit i of the result is <a_i, v>."""
    out = np.zeros((a.shape[0] + 63) >> 6, dtype=np.uint64)
    for i in range(a.shape[0]):
        acc = np.uint64(0)
        for k in range(a.shape[1]):
            acc ^= a[i, k] & v[k]
        # parity of acc
        acc ^= acc >> np.uint64(32)
        acc ^= acc >> np.uint64(16)
        acc ^= acc >> np.uint64(8)
        acc ^= acc >> np.uint64(4)
        acc ^= acc >> np.uint64(2)
        acc ^= acc >> np.uint64(1)
        if acc & np.uint64(1):
            out[i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return out


@nb.njit(cache=True)
def _popcount_rows(a):
    out = np.zeros(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        c = 0
        for k in range(a.shape[1]):
            x = a[i, k]
            while x:
                x &= x - np.uint64(1)
                c += 1
        out[i] = c
    return out


# packing helpers


def pack_rows(dense) -> np.ndarray:
    dense = np.asarray(dense, dtype=np.uint8) & 1
    if dense.ndim == 1:
        dense = dense[None, :]
    m, n = dense.shape
    w = nwords(n)
    padded = np.zeros((m, w * 64), dtype=np.uint8)
    padded[:, :n] = dense
    return np.packbits(padded, axis=1, bitorder="little").view(np.uint64).reshape(m, w).copy()


def unpack_rows(packed: np.ndarray, ncols: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :ncols]


def _clear_padding(data: np.ndarray, ncols: int) -> None:
    extra = ncols & 63
    if extra and data.shape[1]:
        data[:, -1] &= np.uint64((1 << extra) - 1)


class F2Matrix:
    """Dense row-packed matrix over GF(2)."""

    __slots__ = ("nrows", "ncols", "data")

    def __init__(self, nrows: int, ncols: int, data: np.ndarray | None = None):
        self.nrows = int(nrows)
        self.ncols = int(ncols)
        if data is None:
            data = np.zeros((self.nrows, nwords(self.ncols)), dtype=np.uint64)
        data = np.ascontiguousarray(data, dtype=np.uint64)
        if data.shape != (self.nrows, nwords(self.ncols)):
            raise ValueError(f"packed shape {data.shape} does not match {nrows}x{ncols}")
        self.data = data

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F2Matrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        m = cls(n, n)
        idx = np.arange(n)
        m.data[idx, idx >> 6] = _ONE << (idx & 63).astype(np.uint64)
        return m

    @classmethod
    def from_dense(cls, dense) -> "F2Matrix":
        dense = np.atleast_2d(np.asarray(dense, dtype=np.uint8))
        return cls(dense.shape[0], dense.shape[1], pack_rows(dense))

    @classmethod
    def from_rows(cls, rows: np.ndarray, ncols: int) -> "F2Matrix":
        rows = np.atleast_2d(np.asarray(rows, dtype=np.uint64))
        if rows.shape[1] != nwords(ncols):
            rows = rows.reshape(-1, nwords(ncols))
        return cls(rows.shape[0], ncols, rows.copy())

    @classmethod
    def random(cls, nrows: int, ncols: int, rng: np.random.Generator) -> "F2Matrix":
        return cls.from_dense(rng.integers(0, 2, size=(nrows, ncols), dtype=np.uint8))

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.data, self.ncols)

    def copy(self) -> "F2Matrix":
        return F2Matrix(self.nrows, self.ncols, self.data.copy())

    def __getitem__(self, ij):
        i, j = ij
        return int((self.data[i, j >> 6] >> U64(j & 63)) & _ONE)

    def __setitem__(self, ij, bit):
        i, j = ij
        mask = _ONE << U64(j & 63)
        if bit & 1:
            self.data[i, j >> 6] |= mask
        else:
            self.data[i, j >> 6] &= ~mask

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, F2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and np.array_equal(self.data, other.data)
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"F2Matrix({self.nrows}x{self.ncols})"

    def __add__(self, other: "F2Matrix") -> "F2Matrix":
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return F2Matrix(self.nrows, self.ncols, self.data ^ other.data)

    def __matmul__(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"cannot multiply {self} by {other}")
        return F2Matrix(self.nrows, other.ncols, _matmul(self.data, self.ncols, other.data))

    def apply(self, v: np.ndarray) -> np.ndarray:
        """Matrix times a packed column vector."""
        return _row_parity_products(self.data, np.asarray(v, dtype=np.uint64))

    @property
    def T(self) -> "F2Matrix":
        return F2Matrix(self.ncols, self.nrows, _transpose(self.data, self.nrows, self.ncols))

    def is_zero(self) -> bool:
        return not self.data.any()

    def row_weights(self) -> np.ndarray:
        return _popcount_rows(self.data)

    def nnz(self) -> int:
        return int(self.row_weights().sum())

    def vstack(self, other: "F2Matrix") -> "F2Matrix":
        if self.ncols != other.ncols:
            raise ValueError("column mismatch")
        return F2Matrix(self.nrows + other.nrows, self.ncols, np.vstack([self.data, other.data]))

    # serialization

    def to_bytes(self) -> bytes:
        return _MAGIC + struct.pack("<QQ", self.nrows, self.ncols) + self.data.astype("<u8").tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes) -> "F2Matrix":
        if blob[:4] != _MAGIC:
            raise ValueError("not a packed GF(2) matrix")
        nrows, ncols = struct.unpack("<QQ", blob[4:20])
        data = np.frombuffer(blob[20:], dtype="<u8").astype(np.uint64)
        return cls(nrows, ncols, data.reshape(nrows, nwords(ncols)).copy())

    def save(self, path) -> None:
        Path(path).write_bytes(self.to_bytes())

    @classmethod
    def load(cls, path) -> "F2Matrix":
        return cls.from_bytes(Path(path).read_bytes())

    def to_text(self) -> str:
        return "\n".join("".join(map(str, row)) for row in self.to_dense())

    @classmethod
    def from_text(cls, text: str) -> "F2Matrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        return cls.from_dense([[int(c) for c in ln] for ln in lines])


def rref(M: F2Matrix) -> tuple[F2Matrix, int, np.ndarray]:
    a = M.data.copy()
    pivots = _rref_inplace(a, M.ncols)
    rank = len(pivots)
    return F2Matrix(M.nrows, M.ncols, a), rank, pivots.copy()


def rank(M: F2Matrix) -> int:
    return rref(M)[1]


def rref_with_transform(M: F2Matrix) -> tuple[F2Matrix, F2Matrix]:
    """R and E with E @ M = R."""
    combined = F2Matrix.from_dense(np.hstack([M.to_dense(), np.eye(M.nrows, dtype=np.uint8)]))
    a = combined.data.copy()
    _rref_restricted(a, M.ncols)
    dense = unpack_rows(a, M.ncols + M.nrows)
    return F2Matrix.from_dense(dense[:, : M.ncols]), F2Matrix.from_dense(dense[:, M.ncols :])


@nb.njit(cache=True)
def _rref_restricted(a, ncols):
    # Gauss-Jordan choosing pivots only among the first ncols columns; rows carry their tails
    nrows, nw = a.shape
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w = col >> 6
        mask = np.uint64(1) << np.uint64(col & 63)
        piv = -1
        for r in range(rank, nrows):
            if a[r, w] & mask:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(nw):
                t = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = t
        for r in range(nrows):
            if r != rank and (a[r, w] & mask):
                for k in range(nw):
                    a[r, k] ^= a[rank, k]
        rank += 1
    return rank


class Subspace:
    """A subspace of GF(2)^ambient held in canonical reduced row echelon form."""

    __slots__ = ("ambient", "basis", "pivots", "_hash")

    def __init__(self, ambient: int, basis: np.ndarray, pivots: np.ndarray):
        self.ambient = int(ambient)
        self.basis = basis
        self.pivots = pivots
        self._hash = None

    @classmethod
    def span(cls, rows, ambient: int) -> "Subspace":
        if isinstance(rows, F2Matrix):
            ambient = rows.ncols
            rows = rows.data
        a = np.array(np.atleast_2d(rows), dtype=np.uint64, copy=True)
        if a.size == 0:
            return cls.zero(ambient)
        a = a.reshape(-1, nwords(ambient))
        pivots = _rref_inplace(a, ambient)
        return cls(ambient, a[: len(pivots)].copy(), pivots.copy())

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, np.zeros((0, nwords(ambient)), dtype=np.uint64), np.zeros(0, dtype=np.int64))

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls(ambient, F2Matrix.identity(ambient).data, np.arange(ambient, dtype=np.int64))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def matrix(self) -> F2Matrix:
        return F2Matrix(self.dim, self.ambient, self.basis)

    def __len__(self) -> int:
        return self.dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def _check(self, other: "Subspace") -> None:
        if self.ambient != other.ambient:
            raise ValueError(f"ambient mismatch: {self.ambient} vs {other.ambient}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and np.array_equal(self.pivots, other.pivots)
            and np.array_equal(self.basis, other.basis)
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.digest())
        return self._hash

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(struct.pack("<Q", self.ambient))
        h.update(self.basis.tobytes())
        return h.hexdigest()

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        """Reduced copies of packed row vectors (zero iff member)."""
        v = np.array(np.atleast_2d(vecs), dtype=np.uint64, copy=True)
        if self.dim:
            _reduce_rows(v, self.basis, self.pivots)
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not self.reduce(v).any()

    member = contains

    def __le__(self, other: "Subspace") -> bool:
        self._check(other)
        return self.dim <= other.dim and not other.reduce(self.basis).any()

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self <= other

    def sum(self, other) -> "Subspace":
        if isinstance(other, Subspace):
            self._check(other)
            other = other.basis
        return Subspace.span(np.vstack([self.basis, np.atleast_2d(other)]), self.ambient)

    __add__ = sum

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: rows [u|u] and [v|0]; the rows [0|w] span the intersection."""
        self._check(other)
        n = self.ambient
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(n)
        top = np.hstack([unpack_rows(self.basis, n), unpack_rows(self.basis, n)])
        bot = np.hstack([unpack_rows(other.basis, n), np.zeros((other.dim, n), dtype=np.uint8)])
        a = pack_rows(np.vstack([top, bot]))
        piv = _rref_inplace(a, 2 * n)
        rows = [i for i, c in enumerate(piv) if c >= n]
        if not rows:
            return Subspace.zero(n)
        right = unpack_rows(a[rows], 2 * n)[:, n:]
        return Subspace.span(pack_rows(right), n)

    __and__ = intersect

    def quotient(self) -> "QuotientMap":
        return QuotientMap(self)


class QuotientMap:
    """Projection onto the complement of the pivot coordinates of a subspace."""

    def __init__(self, sub: Subspace):
        self.sub = sub
        mask = np.ones(sub.ambient, dtype=bool)
        mask[sub.pivots] = False
        self.free = np.nonzero(mask)[0].astype(np.int64)

    @property
    def dim(self) -> int:
        return len(self.free)

    def project(self, vecs: np.ndarray) -> np.ndarray:
        return _gather_bits(self.sub.reduce(vecs), self.free)

    def lift(self, vecs: np.ndarray) -> np.ndarray:
        v = np.atleast_2d(np.asarray(vecs, dtype=np.uint64))
        return _scatter_bits(v, self.free, self.sub.ambient)


def kernel(M: F2Matrix) -> Subspace:
    """{v : M v = 0}."""
    a = M.data.copy()
    piv = _rref_inplace(a, M.ncols)
    return Subspace.span(_kernel_from_rref(a, piv, M.ncols), M.ncols)


def left_kernel_rows(rows: np.ndarray, ncols: int) -> np.ndarray:
    """Packed coefficient vectors x (length = #rows) with sum_i x_i rows_i = 0, as a basis."""
    rows = np.atleast_2d(rows)
    m = rows.shape[0]
    if m == 0:
        return np.zeros((0, 0), dtype=np.uint64)
    t = _transpose(np.ascontiguousarray(rows), m, ncols)
    piv = _rref_inplace(t, m)
    return _kernel_from_rref(t, piv, m)


def combine(coeffs: np.ndarray, ncoef: int, rows: np.ndarray) -> np.ndarray:
    """coeffs (k x ncoef packed) times rows (ncoef x w packed)."""
    return _matmul(np.ascontiguousarray(coeffs), ncoef, np.ascontiguousarray(rows))


class EchelonBuilder:
    """Incremental semi-echelon basis, used for spinning and incremental kernels."""

    def __init__(self, ambient: int, capacity: int | None = None):
        self.ambient = ambient
        cap = ambient if capacity is None else min(capacity, ambient)
        self.rows = np.zeros((max(cap, 1), nwords(ambient)), dtype=np.uint64)
        self.pivots = np.zeros(max(cap, 1), dtype=np.int64)
        self.count = 0
        self.capacity = cap

    @property
    def dim(self) -> int:
        return self.count

    @property
    def full(self) -> bool:
        return self.count >= self.capacity

    def add(self, vecs: np.ndarray) -> np.ndarray:
        """Insert rows; returns the mask of rows that enlarged the span."""
        batch = np.array(np.atleast_2d(vecs), dtype=np.uint64, copy=True)
        self.count, added = _insert_batch(batch, self.rows, self.pivots, self.count, self.capacity)
        return added

    def reduce(self, vecs: np.ndarray) -> np.ndarray:
        batch = np.array(np.atleast_2d(vecs), dtype=np.uint64, copy=True)
        for i in range(batch.shape[0]):
            _semi_reduce(batch[i], self.rows, self.pivots, self.count)
        return batch

    def basis(self) -> np.ndarray:
        return self.rows[: self.count]

    def subspace(self) -> Subspace:
        return Subspace.span(self.basis(), self.ambient)


# sparse row storage


@nb.njit(cache=True)
def _csr_from_packed(a, ncols):
    counts = np.zeros(a.shape[0] + 1, dtype=np.int64)
    for i in range(a.shape[0]):
        c = 0
        for k in range(a.shape[1]):
            x = a[i, k]
            while x:
                x &= x - np.uint64(1)
                c += 1
        counts[i + 1] = counts[i] + c
    idx = np.empty(counts[-1], dtype=np.int64)
    for i in range(a.shape[0]):
        p = counts[i]
        for k in range(a.shape[1]):
            x = a[i, k]
            while x:
                low = x & (~x + np.uint64(1))
                col = (k << 6) + ctz(low)
                if col < ncols:
                    idx[p] = col
                    p += 1
                x ^= low
    return counts, idx


@nb.njit(cache=True)
def _sparse_left(indptr, indices, b):
    """(sparse A) @ b: row i is the xor of b's rows listed in A's row i."""
    m = indptr.shape[0] - 1
    out = np.zeros((m, b.shape[1]), dtype=np.uint64)
    for i in range(m):
        for p in range(indptr[i], indptr[i + 1]):
            j = indices[p]
            for k in range(b.shape[1]):
                out[i, k] ^= b[j, k]
    return out


@nb.njit(cache=True)
def _sparse_right(a, indptr, indices, out_words):
    """a @ (sparse B): toggles B's row entries for each set bit of a."""
    m = a.shape[0]
    nb_rows = indptr.shape[0] - 1
    out = np.zeros((m, out_words), dtype=np.uint64)
    for i in range(m):
        for k in range(a.shape[1]):
            x = a[i, k]
            while x:
                low = x & (~x + np.uint64(1))
                j = (k << 6) + ctz(low)
                if j < nb_rows:
                    for p in range(indptr[j], indptr[j + 1]):
                        c = indices[p]
                        out[i, c >> 6] ^= np.uint64(1) << np.uint64(c & 63)
                x ^= low
    return out


class SparseRows:
    """Row-compressed 0/1 matrix; cheap to multiply from either side when rows are short."""

    __slots__ = ("nrows", "ncols", "indptr", "indices")

    def __init__(self, nrows: int, ncols: int, indptr: np.ndarray, indices: np.ndarray):
        self.nrows, self.ncols = int(nrows), int(ncols)
        self.indptr, self.indices = indptr, indices

    @classmethod
    def from_matrix(cls, M: F2Matrix) -> "SparseRows":
        indptr, idx = _csr_from_packed(M.data, M.ncols)
        return cls(M.nrows, M.ncols, indptr, idx)

    @property
    def nnz(self) -> int:
        return int(self.indptr[-1])

    def row(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def to_matrix(self) -> F2Matrix:
        out = F2Matrix(self.nrows, self.ncols)
        rows = np.repeat(np.arange(self.nrows), np.diff(self.indptr))
        np.bitwise_xor.at(out.data, (rows, self.indices >> 6), _ONE << (self.indices & 63).astype(np.uint64))
        return out

    def left_of(self, b: np.ndarray) -> np.ndarray:
        return _sparse_left(self.indptr, self.indices, np.ascontiguousarray(b))

    def right_of(self, a: np.ndarray) -> np.ndarray:
        return _sparse_right(np.ascontiguousarray(a), self.indptr, self.indices, nwords(self.ncols))
