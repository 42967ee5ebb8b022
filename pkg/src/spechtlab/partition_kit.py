"""Partitions, p-adic digit combinatorics, residues and dimension counts."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

_INT128 = 1 << 127


class PartitionError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are dropped on construction, so ``Partition((6, 0))`` is ``(6)``.
    """

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int] = ()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x <= 0 for x in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse comma lists with exponents, e.g. ``"6,1^4"``."""
        text = text.strip().strip("()")
        if not text:
            return cls(())
        parts: list[int] = []
        for tok in text.split(","):
            tok = tok.strip()
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if m is None:
                raise PartitionError(f"cannot parse partition token {tok!r}")
            parts.extend([int(m.group(1))] * int(m.group(2) or 1))
        return cls(parts)

    @classmethod
    def hook(cls, n: int, r: int) -> "Partition":
        if not 0 <= r < max(n, 1):
            raise PartitionError(f"no hook ({n}-{r},1^{r})")
        return cls((n - r,) + (1,) * r) if n else cls(())

    @classmethod
    def two_part(cls, a: int, b: int) -> "Partition":
        return cls((a, b))

    def __str__(self) -> str:
        if not self.parts:
            return "0"
        out = []
        i = 0
        while i < len(self.parts):
            j = i
            while j < len(self.parts) and self.parts[j] == self.parts[i]:
                j += 1
            out.append(str(self.parts[i]) if j - i == 1 else f"{self.parts[i]}^{j - i}")
            i = j
        return ",".join(out)

    def __repr__(self) -> str:
        return f"Partition(({', '.join(map(str, self.parts))}))"

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def part(self, i: int) -> int:
        """1-based part, zero beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @property
    def is_two_part(self) -> bool:
        return len(self.parts) <= 2

    @property
    def is_hook(self) -> bool:
        return all(x == 1 for x in self.parts[1:])

    @property
    def leg(self) -> int:
        """Number of rows below the first (r for the hook (n-r,1^r))."""
        return max(len(self.parts) - 1, 0)

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition([sum(1 for x in self.parts if x > j) for j in range(self.parts[0])])

    def nodes(self) -> Iterator["NodeCoord"]:
        for r, length in enumerate(self.parts, 1):
            for c in range(1, length + 1):
                yield NodeCoord(r, c)

    def contains_node(self, node: "NodeCoord") -> bool:
        return node.col <= self.part(node.row)


@dataclass(frozen=True, order=True)
class NodeCoord:
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1 or self.col < 1:
            raise PartitionError(f"node coordinates are 1-based: {self}")


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, str):
        return Partition.parse(x)
    return Partition(x)


def _same_size(lam: Partition, mu: Partition) -> None:
    if lam.n != mu.n:
        raise PartitionError(f"size mismatch: {lam} has {lam.n}, {mu} has {mu.n}")


def dominates(lam, mu) -> bool:
    lam, mu = as_partition(lam), as_partition(mu)
    _same_size(lam, mu)
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam.part(i + 1)
        b += mu.part(i + 1)
        if a < b:
            return False
    return True


def is_p_regular(lam, p: int = 2) -> bool:
    lam = as_partition(lam)
    run = 1
    for i in range(1, len(lam)):
        run = run + 1 if lam[i] == lam[i - 1] else 1
        if run >= p:
            return False
    return True


def digits(a: int, p: int = 2, length: int | None = None) -> list[int]:
    """Little-endian p-adic digits of a."""
    if a < 0:
        raise ValueError("digits of a negative integer")
    out = []
    while a:
        a, d = divmod(a, p)
        out.append(d)
    if length is not None:
        out.extend([0] * (length - len(out)))
    return out


def contains_p(a: int, b: int, p: int = 2) -> bool:
    """a contains b p-adically: every digit of b is 0 or the matching digit of a."""
    if a < 0 or b < 0:
        return False
    if p == 2:
        return a & b == b
    while b:
        a, da = divmod(a, p)
        b, db = divmod(b, p)
        if db and db != da:
            return False
    return True


def L_p(r: int, p: int = 2) -> int:
    """Smallest L >= 0 with r < p**L."""
    if r < 0:
        raise ValueError("L_p of a negative integer")
    L, q = 0, 1
    while r >= q:
        L += 1
        q *= p
    return L


def val2(a: int) -> int:
    if a <= 0:
        raise ValueError("2-adic valuation needs a positive integer")
    return (a & -a).bit_length() - 1


def is_power_of_two(a: int) -> bool:
    return a > 0 and a & (a - 1) == 0


def residue_contents(lam, p: int = 2) -> list[int]:
    lam = as_partition(lam)
    counts = [0] * p
    for node in lam.nodes():
        counts[(node.col - node.row) % p] += 1
    return counts


def same_block(lam, mu, p: int = 2) -> bool:
    lam, mu = as_partition(lam), as_partition(mu)
    _same_size(lam, mu)
    return residue_contents(lam, p) == residue_contents(mu, p)


def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    v = comb(n, k)
    if v >= _INT128:
        raise OverflowError(f"C({n},{k}) exceeds 128 bits")
    return v


@lru_cache(maxsize=None)
def _count_standard(parts: tuple[int, ...]) -> int:
    if sum(parts) <= 1:
        return 1
    total = 0
    for i, x in enumerate(parts):
        if i + 1 == len(parts) or parts[i + 1] < x:
            smaller = list(parts)
            smaller[i] -= 1
            total += _count_standard(tuple(y for y in smaller if y))
    return total


def count_standard_tableaux(lam) -> int:
    """Count standard tableaux by removing corners recursively."""
    return _count_standard(as_partition(lam).parts)


def dim_specht(lam) -> int:
    lam = as_partition(lam)
    n = lam.n
    if lam.is_hook and n:
        return binomial(n - 1, lam.leg)
    if lam.is_two_part:
        b = lam.part(2)
        return binomial(n, b) - binomial(n, b - 1)
    return count_standard_tableaux(lam)


def semistandard_count(lam, mu: Sequence[int]) -> int:
    """Semistandard lam-tableaux of type mu (rows weakly, columns strictly increasing)."""
    lam = as_partition(lam)
    mu = list(mu)
    while mu and mu[-1] == 0:
        mu.pop()
    if any(x < 0 for x in mu):
        raise PartitionError("composition with a negative part")
    if sum(mu) != lam.n:
        raise PartitionError(f"size mismatch: {lam} vs composition {tuple(mu)}")

    # Fill entries 1,2,... in turn; entry v occupies a horizontal strip of size mu[v-1].
    @lru_cache(maxsize=None)
    def fill(shape: tuple[int, ...], v: int) -> int:
        if v == len(mu):
            return 1 if shape == lam.parts else 0
        return sum(fill(nxt, v + 1) for nxt in _horizontal_strips(shape, lam.parts, mu[v]))

    return fill(tuple(0 for _ in lam.parts), 0)


def _horizontal_strips(shape, outer, size):
    rows = len(outer)

    def rec(i, left, cur):
        if i == rows:
            if left == 0:
                yield tuple(cur)
            return
        # row i may grow up to the old length of row i-1 (strip condition) and up to outer[i]
        cap = outer[i] if i == 0 else min(outer[i], shape[i - 1])
        for add in range(0, min(left, cap - shape[i]) + 1):
            cur.append(shape[i] + add)
            yield from rec(i + 1, left - add, cur)
            cur.pop()

    yield from rec(0, size, [])


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    max_part = n if max_part is None else max_part

    def rec(left, cap):
        if left == 0:
            yield ()
            return
        for x in range(min(left, cap), 0, -1):
            for rest in rec(left - x, x):
                yield (x,) + rest

    for parts in rec(n, max_part):
        yield Partition(parts)


def two_part_partitions(n: int, regular_only: bool = False) -> list[Partition]:
    out = []
    for b in range(0, n // 2 + 1):
        lam = Partition((n - b, b))
        if not regular_only or is_p_regular(lam, 2):
            out.append(lam)
    return out
