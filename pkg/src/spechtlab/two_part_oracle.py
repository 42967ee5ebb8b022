"""Closed-form structure of 2-part and hook Specht modules.

Interval families, composition factors and their submodule order for
S^(l1,l2) over a field of characteristic p, plus the characteristic 2
uniseriality, socle, periodicity and hook results built on top of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .partition_kit import (
    L_p,
    Partition,
    PartitionError,
    as_partition,
    contains_p,
    digits,
    is_p_regular,
    is_power_of_two,
    val2,
)


class OracleError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class IntervalSet:
    """Disjoint union of half-open integer intervals [a, b)."""

    intervals: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        flat = [x for iv in self.intervals for x in iv]
        if any(flat[i] >= flat[i + 1] for i in range(len(flat) - 1)):
            raise OracleError(f"interval endpoints must strictly increase: {self.intervals}")

    @classmethod
    def of(cls, *pairs) -> "IntervalSet":
        return cls(tuple((int(a), int(b)) for a, b in pairs))

    def members(self) -> frozenset[int]:
        return frozenset(i for a, b in self.intervals for i in range(a, b))

    def __contains__(self, i: int) -> bool:
        return any(a <= i < b for a, b in self.intervals)

    def issubset(self, other: "IntervalSet") -> bool:
        return self.members() <= other.members()

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __str__(self) -> str:
        if not self.intervals:
            return "{}"
        return " u ".join(f"[{a},{b})" for a, b in self.intervals)

    def to_json(self):
        return [list(iv) for iv in self.intervals]


@dataclass(frozen=True)
class FactorLabel:
    nu: Partition
    d: int
    source: IntervalSet

    def to_json(self):
        return {"d": self.d, "nu": list(self.nu.parts), "interval": self.source.to_json()}


@dataclass
class TwoPartProfile:
    lam: Partition
    p: int
    alpha: int
    B_minus: frozenset[int]
    B_plus: frozenset[int]
    A: list[IntervalSet]
    factors: list[FactorLabel] = field(default_factory=list)

    def factor_for(self, I: IntervalSet) -> FactorLabel:
        for f in self.factors:
            if f.source == I:
                return f
        raise OracleError(f"{I} is not in the admissible family of {self.lam}")

    def factor_by_d(self, d: int) -> FactorLabel:
        for f in self.factors:
            if f.d == d:
                return f
        raise OracleError(f"no factor with d={d} in S^({self.lam})")

    @property
    def ds(self) -> list[int]:
        return [f.d for f in self.factors]

    def order_pairs(self) -> list[tuple[int, int]]:
        """Pairs (d_i, d_j), i != j, meaning M_{d_i} contains M_{d_j}."""
        out = []
        for fi in self.factors:
            for fj in self.factors:
                if fi is not fj and factor_order(self, fj.source, fi.source):
                    out.append((fi.d, fj.d))
        return out

    def to_json(self):
        return {
            "lambda": list(self.lam.parts),
            "p": self.p,
            "alpha": self.alpha,
            "factors": [f.to_json() for f in self.factors],
            "order": [list(x) for x in self.order_pairs()],
        }


def _two_part(lam) -> Partition:
    lam = as_partition(lam)
    if not lam.is_two_part:
        raise PartitionError(f"{lam} has more than two parts")
    return lam


def alpha_of(lam) -> int:
    lam = _two_part(lam)
    return lam.part(1) - lam.part(2) + 1


def _digit(alpha: int, i: int, p: int) -> int:
    return (alpha // p**i) % p


def delta(I: IntervalSet, alpha: int, p: int = 2) -> int:
    total = 0
    for a, b in I.intervals:
        if _digit(alpha, a, p) == 0:
            raise OracleError(f"left endpoint {a} has a zero digit in {alpha}")
        if _digit(alpha, b, p) == p - 1:
            raise OracleError(f"right endpoint {b} has digit p-1 in {alpha}")
        total += p**a
        total += sum((p - 1 - _digit(alpha, i, p)) * p**i for i in range(a, b))
    return total


def _enumerate_family(alpha: int, p: int, bound: int) -> Iterator[tuple[IntervalSet, int]]:
    # only positions below top can carry a nonzero digit; beyond it every right endpoint is allowed
    top = len(digits(alpha, p))
    lefts = [i for i in range(top) if _digit(alpha, i, p) != 0]

    def rec(start: int, acc: tuple, weight: int):
        yield IntervalSet(acc), weight
        for a in lefts:
            if a < start or weight + p**a > bound:
                continue
            w = weight + p**a
            b = a
            while True:
                w += (p - 1 - _digit(alpha, b, p)) * p**b
                b += 1
                if w > bound:
                    break
                if _digit(alpha, b, p) != p - 1:
                    yield from rec(b + 1, acc + ((a, b),), w)

    yield from rec(0, (), 0)


def profile(lam, p: int = 2) -> TwoPartProfile:
    lam = _two_part(lam)
    l1, l2 = lam.part(1), lam.part(2)
    singular = l1 == l2 and l2 > 0
    if singular and p != 2:
        raise OracleError("the equal-parts case is only described for p = 2")
    alpha = l1 - l2 + 1
    span = len(digits(alpha, p)) + L_p(l2, p) + 2
    B_minus = frozenset(i for i in range(span) if _digit(alpha, i, p) != 0)
    B_plus = frozenset(i for i in range(span) if _digit(alpha, i, p) != p - 1)
    fam = sorted(_enumerate_family(alpha, p, l2), key=lambda x: (x[1], x[0].intervals))
    if singular:
        fam = [(I, w) for I, w in fam if I]
    prof = TwoPartProfile(lam, p, alpha, B_minus, B_plus, [I for I, _ in fam])
    prof.factors = [FactorLabel(Partition((l1 + w, l2 - w)), w, I) for I, w in fam]
    return prof


def factor_order(prof: TwoPartProfile, I: IntervalSet, J: IntervalSet) -> bool:
    """True iff M_{nu_J} contains M_{nu_I}, i.e. J is a subset of I."""
    if I not in prof.A or J not in prof.A:
        raise OracleError("interval set not in the admissible family")
    return J.issubset(I)


def factor_order_digits(prof: TwoPartProfile, I: IntervalSet, J: IntervalSet) -> bool:
    """The same order read off digits: J in I iff alpha + d_I + d_J contains d_J."""
    dI = delta(I, prof.alpha, prof.p)
    dJ = delta(J, prof.alpha, prof.p)
    return contains_p(prof.alpha + dI + dJ, dJ, prof.p)


def submodule_contains(lam, d1: int, d2: int, p: int = 2) -> bool:
    """M_{d1} contains M_{d2}, without reference to interval sets."""
    return contains_p(alpha_of(lam) + d1 + d2, d1, p)


def multiplicity_2part(lam, d: int, p: int = 2) -> int:
    lam = _two_part(lam)
    l1, l2 = lam.part(1), lam.part(2)
    if not 0 <= d <= l2:
        raise OracleError(f"d={d} outside [0, {l2}]")
    if not is_p_regular(Partition((l1 + d, l2 - d)), p):
        raise OracleError(f"({l1 + d},{l2 - d}) is not {p}-regular")
    return int(contains_p(alpha_of(lam) + 2 * d, d, p))


@dataclass(frozen=True)
class UniserialVerdict:
    uniserial: bool
    witness: tuple[int, int, int] | None  # (a, b, c) when alpha is not a power of two

    def __bool__(self) -> bool:
        return self.uniserial


def uniserial_2part(lam) -> UniserialVerdict:
    lam = _two_part(lam)
    l2 = lam.part(2)
    alpha = alpha_of(lam)
    if is_power_of_two(alpha):
        return UniserialVerdict(True, None)
    a = val2(alpha)
    b = val2(alpha + 2**a)
    c = val2(alpha - 2**a)
    ok = (c > b and 2**c > l2) or (c < b and 2**c + 2**b > l2)
    return UniserialVerdict(ok, (a, b, c))


def socle_d(lam) -> int:
    """The d of the socle D^(l1+d, l2-d) in characteristic 2."""
    lam = _two_part(lam)
    l1, l2 = lam.part(1), lam.part(2)
    alpha = l1 - l2 + 1
    L = L_p(l2, 2)
    abar = alpha % 2**L
    if l1 == l2 and l2 > 0:
        # equal parts: the largest interval [0, j) with 2^j - 1 <= a
        return max(f.d for f in profile(lam).factors)
    if abar == 0:
        return 0
    if abar >= 2**L - l2:
        return 2**L - abar
    return 2 ** (L - 1) - alpha % 2 ** (L - 1)


def socle_2part(lam) -> FactorLabel:
    lam = _two_part(lam)
    return profile(lam, 2).factor_by_d(socle_d(lam))


def has_trivial_socle(lam) -> bool:
    lam = _two_part(lam)
    return (lam.part(1) + 1) % 2 ** L_p(lam.part(2), 2) == 0


def maximal_interval(prof: TwoPartProfile) -> IntervalSet:
    """The unique inclusion-maximal member of the family (raises if not unique)."""
    maxima = [I for I in prof.A if not any(I != J and I.issubset(J) for J in prof.A)]
    if len(maxima) != 1:
        raise OracleError(f"{len(maxima)} maximal elements in the family of {prof.lam}")
    return maxima[0]


@dataclass(frozen=True)
class Periodicity:
    holds: bool
    bijection: dict[int, int] | None = None


def lattice_periodic(lam, mu, p: int = 2) -> Periodicity:
    lam, mu = _two_part(lam), _two_part(mu)
    if lam.part(2) != mu.part(2):
        return Periodicity(lam == mu)
    L = L_p(lam.part(2), p)
    if (lam.part(1) - mu.part(1)) % p**L:
        return Periodicity(lam == mu)
    ds = profile(lam, p).ds
    return Periodicity(True, {d: d for d in ds})


# hooks


def _f(a: int, b: int) -> int:
    return int(a >= b >= 0 and contains_p(a, b, 2))


def hook_decomp(n: int, r: int, j: int) -> int:
    """Multiplicity of D^(n-j,j) in S^(n-r,1^r) in characteristic 2."""
    if not 0 <= r <= n - r:
        raise OracleError(f"need 0 <= r <= n-r, got n={n}, r={r}")
    if not (0 <= j and n - j > j):
        raise OracleError(f"(n-j,j) = ({n - j},{j}) is not 2-regular")
    total = 0
    k = 0
    while r - 2 * k - j >= 0:
        total += _f(n + 1 - 2 * j, r - 2 * k - j)
        k += 1
    return total


def hook_factors(n: int, r: int) -> dict[int, int]:
    """{j: multiplicity of D^(n-j,j)} for any hook, dualizing when the leg is long."""
    if n - r < r:
        r = n - r - 1
    out = {}
    for j in range(0, (n + 1) // 2):
        m = hook_decomp(n, r, j)
        if m:
            out[j] = m
    return out


@dataclass(frozen=True)
class UniqueMinimal:
    holds: bool
    case: int | None  # 1..5, in the order of the case analysis

    def __bool__(self) -> bool:
        return self.holds


def hook_unique_min(n: int, r: int) -> UniqueMinimal:
    if not 0 <= r <= n - r:
        raise OracleError(f"need 0 <= r <= n-r, got n={n}, r={r}")
    m = 2 ** L_p(r, 2)
    half = m // 2 if m > 1 else 0
    rr, nn = r % m, n % m
    cases = [
        (rr == (-1) % m and nn == (-1) % m),
        (rr == (-1) % m and nn == (-2) % m),
        (rr == (-2) % m and nn == (-3) % m),
        (m > 1 and rr == half % m and nn == 0),
        (m > 1 and rr == half % m and nn == half % m),
    ]
    for i, ok in enumerate(cases, 1):
        if ok:
            return UniqueMinimal(True, i)
    return UniqueMinimal(False, None)


def hook_uniserial(n: int, r: int) -> bool:
    if not 0 <= r < n or n < 1:
        raise OracleError(f"no hook with n={n}, r={r}")
    if n - r <= r:
        r = n - r - 1
    if r == 0 or r == 1:
        return True
    if r == 2:
        return n % 4 in (1, 2)
    if r == 3:
        return n % 4 == 3
    return False


# tables


def _representative(residue: int, modulus: int, floor: int) -> int:
    n = residue % modulus
    while n < floor:
        n += modulus
    return n


@lru_cache(maxsize=None)
def nonuniserial_witness(n_mod_32: int, parity: str) -> int | None:
    """Smallest s <= 31 of the given parity with S^(n-s,s) not uniserial."""
    if not 0 <= n_mod_32 < 32:
        raise OracleError("residue must lie in [0, 32)")
    start = {"even": 0, "odd": 1}[parity]
    n = _representative(n_mod_32, 32, 64)
    for s in range(start, 32, 2):
        lam = Partition((n - s, s))
        twin = Partition((n + 32 - s, s))
        if not lattice_periodic(lam, twin).holds:
            raise OracleError("periodicity failed on a 32-shift")
        if not uniserial_2part(lam):
            return s
    return None


def witness_table(parity: str) -> list[tuple[int, int | None]]:
    return [(k, nonuniserial_witness(k, parity)) for k in range(32)]


def unique_min_table(r_max: int = 29) -> list[tuple[int, int]]:
    """(n mod 2^L(r), r) for which S^(n-r,1^r) has a unique minimal submodule, r <= r_max."""
    rows = []
    for r in range(0, r_max + 1):
        m = 2 ** L_p(r, 2)
        for res in range(m):
            n = _representative(res, m, 2 * r + 2)
            if hook_unique_min(n, r):
                rows.append((res, r))
    return rows


def filtration_witness(res: int, r: int) -> int | None:
    """Smallest s <= r, s = r mod 2, with S^(n-s,s) not uniserial (n = res mod 2^L(r))."""
    m = 2 ** L_p(r, 2)
    n = _representative(res, m, 2 * r + 64)
    for s in range(r % 2, r + 1, 2):
        if not uniserial_2part(Partition((n - s, s))):
            return s
    return None


def filtration_witness_table(r_max: int = 29) -> list[tuple[int, int, int]]:
    out = []
    for res, r in unique_min_table(r_max):
        s = filtration_witness(res, r)
        if s is not None:
            out.append((res, r, s))
    return out


def remaining_cases_table(r_max: int = 29) -> list[tuple[int, int]]:
    killed = {(res, r) for res, r, _ in filtration_witness_table(r_max)}
    return [row for row in unique_min_table(r_max) if row not in killed]
