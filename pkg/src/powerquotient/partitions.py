"""Integer partitions as permutation types.

A :class:`Partition` of ``n`` is kept with its parts in ascending order.
The power operation ``T^a`` replaces each part ``m`` by ``m / gcd(a, m)``
repeated ``gcd(a, m)`` times, which is exactly the cycle type of ``psi^a``
when ``T`` is the cycle type of ``psi``.

All counts are exact Python integers.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, gcd, lcm

__all__ = [
    "Partition",
    "PowerKind",
    "partitions_of",
    "order_of",
    "power",
    "power_class",
    "classify_power",
    "mu_symmetric",
    "totient",
    "divisors",
    "proper_divisors",
    "is_prime",
    "type_sort_key",
]


@dataclass(frozen=True)
class Partition:
    """Partition of ``n`` stored as an ascending tuple of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a > b for a, b in zip(parts, parts[1:])):
            parts = tuple(sorted(parts))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        return cls(tuple(sorted(parts)))

    @classmethod
    def from_normal_form(cls, pairs) -> "Partition":
        """Build from ``(part, multiplicity)`` pairs; zero multiplicities are dropped."""
        parts = []
        for m, t in pairs:
            if t < 0:
                raise ValueError("negative multiplicity")
            parts.extend([m] * t)
        return cls.from_parts(parts)

    @classmethod
    def trivial(cls, n: int) -> "Partition":
        return cls((1,) * n)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def normal_form(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(Counter(self.parts).items()))

    @property
    def distinct_parts(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.parts)))

    @property
    def order(self) -> int:
        return lcm(*self.parts)

    @property
    def gcd(self) -> int:
        return gcd(*self.parts)

    def is_trivial(self) -> bool:
        return self.parts[-1] == 1

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __repr__(self) -> str:
        return f"Partition({self})"

    def to_normal_text(self) -> str:
        """Normal form as text, e.g. ``"1^2 2"`` for ``[1,1,2]``."""
        return " ".join(str(m) if t == 1 else f"{m}^{t}" for m, t in self.normal_form)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"[1,1,2]"`` or ``"1^2 2"`` (also ``"[1^2,2]"``)."""
        s = text.strip()
        if s.startswith("[") and s.endswith("]"):
            s = s[1:-1]
        tokens = [tok for tok in re.split(r"[,\s]+", s) if tok]
        if not tokens:
            raise ValueError(f"empty partition text: {text!r}")
        parts = []
        for tok in tokens:
            m = re.fullmatch(r"(\d+)(?:\^(\d+))?", tok)
            if m is None:
                raise ValueError(f"bad partition token {tok!r} in {text!r}")
            part = int(m.group(1))
            mult = int(m.group(2)) if m.group(2) is not None else 1
            parts.extend([part] * mult)
        return cls.from_parts(parts)


def type_sort_key(t: Partition):
    """Total order on types: number of parts, then ascending parts lexicographically."""
    return (len(t.parts), t.parts)


def _partitions_desc(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(1, min(n, largest) + 1):
        for rest in _partitions_desc(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=64)
def _partitions_cached(n: int) -> tuple[Partition, ...]:
    # descending part lists enumerated in lexicographic order of the descending form
    out = [Partition(tuple(reversed(d))) for d in _partitions_desc(n, n)]
    out.sort(key=lambda p: tuple(reversed(p.parts)))
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """Every partition of ``n`` once.

    Ordered lexicographically by the descending form, so ``[1^n]`` comes first
    and ``[n]`` last: for ``n = 4`` this gives
    ``[1,1,1,1], [1,1,2], [2,2], [1,3], [4]``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return list(_partitions_cached(n))


def order_of(t: Partition) -> int:
    return t.order


def power(t: Partition, a: int) -> Partition:
    """The partition power ``T^a``, renormalized."""
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    parts = []
    for m, mult in t.normal_form:
        g = gcd(a, m)
        parts.extend([m // g] * (mult * g))
    return Partition.from_parts(parts)


def power_class(t: Partition, a: int) -> Partition:
    """``T^a`` computed through the reduced exponent ``gcd(a, o(T))``."""
    if a < 1:
        raise ValueError("exponent must be a positive integer")
    return power(t, gcd(a, t.order))


class PowerKind(enum.Enum):
    IDENTITY = "identity"
    TRIVIALIZING = "trivializing"
    PROPER = "proper"


def classify_power(t: Partition, a: int) -> PowerKind:
    o = t.order
    g = gcd(a, o)
    if g == o:
        # also covers o(T) = 1, where identity and trivializing coincide
        return PowerKind.TRIVIALIZING
    if g == 1:
        return PowerKind.IDENTITY
    return PowerKind.PROPER


def mu_symmetric(t: Partition) -> int:
    """Number of permutations of type ``t`` in ``S_n``."""
    den = 1
    for m, mult in t.normal_form:
        den *= m**mult * factorial(mult)
    num = factorial(t.n)
    assert num % den == 0
    return num // den


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def totient(m: int) -> int:
    """Euler's totient."""
    if m < 1:
        raise ValueError("totient is defined for positive integers")
    result = m
    for p in _factorize(m):
        result -= result // p
    return result


def divisors(m: int) -> list[int]:
    if m < 1:
        raise ValueError("divisors of a positive integer only")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


def proper_divisors(m: int) -> list[int]:
    """Divisors ``d`` of ``m`` with ``d`` not in ``{1, m}``."""
    return [d for d in divisors(m) if 1 < d < m]


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    return _factorize(m) == {m: 1}
