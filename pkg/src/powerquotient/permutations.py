"""Permutations of ``{1..n}`` and explicitly enumerated permutation groups.

Conventions used everywhere in this package:

* composition is right-to-left, ``(a * b)(i) = a(b(i))``;
* conjugation is ``psi^x = x^-1 * psi * x``, so the cycles of ``psi^x`` are
  the cycles of ``psi`` relabelled by ``x^-1``.

Points are printed 1-based; ``Permutation.images`` is stored 0-based so that
groups can be held as numpy arrays.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .config import DEFAULT_CAPS, Caps, CapExceeded, check_cap
from .partitions import Partition, totient

__all__ = [
    "Permutation",
    "PermGroup",
    "CyclicClass",
    "FusionResult",
    "compose",
    "perm_power",
    "order_of_perm",
    "support",
    "cycle_type",
    "conjugate",
    "conjugator",
    "enumerate_group",
    "symmetric_group",
    "alternating_group",
    "cyclic_class",
    "normalizer_in_symmetric",
    "is_fusion_controlled",
    "fx_automorphism",
    "parse_group_file",
    "format_group_file",
    "cycle_types_of_array",
]


class Permutation:
    """A bijection of ``{1..n}``; ``images[i]`` is the image of ``i + 1`` minus one."""

    __slots__ = ("images", "_hash")

    def __init__(self, images):
        imgs = tuple(int(i) for i in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 0..{len(imgs) - 1}: {imgs}")
        self.images = imgs
        self._hash = hash(imgs)

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = cls.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(tuple(range(n)))

    @classmethod
    def from_word(cls, word) -> "Permutation":
        """From a 1-based image word, e.g. ``[2, 1, 4, 5, 3]``."""
        return cls(w - 1 for w in word)

    @classmethod
    def from_cycles(cls, cycles, n: int | None = None) -> "Permutation":
        cycles = [tuple(c) for c in cycles]
        top = max((max(c) for c in cycles if c), default=0)
        if n is None:
            n = top
        if top > n:
            raise ValueError(f"point {top} outside degree {n}")
        images = list(range(n))
        seen = set()
        for c in cycles:
            for a in c:
                if a < 1 or a in seen:
                    raise ValueError(f"cycles are not disjoint or point {a} invalid")
                seen.add(a)
            for a, b in zip(c, c[1:] + c[:1]):
                images[a - 1] = b - 1
        return cls._trusted(tuple(images))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "Permutation":
        """Parse ``"(1 2)(3 4 5)"``, ``"id"`` or an image word ``"2 1 4 5 3"``."""
        s = text.strip()
        if s == "id":
            if n is None:
                raise ValueError("'id' needs an explicit degree")
            return cls.identity(n)
        if s.startswith("("):
            cycles = []
            for body in re.findall(r"\(([^()]*)\)", s):
                pts = [int(t) for t in re.split(r"[,\s]+", body.strip()) if t]
                cycles.append(pts)
            if re.sub(r"\([^()]*\)", "", s).strip():
                raise ValueError(f"malformed cycle notation: {text!r}")
            return cls.from_cycles(cycles, n)
        word = [int(t) for t in re.split(r"[,\s]+", s) if t]
        p = cls.from_word(word)
        if n is not None and p.degree != n:
            raise ValueError(f"image word has degree {p.degree}, expected {n}")
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def word(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in self.images)

    def __call__(self, point: int) -> int:
        """Image of a 1-based point."""
        return self.images[point - 1] + 1

    def __eq__(self, other):
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, a: int) -> "Permutation":
        return perm_power(self, a)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        """Disjoint cycles, 1-based, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = []
            j = start
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self.images[j]
            if len(cyc) > 1 or include_fixed:
                out.append(tuple(cyc))
        return out

    @property
    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles(include_fixed=True)))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self}, n={self.degree})"


def _check_degree(a: Permutation, b: Permutation) -> None:
    if a.degree != b.degree:
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``a * b``, i.e. ``i -> a(b(i))``."""
    _check_degree(a, b)
    ai = a.images
    return Permutation._trusted(tuple(ai[j] for j in b.images))


def perm_power(psi: Permutation, a: int) -> Permutation:
    """``psi^a`` for any integer ``a`` (negative exponents invert)."""
    if a < 0:
        return perm_power(psi.inverse(), -a)
    result = list(range(psi.degree))
    # cycle walk: psi^a(i) is a steps along the cycle of i
    for cyc in psi.cycles():
        L = len(cyc)
        s = a % L
        for k, pt in enumerate(cyc):
            result[pt - 1] = cyc[(k + s) % L] - 1
    return Permutation._trusted(tuple(result))


def order_of_perm(psi: Permutation) -> int:
    return psi.order


def support(psi: Permutation) -> frozenset[int]:
    return frozenset(i + 1 for i, j in enumerate(psi.images) if i != j)


def cycle_type(psi: Permutation) -> Partition:
    return Partition.from_parts(len(c) for c in psi.cycles(include_fixed=True))


def conjugate(psi: Permutation, x: Permutation) -> Permutation:
    """``psi^x = x^-1 * psi * x``."""
    _check_degree(psi, x)
    xinv = x.inverse().images
    pi = psi.images
    return Permutation._trusted(tuple(xinv[pi[xi]] for xi in x.images))


def conjugator(psi: Permutation, phi: Permutation) -> Permutation:
    """Some ``x`` with ``conjugate(psi, x) == phi``; both must share a cycle type."""
    _check_degree(psi, phi)
    if cycle_type(psi) != cycle_type(phi):
        raise ValueError("permutations of different type are not conjugate")
    # psi^x has cycles (x^-1(a1) ... x^-1(ak)); match cycles of equal length
    cp = sorted(psi.cycles(include_fixed=True), key=len)
    cf = sorted(phi.cycles(include_fixed=True), key=len)
    x = [0] * psi.degree
    for a, b in zip(cp, cf):
        for ai, bi in zip(a, b):
            x[bi - 1] = ai - 1
    return Permutation._trusted(tuple(x))


# ---------------------------------------------------------------------------
# groups


def _lex_permutations(n: int) -> np.ndarray:
    """All permutations of ``0..n-1`` as rows, in lexicographic order."""
    perms = np.zeros((1, 0), dtype=np.int8)
    for m in range(1, n + 1):
        # extend permutations of 0..m-2 to 0..m-1 keeping lexicographic order
        blocks = []
        for first in range(m):
            rest = np.array([v for v in range(m) if v != first], dtype=np.int8)
            body = rest[perms] if perms.shape[1] else np.zeros((1, 0), dtype=np.int8)
            col = np.full((body.shape[0], 1), first, dtype=np.int8)
            blocks.append(np.hstack([col, body]))
        perms = np.vstack(blocks)
    return perms


def _codes(arr: np.ndarray) -> np.ndarray:
    """Integer code of each row; monotone in the lexicographic order of rows."""
    n = arr.shape[1]
    if n > 15:
        raise CapExceeded(f"degree {n} exceeds the supported maximum 15")
    weights = np.array([n ** (n - 1 - i) for i in range(n)], dtype=np.int64)
    return arr.astype(np.int64) @ weights


def _sign_even(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[1]
    inv = np.zeros(arr.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            inv += arr[:, i] > arr[:, j]
    return inv % 2 == 0


class PermGroup:
    """A permutation group held as an explicit, lexicographically sorted element list."""

    def __init__(self, degree: int, array: np.ndarray, kind: str = "generated",
                 generators: tuple = (), name: str | None = None):
        arr = np.asarray(array, dtype=np.int8).reshape(-1, degree)
        codes = _codes(arr)
        order = np.argsort(codes, kind="stable")
        self.degree = degree
        self.array = arr[order]
        self.codes = codes[order]
        if np.any(self.codes[1:] == self.codes[:-1]):
            raise ValueError("duplicate elements in group array")
        self.kind = kind
        self.generators = tuple(generators)
        self.name = name or self._default_name()

    def _default_name(self) -> str:
        if self.kind == "symmetric":
            return f"S_{self.degree}"
        if self.kind == "alternating":
            return f"A_{self.degree}"
        gens = ",".join(map(str, self.generators)) or "id"
        return f"<{gens}> <= S_{self.degree}"

    @classmethod
    def from_elements(cls, elements, degree: int | None = None, **kw) -> "PermGroup":
        elements = list(elements)
        if degree is None:
            degree = elements[0].degree
        arr = np.array([p.images for p in elements], dtype=np.int8).reshape(-1, degree)
        return cls(degree, arr, **kw)

    @property
    def order(self) -> int:
        return int(self.array.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"PermGroup({self.name}, order={self.order})"

    @cached_property
    def elements(self) -> list[Permutation]:
        return [Permutation._trusted(tuple(int(v) for v in row)) for row in self.array]

    @cached_property
    def identity_index(self) -> int:
        return self.index_of(Permutation.identity(self.degree))

    def lookup(self, arr: np.ndarray) -> np.ndarray:
        """Indices of the rows of ``arr``; ``-1`` for rows not in the group."""
        c = _codes(np.asarray(arr).reshape(-1, self.degree))
        pos = np.searchsorted(self.codes, c)
        pos = np.minimum(pos, len(self.codes) - 1)
        return np.where(self.codes[pos] == c, pos, -1)

    def index_of(self, p: Permutation) -> int:
        idx = int(self.lookup(np.array([p.images], dtype=np.int8))[0])
        if idx < 0:
            raise KeyError(f"{p} is not in {self.name}")
        return idx

    def __contains__(self, p: Permutation) -> bool:
        return p.degree == self.degree and int(
            self.lookup(np.array([p.images], dtype=np.int8))[0]) >= 0

    def is_closed(self) -> bool:
        """Closure under composition; a finite nonempty closed set is a subgroup."""
        for g in self.elements:
            prod = self.array[:, np.asarray(g.images)]  # h * g for every h
            if np.any(self.lookup(prod) < 0):
                return False
        return True


def symmetric_group(n: int, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    check_cap(n, caps.max_degree, "symmetric group degree")
    return PermGroup(n, _lex_permutations(n), kind="symmetric")


def alternating_group(n: int, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    check_cap(n, caps.max_degree, "alternating group degree")
    arr = _lex_permutations(n)
    return PermGroup(n, arr[_sign_even(arr)], kind="alternating")


def _closure(n: int, generators, max_order: int) -> list[tuple]:
    ident = tuple(range(n))
    gens = [g.images for g in generators]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(g[j] for j in s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        if len(seen) > max_order:
            raise CapExceeded(f"generated group exceeds order cap {max_order}")
        frontier = nxt
    return sorted(seen)


def enumerate_group(kind: str, n: int, generators=(), caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """Enumerate ``S_n``, ``A_n`` or the group generated by ``generators``.

    ``kind`` is one of ``"symmetric"``, ``"alternating"``, ``"generated"``
    (short forms ``sym``, ``alt``, ``gen`` are accepted).
    """
    kind = {"sym": "symmetric", "alt": "alternating", "gen": "generated"}.get(kind, kind)
    if n < 1:
        raise ValueError("degree must be positive")
    if kind == "symmetric":
        return symmetric_group(n, caps)
    if kind == "alternating":
        return alternating_group(n, caps)
    if kind != "generated":
        raise ValueError(f"unknown group kind {kind!r}")
    generators = tuple(generators)
    for g in generators:
        if g.degree != n:
            raise ValueError(f"generator {g} has degree {g.degree}, expected {n}")
    elems = _closure(n, generators, caps.max_order)
    return PermGroup(n, np.array(elems, dtype=np.int8).reshape(-1, n),
                     kind="generated", generators=generators)


# ---------------------------------------------------------------------------
# cyclic classes


@dataclass(frozen=True)
class CyclicClass:
    """The generators of one cyclic subgroup ``<x>``, keyed by a canonical representative."""

    representative: Permutation
    class_size: int
    subgroup_order: int

    def members(self) -> list[Permutation]:
        o = self.subgroup_order
        return sorted(perm_power(self.representative, m)
                      for m in range(1, o + 1) if gcd(m, o) == 1)

    @cached_property
    def cycle_type(self) -> Partition:
        return cycle_type(self.representative)

    def __str__(self) -> str:
        return f"[{self.representative}]"


def cyclic_class(psi: Permutation) -> CyclicClass:
    """The class ``[psi]``: representative is the lexicographically least generator of ``<psi>``."""
    if psi.is_identity():
        raise ValueError("the identity class [1] is excluded from proper graphs")
    o = psi.order
    rep = min(perm_power(psi, m) for m in range(1, o + 1) if gcd(m, o) == 1)
    return CyclicClass(rep, totient(o), o)


# ---------------------------------------------------------------------------
# conjugation, normalizers, fusion


def cycle_types_of_array(arr: np.ndarray) -> tuple[list[Partition], np.ndarray]:
    """Cycle types of every row of ``arr``.

    Returns the distinct types and, per row, the index of its type.
    """
    arr = np.asarray(arr, dtype=np.int64)
    rows, n = arr.shape
    lengths = np.zeros((rows, n), dtype=np.int64)
    pos = np.broadcast_to(np.arange(n), (rows, n)).copy()
    ridx = np.arange(rows)[:, None]
    points = np.arange(n)[None, :]
    for k in range(1, n + 1):
        pos = arr[ridx, pos]
        hit = (pos == points) & (lengths == 0)
        lengths[hit] = k
    lengths.sort(axis=1)
    weights = (n + 1) ** np.arange(n - 1, -1, -1, dtype=np.int64)
    uniq, first, inverse = np.unique(lengths @ weights, return_index=True,
                                     return_inverse=True)
    types = []
    for r in first:
        row = lengths[r]
        parts = []
        for L, cnt in zip(*np.unique(row, return_counts=True)):
            parts.extend([int(L)] * (int(cnt) // int(L)))
        types.append(Partition.from_parts(parts))
    return types, np.asarray(inverse).reshape(-1)


def _conjugate_array(arr: np.ndarray, x: np.ndarray, xinv: np.ndarray) -> np.ndarray:
    # (x^-1 g x)(i) = xinv[g[x[i]]]
    return xinv[arr[:, x]]


def normalizer_in_symmetric(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PermGroup:
    """``N_{S_n}(G)`` by brute force over ``S_n``."""
    check_cap(G.degree, caps.brute_force_degree, "normalizer brute-force degree")
    n = G.degree
    if G.kind == "symmetric":
        return G
    members = []
    for x in _lex_permutations(n):
        xinv = np.argsort(x).astype(np.int8)
        if np.all(G.lookup(_conjugate_array(G.array, x, xinv)) >= 0):
            members.append(x)
    return PermGroup(n, np.array(members, dtype=np.int8), kind="generated",
                     name=f"N_S{n}({G.name})")


@dataclass(frozen=True)
class FusionResult:
    controlled: bool
    witness: tuple[Permutation, Permutation, Permutation] | None = None

    def __bool__(self) -> bool:
        return self.controlled


def _orbit_labels(G: PermGroup, N: PermGroup) -> np.ndarray:
    """Least element index in each ``N``-conjugacy orbit on ``G``."""
    label = np.arange(G.order)
    for x in N.array:
        xinv = np.argsort(x).astype(np.int8)
        img = G.lookup(_conjugate_array(G.array, x, xinv))
        if np.any(img < 0):
            raise ValueError("conjugating element does not normalize the group")
        label = np.minimum(label, img)
    return label


def is_fusion_controlled(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> FusionResult:
    """Whether ``N_{S_n}(G)`` realizes every ``S_n``-conjugation between elements of ``G``.

    On failure the witness is ``(psi, x, psi^x)`` with ``x`` in ``S_n`` and
    ``psi^x`` in ``G`` not reachable by conjugation inside the normalizer.
    """
    N = normalizer_in_symmetric(G, caps)
    labels = _orbit_labels(G, N)
    _, type_idx = cycle_types_of_array(G.array)
    first_orbit: dict[int, int] = {}
    for g in range(G.order):
        t = int(type_idx[g])
        lab = int(labels[g])
        if t not in first_orbit:
            first_orbit[t] = lab
        elif first_orbit[t] != lab:
            psi = G.elements[first_orbit[t]]
            phi = G.elements[g]
            x = conjugator(psi, phi)
            return FusionResult(False, (psi, x, conjugate(psi, x)))
    return FusionResult(True)


def fx_automorphism(x: Permutation, classes) -> dict[CyclicClass, CyclicClass]:
    """The map ``[psi] -> [psi^x]`` on the given classes.

    ``classes`` must be the full class set of a group normalized by ``x``.
    """
    classes = list(classes)
    known = set(classes)
    out = {}
    for c in classes:
        image = cyclic_class(conjugate(c.representative, x))
        if image not in known:
            raise ValueError(f"{x} does not normalize the group: {c} maps outside")
        out[c] = image
    if len(set(out.values())) != len(out):
        raise ValueError("conjugation map is not injective on the classes")
    return out


# ---------------------------------------------------------------------------
# group files


def parse_group_file(text: str) -> tuple[int, list[Permutation]]:
    """Parse ``degree n`` followed by one cycle-notation generator per line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty group file")
    m = re.fullmatch(r"degree\s+(\d+)", lines[0])
    if m is None:
        raise ValueError(f"group file must start with 'degree n', got {lines[0]!r}")
    n = int(m.group(1))
    return n, [Permutation.parse(ln, n) for ln in lines[1:]]


def format_group_file(n: int, generators) -> str:
    return "\n".join([f"degree {n}"] + [str(g) for g in generators]) + "\n"


def all_permutations(n: int):
    """Iterate ``S_n`` as :class:`Permutation` objects, lexicographically."""
    for p in itertools.permutations(range(n)):
        yield Permutation._trusted(p)
