"""Finite reflexive graphs, quotients and homomorphism checkers.

Every graph here carries a loop on each vertex. Loops are a rule, not data:
``LabeledGraph`` stores proper edges only and a vertex map may always send an
edge onto a loop unless a 2-homomorphism is requested. Neighbourhoods are
closed (they contain the vertex itself) for the same reason.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

__all__ = [
    "LabeledGraph",
    "GraphMap",
    "Component",
    "ComponentReport",
    "UnionFind",
    "NotAHomomorphism",
    "components",
    "delete_vertex",
    "induced_subgraph",
    "quotient",
    "is_homomorphism",
    "is_two_homomorphism",
    "is_complete_map",
    "is_tame",
    "is_locally_surjective",
    "is_pseudo_covering",
    "is_orbit_map",
    "orbit_partition",
    "isolated_vertices",
    "is_connected",
    "is_two_connected",
    "are_isomorphic",
    "write_graph",
    "read_graph",
    "write_map",
    "read_map",
]


class NotAHomomorphism(ValueError):
    """Raised by checkers whose precondition is a homomorphism."""


class UnionFind:
    """Disjoint sets over ``0..size-1`` with path halving and union by size."""

    def __init__(self, size: int):
        self.parent = list(range(size))
        self.size = [1] * size
        self.count = size

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.count -= 1
        return True


class LabeledGraph:
    """A finite reflexive simple graph on labelled vertices.

    Vertices get dense ids ``0..k-1`` in the order given; ``census`` maps a
    label to the key used for per-component label counts.
    """

    def __init__(self, labels: Sequence[Hashable], edges: Iterable[tuple[int, int]] = (),
                 census: Callable | None = None, name: str = ""):
        self.labels = list(labels)
        if not self.labels:
            raise ValueError("a graph needs at least one vertex")
        k = len(self.labels)
        self.adj: list[set[int]] = [set() for _ in range(k)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"proper edge with equal endpoints: {u}")
            if not (0 <= u < k and 0 <= v < k):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{k - 1}")
            self.adj[u].add(v)
            self.adj[v].add(u)
        self.census = census
        self.name = name

    @classmethod
    def from_label_edges(cls, labels, label_edges, **kw) -> "LabeledGraph":
        g = cls(labels, (), **kw)
        idx = g.index
        for a, b in label_edges:
            u, v = idx[a], idx[b]
            if u == v:
                raise ValueError(f"proper edge with equal endpoints: {a}")
            g.adj[u].add(v)
            g.adj[v].add(u)
        return g

    @cached_property
    def index(self) -> dict:
        idx = {lab: i for i, lab in enumerate(self.labels)}
        if len(idx) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        return idx

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self) -> str:
        name = f"{self.name}, " if self.name else ""
        return f"LabeledGraph({name}vertices={len(self)}, edges={self.n_edges})"

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def edges(self) -> Iterable[tuple[int, int]]:
        """Proper edges as id pairs ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def label_edges(self):
        lab = self.labels
        return [(lab[u], lab[v]) for u, v in self.edges()]

    def has_edge(self, a, b) -> bool:
        """Edge test on labels; loops count as edges."""
        u, v = self.index[a], self.index[b]
        return u == v or v in self.adj[u]

    def neighbors(self, a) -> set:
        return {self.labels[v] for v in self.adj[self.index[a]]}

    def degree(self, u: int) -> int:
        return len(self.adj[u])


@dataclass
class Component:
    vertices: tuple[int, ...]
    is_complete: bool
    census: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)


@dataclass
class ComponentReport:
    graph: LabeledGraph
    components: list[Component]
    component_of: list[int]

    @property
    def count(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def component_containing(self, label) -> Component:
        return self.components[self.component_of[self.graph.index[label]]]

    def labels_of(self, comp: Component) -> list:
        lab = self.graph.labels
        return [lab[v] for v in comp.vertices]


def components(g: LabeledGraph, census: Callable | None = None) -> ComponentReport:
    """Connected components over proper edges, ordered by least vertex id."""
    k = len(g)
    uf = UnionFind(k)
    for u, v in g.edges():
        uf.union(u, v)
    root_to_comp: dict[int, int] = {}
    members: list[list[int]] = []
    component_of = [0] * k
    for v in range(k):
        r = uf.find(v)
        c = root_to_comp.get(r)
        if c is None:
            c = root_to_comp[r] = len(members)
            members.append([])
        members[c].append(v)
        component_of[v] = c
    key = census if census is not None else g.census
    comps = []
    for verts in members:
        s = len(verts)
        # components are closed under adjacency, so degree sums count internal edges
        inner = sum(len(g.adj[v]) for v in verts) // 2
        cen = dict(Counter(key(g.labels[v]) for v in verts)) if key is not None else {}
        comps.append(Component(tuple(verts), inner == s * (s - 1) // 2, cen))
    return ComponentReport(g, comps, component_of)


def is_connected(g: LabeledGraph) -> bool:
    return components(g).count == 1


def induced_subgraph(g: LabeledGraph, vertex_ids: Iterable[int], name: str = "") -> LabeledGraph:
    keep = list(vertex_ids)
    remap = {v: i for i, v in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u in keep for v in g.adj[u] if v in remap and u < v]
    return LabeledGraph([g.labels[v] for v in keep], edges, census=g.census, name=name)


def delete_vertex(g: LabeledGraph, label) -> LabeledGraph:
    """The ``label``-deleted subgraph."""
    if label not in g.index:
        raise KeyError(f"vertex {label!r} not in graph")
    if len(g) == 1:
        raise ValueError("deleting the only vertex leaves no graph")
    drop = g.index[label]
    return induced_subgraph(g, (v for v in range(len(g)) if v != drop),
                            name=f"{g.name}-{label}" if g.name else "")


class GraphMap:
    """A total vertex map between two graphs, stored as target ids per source id."""

    def __init__(self, source: LabeledGraph, target: LabeledGraph, assignment: Sequence[int],
                 name: str = ""):
        if len(assignment) != len(source):
            raise ValueError("assignment must cover every source vertex")
        k = len(target)
        for t in assignment:
            if not 0 <= t < k:
                raise ValueError(f"target id {t} out of range")
        self.source = source
        self.target = target
        self.assignment = tuple(int(t) for t in assignment)
        self.name = name

    @classmethod
    def from_function(cls, source, target, fn: Callable, name: str = "") -> "GraphMap":
        tidx = target.index
        return cls(source, target, [tidx[fn(lab)] for lab in source.labels], name=name)

    def __call__(self, label):
        return self.target.labels[self.assignment[self.source.index[label]]]

    def __repr__(self) -> str:
        return f"GraphMap({self.name or '?'}: {len(self.source)} -> {len(self.target)})"

    def fibers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(len(self.target))]
        for v, t in enumerate(self.assignment):
            out[t].append(v)
        return out

    def compose(self, after: "GraphMap") -> "GraphMap":
        """``after`` applied after ``self``."""
        if after.source is not self.target:
            raise ValueError("maps are not composable")
        return GraphMap(self.source, after.target,
                        [after.assignment[t] for t in self.assignment])


def is_homomorphism(m: GraphMap) -> bool:
    f, tadj = m.assignment, m.target.adj
    for u, v in m.source.edges():
        a, b = f[u], f[v]
        if a != b and b not in tadj[a]:
            return False
    return True


def is_two_homomorphism(m: GraphMap) -> bool:
    """Homomorphism that sends no proper edge onto a loop."""
    f, tadj = m.assignment, m.target.adj
    for u, v in m.source.edges():
        a, b = f[u], f[v]
        if a == b or b not in tadj[a]:
            return False
    return True


def _require_hom(m: GraphMap) -> None:
    if not is_homomorphism(m):
        raise NotAHomomorphism(f"{m!r} is not a graph homomorphism")


def is_complete_map(m: GraphMap) -> bool:
    """Onto the target vertices and onto its proper edges."""
    _require_hom(m)
    f = m.assignment
    if len(set(f)) != len(m.target):
        return False
    hit = set()
    for u, v in m.source.edges():
        a, b = f[u], f[v]
        if a != b:
            hit.add((min(a, b), max(a, b)))
    return len(hit) == m.target.n_edges


def is_tame(m: GraphMap) -> bool:
    """Vertices sharing an image lie in one source component."""
    _require_hom(m)
    comp_of = components(m.source).component_of
    seen: dict[int, int] = {}
    for v, t in enumerate(m.assignment):
        c = comp_of[v]
        if seen.setdefault(t, c) != c:
            return False
    return True


def is_locally_surjective(m: GraphMap) -> bool:
    """``f(N[v]) = N[f(v)]`` for every source vertex, with closed neighbourhoods."""
    _require_hom(m)
    f, sadj, tadj = m.assignment, m.source.adj, m.target.adj
    for v in range(len(m.source)):
        image = {f[w] for w in sadj[v]}
        image.add(f[v])
        want = set(tadj[f[v]])
        want.add(f[v])
        if image != want:
            return False
    return True


def is_pseudo_covering(m: GraphMap) -> bool:
    return is_locally_surjective(m) and is_complete_map(m)


def _as_id_map(g: LabeledGraph, gen) -> list[int]:
    if isinstance(gen, dict):
        idx = g.index
        if len(gen) != len(g):
            raise ValueError("automorphism must be defined on every vertex")
        out = [0] * len(g)
        for a, b in gen.items():
            out[idx[a]] = idx[b]
        return out
    out = [int(x) for x in gen]
    if len(out) != len(g):
        raise ValueError("automorphism must be defined on every vertex")
    return out


def _check_automorphism(g: LabeledGraph, sigma: list[int]) -> None:
    if sorted(sigma) != list(range(len(g))):
        raise ValueError("supplied generator is not a vertex bijection")
    for u, v in g.edges():
        if sigma[v] not in g.adj[sigma[u]]:
            raise ValueError("supplied generator is not a graph automorphism")


def orbit_partition(g: LabeledGraph, generators) -> list[int]:
    """Orbit label (least member id) of every vertex under the generated group."""
    sigmas = [_as_id_map(g, s) for s in generators]
    for s in sigmas:
        _check_automorphism(g, s)
    label = [-1] * len(g)
    for start in range(len(g)):
        if label[start] >= 0:
            continue
        label[start] = start
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for s in sigmas:
                w = s[v]
                if label[w] < 0:
                    label[w] = start
                    queue.append(w)
    return label


def is_orbit_map(m: GraphMap, automorphism_generators) -> bool:
    """Fibers of ``m`` coincide with the orbits of the generated automorphism group."""
    orbit = orbit_partition(m.source, automorphism_generators)
    fiber_first: dict[int, int] = {}
    orbit_first: dict[int, int] = {}
    for v, t in enumerate(m.assignment):
        # both partitions agree iff the pairing of blocks is a bijection
        if fiber_first.setdefault(t, orbit[v]) != orbit[v]:
            return False
        if orbit_first.setdefault(orbit[v], t) != t:
            return False
    return True


def isolated_vertices(g: LabeledGraph) -> set:
    return {g.labels[v] for v in range(len(g)) if not g.adj[v]}


def is_two_connected(g: LabeledGraph) -> bool:
    """``g - x`` is connected for every vertex ``x``.

    A single vertex does not qualify since deleting it leaves no graph.
    """
    k = len(g)
    if k == 1 or not is_connected(g):
        return False
    # iterative articulation-point search
    disc = [-1] * k
    low = [0] * k
    timer = 0
    root_children = 0
    disc[0] = low[0] = timer
    stack = [(0, -1, iter(g.adj[0]))]
    while stack:
        v, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] < 0:
                timer += 1
                disc[w] = low[w] = timer
                stack.append((w, v, iter(g.adj[w])))
                if v == 0:
                    root_children += 1
                advanced = True
                break
            if w != parent:
                low[v] = min(low[v], disc[w])
        if advanced:
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if parent != 0 and low[v] >= disc[parent]:
                return False
    return root_children <= 1


def are_isomorphic(g: LabeledGraph, h: LabeledGraph) -> bool:
    """Exhaustive backtracking isomorphism test, meant for small graphs."""
    k = len(g)
    if k != len(h) or g.n_edges != h.n_edges:
        return False
    if sorted(map(len, g.adj)) != sorted(map(len, h.adj)):
        return False
    order = sorted(range(k), key=lambda v: -len(g.adj[v]))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == k:
            return True
        v = order[i]
        for w in range(k):
            if w in used or len(h.adj[w]) != len(g.adj[v]):
                continue
            if all((mapping[u] in h.adj[w]) == (u in g.adj[v]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)


def quotient(g: LabeledGraph, classes, class_labels: Sequence | None = None,
             census: Callable | None = None) -> tuple[LabeledGraph, GraphMap]:
    """Quotient by a partition of the vertex labels.

    Two distinct classes are adjacent iff some cross pair is a proper edge.
    Default quotient labels are frozensets of member labels.
    """
    classes = [list(c) for c in classes]
    idx = g.index
    block = [-1] * len(g)
    for b, members in enumerate(classes):
        if not members:
            raise ValueError("empty class in partition")
        for lab in members:
            v = idx[lab]
            if block[v] >= 0:
                raise ValueError(f"vertex {lab!r} appears in two classes")
            block[v] = b
    if min(block) < 0:
        raise ValueError("classes do not cover every vertex")
    if class_labels is None:
        class_labels = [frozenset(c) for c in classes]
    qedges = set()
    for u, v in g.edges():
        a, b = block[u], block[v]
        if a != b:
            qedges.add((min(a, b), max(a, b)))
    q = LabeledGraph(class_labels, qedges, census=census, name=f"{g.name}/~" if g.name else "")
    return q, GraphMap(g, q, block, name="pi")


# ---------------------------------------------------------------------------
# exchange format


def write_graph(g: LabeledGraph, label_fmt: Callable = str) -> str:
    """``vertices k``, ``edges m``, k label lines, then m lines ``i j``."""
    edges = sorted(g.edges())
    lines = [f"vertices {len(g)}", f"edges {len(edges)}"]
    for lab in g.labels:
        text = label_fmt(lab)
        if "\n" in text:
            raise ValueError("vertex labels must fit on one line")
        lines.append(text)
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(text: str, label_parse: Callable = str) -> LabeledGraph:
    lines = text.splitlines()
    try:
        k = int(re.fullmatch(r"vertices\s+(\d+)", lines[0].strip()).group(1))
        m = int(re.fullmatch(r"edges\s+(\d+)", lines[1].strip()).group(1))
    except (AttributeError, IndexError) as exc:
        raise ValueError("graph file must start with 'vertices k' and 'edges m'") from exc
    body = lines[2:]
    if len(body) < k + m:
        raise ValueError("graph file truncated")
    labels = [label_parse(body[i].strip()) for i in range(k)]
    edges = []
    for ln in body[k:k + m]:
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"bad edge line {ln!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if any(ln.strip() for ln in body[k + m:]):
        raise ValueError("trailing content after edge list")
    return LabeledGraph(labels, edges)


def write_map(m: GraphMap) -> str:
    return "".join(f"{i} -> {j}\n" for i, j in enumerate(m.assignment))


def read_map(text: str, source: LabeledGraph, target: LabeledGraph) -> GraphMap:
    assignment: dict[int, int] = {}
    for ln in text.splitlines():
        if not ln.strip():
            continue
        mt = re.fullmatch(r"\s*(\d+)\s*->\s*(\d+)\s*", ln)
        if mt is None:
            raise ValueError(f"bad map line {ln!r}")
        i, j = int(mt.group(1)), int(mt.group(2))
        if i in assignment:
            raise ValueError(f"source vertex {i} mapped twice")
        assignment[i] = j
    if sorted(assignment) != list(range(len(source))):
        raise ValueError("map file must assign every source vertex exactly once")
    return GraphMap(source, target, [assignment[i] for i in range(len(source))])
