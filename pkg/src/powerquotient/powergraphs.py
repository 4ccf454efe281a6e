"""The four graphs attached to a permutation group and the maps between them.

For ``G <= S_n`` with ``G_0 = G minus {id}``:

* ``explicit``  - proper power graph on ``G_0``; ``x ~ y`` when one is a power
  of the other;
* ``quotient``  - classes of generators of the same cyclic subgroup;
* ``type_graph`` - cycle types of ``G_0``, adjacent when one is a proper
  partition power of the other;
* ``order_graph`` - element orders ``> 1``, adjacent when one properly
  divides the other.

Maps: ``pi`` (explicit -> quotient), ``t`` (quotient -> type), ``o``
(quotient -> order) and ``oT`` (type -> order), with ``oT . t = o``.

Everything is driven by a :class:`ClassTable`, computed once per group with
numpy: powers of every element, element orders, the canonical
(lexicographically least) generator of every cyclic subgroup, and the
quotient edges ``[x] -- [x^d]`` for the proper divisors ``d`` of ``o(x)``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import DEFAULT_CAPS, Caps, check_cap
from .graphcore import (
    Component,
    ComponentReport,
    GraphMap,
    LabeledGraph,
    components,
    write_graph,
    write_map,
)
from .partitions import (
    Partition,
    partitions_of,
    power,
    proper_divisors,
    totient,
)
from .permutations import (
    CyclicClass,
    Permutation,
    PermGroup,
    compose,
    cycle_type,
    cycle_types_of_array,
)

__all__ = [
    "ClassTable",
    "PowerGraphBundle",
    "MainComponent",
    "class_table",
    "build_bundle",
    "build_explicit_power_graph",
    "build_explicit_power_graph_bruteforce",
    "build_quotient_power_graph",
    "build_order_graph",
    "build_type_graph",
    "type_graph_on",
    "order_graph_on",
    "symmetric_type_graph",
    "symmetric_order_graph",
    "main_component",
    "bundle_summary",
    "export_bundle",
]


@dataclass
class ClassTable:
    """Cyclic-subgroup classes of ``G_0``.

    Arrays indexed by class id: ``rep_index`` (element index of the canonical
    representative, increasing), ``orders``, ``type_index`` into ``types``.
    ``class_of`` maps each element index to its class id (``-1`` for the
    identity); ``edges`` are class-id pairs ``(x, x^d)``.
    """

    group: PermGroup
    rep_index: np.ndarray
    orders: np.ndarray
    class_of: np.ndarray
    types: list[Partition]
    type_index: np.ndarray
    edges: np.ndarray

    @property
    def n_classes(self) -> int:
        return int(self.rep_index.shape[0])

    def class_sizes(self) -> np.ndarray:
        return np.array([totient(int(m)) for m in self.orders], dtype=np.int64)

    def members(self) -> list[np.ndarray]:
        """Element indices of every class."""
        order = np.argsort(self.class_of, kind="stable")
        bounds = np.searchsorted(self.class_of[order], np.arange(self.n_classes + 1))
        return [order[bounds[c]:bounds[c + 1]] for c in range(self.n_classes)]

    def mu(self) -> dict[Partition, int]:
        """Number of elements of each non-trivial type in ``G``."""
        counts: dict[Partition, int] = {}
        for t_idx, m in zip(self.type_index.tolist(), self.orders.tolist()):
            t = self.types[t_idx]
            counts[t] = counts.get(t, 0) + totient(m)
        return counts


def class_table(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> ClassTable:
    check_cap(G.order, caps.max_order, f"order of {G.name}")
    A = G.array
    N = G.order
    ident = G.identity_index
    idx_powers = [np.arange(N, dtype=np.int32)]  # idx_powers[k-1] = index of g^k
    orders = np.zeros(N, dtype=np.int64)
    orders[ident] = 1
    cur = A
    k = 1
    while True:
        done = (idx_powers[-1] == ident) & (orders == 0)
        orders[done] = k
        if np.all(orders > 0):
            break
        k += 1
        cur = np.take_along_axis(cur, A.astype(np.intp), axis=1)  # g^k = g^(k-1) * g
        nxt = G.lookup(cur)
        if np.any(nxt < 0):
            raise ValueError(f"{G.name} is not closed under powers")
        idx_powers.append(nxt.astype(np.int32))
    # canonical generator: least index among g^m, gcd(m, o(g)) = 1
    big = np.iinfo(np.int64).max
    rep = np.full(N, big, dtype=np.int64)
    for m, col in enumerate(idx_powers, start=1):
        ok = (m <= orders) & (np.gcd(m, orders) == 1)
        rep = np.where(ok, np.minimum(rep, col), rep)
    rep_index = np.unique(rep[rep != ident])
    class_of = np.searchsorted(rep_index, rep).astype(np.int64)
    class_of[ident] = -1
    cls_orders = orders[rep_index]
    edges = []
    for m in np.unique(cls_orders).tolist():
        reps_m = rep_index[cls_orders == m]
        src = class_of[reps_m]
        for d in proper_divisors(m):
            dst = class_of[idx_powers[d - 1][reps_m]]
            edges.append(np.stack([src, dst], axis=1))
    edges_arr = np.concatenate(edges) if edges else np.zeros((0, 2), dtype=np.int64)
    types, type_index = cycle_types_of_array(A[rep_index])
    return ClassTable(G, rep_index, cls_orders, class_of, types, type_index, edges_arr)


def _class_labels(table: ClassTable) -> list[CyclicClass]:
    A = table.group.array
    out = []
    for r, m, t in zip(table.rep_index.tolist(), table.orders.tolist(), table.type_index.tolist()):
        c = CyclicClass(Permutation._trusted(tuple(A[r].tolist())), totient(m), m)
        c.__dict__["cycle_type"] = table.types[t]
        out.append(c)
    return out


def _type_census(c: CyclicClass) -> Partition:
    return c.cycle_type


def _quotient_from_table(table: ClassTable) -> LabeledGraph:
    return LabeledGraph(_class_labels(table), map(tuple, table.edges.tolist()),
                        census=_type_census, name=f"P~0({table.group.name})")


def _explicit_from_table(table: ClassTable, caps: Caps) -> LabeledGraph:
    G = table.group
    check_cap(G.order, caps.max_explicit_order, f"explicit power graph of {G.name}")
    ident = G.identity_index
    # vertex ids skip the identity
    vid = np.arange(G.order) - (np.arange(G.order) > ident)
    members = [vid[m].tolist() for m in table.members()]
    edges = []
    for mem in members:
        for i, u in enumerate(mem):
            for v in mem[i + 1:]:
                edges.append((u, v))
    for a, b in table.edges.tolist():
        for u in members[a]:
            for v in members[b]:
                edges.append((u, v))
    labels = [p for i, p in enumerate(G.elements) if i != ident]
    return LabeledGraph(labels, edges, census=cycle_type, name=f"P0({G.name})")


def build_explicit_power_graph(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> LabeledGraph:
    """``P_0(G)``, with edges derived from the class structure.

    Classes are internally complete and adjacent classes are completely joined.
    """
    return _explicit_from_table(class_table(G, caps), caps)


def build_explicit_power_graph_bruteforce(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> LabeledGraph:
    """``P_0(G)`` by testing every pair for ``x in <y>`` or ``y in <x>``.

    Powers are produced by repeated composition; nothing is shared with the
    class-table path.
    """
    check_cap(G.order, caps.max_oracle_order, f"pairwise oracle on {G.name}")
    elems = [p for p in G.elements if not p.is_identity()]
    powers = []
    for x in elems:
        seen = {x}
        y = compose(x, x)
        while y not in seen:
            seen.add(y)
            y = compose(y, x)
        powers.append(seen)
    edges = []
    for i, x in enumerate(elems):
        px = powers[i]
        for j in range(i + 1, len(elems)):
            y = elems[j]
            if y in px or x in powers[j]:
                edges.append((i, j))
    return LabeledGraph(elems, edges, census=cycle_type, name=f"P0({G.name})")


def _projection(table: ClassTable, explicit: LabeledGraph, quotient: LabeledGraph) -> GraphMap:
    ident = table.group.identity_index
    cls = np.delete(table.class_of, ident)
    return GraphMap(explicit, quotient, cls.tolist(), name="pi")


def build_quotient_power_graph(G: PermGroup, caps: Caps = DEFAULT_CAPS,
                               with_projection: bool = True):
    """``P~_0(G)`` and the projection ``pi`` from ``P_0(G)``.

    ``pi`` needs the explicit graph; pass ``with_projection=False`` (``pi`` is
    then ``None``) for groups beyond the explicit cap.
    """
    table = class_table(G, caps)
    q = _quotient_from_table(table)
    if not with_projection:
        return q, None
    return q, _projection(table, _explicit_from_table(table, caps), q)


def order_graph_on(orders) -> LabeledGraph:
    verts = sorted(set(int(m) for m in orders))
    edges = [(i, j) for i, a in enumerate(verts) for j, b in enumerate(verts)
             if i < j and b % a == 0 and a != 1]
    return LabeledGraph(verts, edges, census=lambda m: m, name="O0")


def type_graph_on(types) -> LabeledGraph:
    """Power-type graph on the given non-trivial types.

    Only divisor exponents ``d | o(T)`` are tried since ``T^a = T^gcd(a, o(T))``.
    """
    n_of = {t.n for t in types}
    if len(n_of) > 1:
        raise ValueError("types must partition the same n")
    order = {t: i for i, t in enumerate(partitions_of(next(iter(n_of))))} if n_of else {}
    verts = sorted(set(types), key=order.__getitem__)
    idx = {t: i for i, t in enumerate(verts)}
    edges = set()
    for t in verts:
        for d in proper_divisors(t.order):
            s = power(t, d)
            j = idx.get(s)
            if j is not None:
                u = idx[t]
                edges.add((min(u, j), max(u, j)))
    return LabeledGraph(verts, edges, census=lambda t: t, name="P0(T)")


def symmetric_type_graph(n: int) -> LabeledGraph:
    """``P_0(T(S_n))`` straight from the partitions of ``n``; no enumeration."""
    if n < 2:
        raise ValueError("proper graphs need n >= 2")
    g = type_graph_on([t for t in partitions_of(n) if not t.is_trivial()])
    g.name = f"P0(T(S_{n}))"
    return g


def symmetric_order_graph(n: int) -> LabeledGraph:
    if n < 2:
        raise ValueError("proper graphs need n >= 2")
    g = order_graph_on({t.order for t in partitions_of(n) if not t.is_trivial()})
    g.name = f"O0(S_{n})"
    return g


class PowerGraphBundle:
    """All four graphs of one group plus the canonical maps.

    Graphs are built on first access; ``explicit`` and ``pi`` respect
    ``caps.max_explicit_order``.
    """

    def __init__(self, group: PermGroup, caps: Caps = DEFAULT_CAPS):
        self.group = group
        self.caps = caps

    def __repr__(self) -> str:
        return f"PowerGraphBundle({self.group.name})"

    @cached_property
    def table(self) -> ClassTable:
        return class_table(self.group, self.caps)

    @cached_property
    def quotient(self) -> LabeledGraph:
        return _quotient_from_table(self.table)

    @cached_property
    def explicit(self) -> LabeledGraph:
        return _explicit_from_table(self.table, self.caps)

    @cached_property
    def pi(self) -> GraphMap:
        return _projection(self.table, self.explicit, self.quotient)

    @cached_property
    def type_graph(self) -> LabeledGraph:
        g = type_graph_on(self.table.types)
        g.name = f"P0(T({self.group.name}))"
        return g

    @cached_property
    def order_graph(self) -> LabeledGraph:
        g = order_graph_on(self.table.orders.tolist())
        g.name = f"O0({self.group.name})"
        return g

    @cached_property
    def t_map(self) -> GraphMap:
        tidx = self.type_graph.index
        t = self.table
        return GraphMap(self.quotient, self.type_graph,
                        [tidx[t.types[i]] for i in t.type_index.tolist()], name="t~")

    @cached_property
    def o_map(self) -> GraphMap:
        oidx = self.order_graph.index
        return GraphMap(self.quotient, self.order_graph,
                        [oidx[m] for m in self.table.orders.tolist()], name="o~")

    @cached_property
    def oT_map(self) -> GraphMap:
        oidx = self.order_graph.index
        return GraphMap(self.type_graph, self.order_graph,
                        [oidx[t.order] for t in self.type_graph.labels], name="oT")

    @cached_property
    def quotient_components(self) -> ComponentReport:
        return components(self.quotient)

    @cached_property
    def type_components(self) -> ComponentReport:
        return components(self.type_graph)

    @cached_property
    def order_components(self) -> ComponentReport:
        return components(self.order_graph)

    @cached_property
    def explicit_components(self) -> ComponentReport:
        return components(self.explicit)

    def graph(self, which: str) -> LabeledGraph:
        return {"explicit": lambda: self.explicit, "quotient": lambda: self.quotient,
                "type": lambda: self.type_graph, "order": lambda: self.order_graph}[which]()

    def components_of(self, which: str) -> ComponentReport:
        return {"explicit": lambda: self.explicit_components,
                "quotient": lambda: self.quotient_components,
                "type": lambda: self.type_components,
                "order": lambda: self.order_components}[which]()

    def map(self, which: str) -> GraphMap:
        return {"pi": lambda: self.pi, "t": lambda: self.t_map,
                "o": lambda: self.o_map, "oT": lambda: self.oT_map}[which]()

    def class_of(self, psi: Permutation) -> CyclicClass:
        c = int(self.table.class_of[self.group.index_of(psi)])
        if c < 0:
            raise ValueError("the identity has no class in the proper graphs")
        return self.quotient.labels[c]


def build_bundle(G: PermGroup, caps: Caps = DEFAULT_CAPS) -> PowerGraphBundle:
    return PowerGraphBundle(G, caps)


def build_order_graph(G: PermGroup, caps: Caps = DEFAULT_CAPS):
    """``O_0(G)`` and ``o~`` from the quotient graph."""
    b = PowerGraphBundle(G, caps)
    return b.order_graph, b.o_map


def build_type_graph(G: PermGroup, caps: Caps = DEFAULT_CAPS):
    """``P_0(T(G))`` and ``t~`` from the quotient graph."""
    b = PowerGraphBundle(G, caps)
    return b.type_graph, b.t_map


@dataclass
class MainComponent:
    """Component of ``P~_0(S_n)`` holding the class of ``(1 2)``.

    ``degenerate`` is set for ``n = 2``, where the quotient is a single vertex.
    """

    index: int
    component: Component
    admissible_types: frozenset
    degenerate: bool = False

    @property
    def size(self) -> int:
        return self.component.size


def _is_full_symmetric(G: PermGroup) -> bool:
    from math import factorial
    return G.order == factorial(G.degree)


def main_component(bundle: PowerGraphBundle) -> MainComponent:
    G = bundle.group
    if not _is_full_symmetric(G):
        raise ValueError("the main component is defined for S_n only")
    n = G.degree
    if n < 2:
        raise ValueError("S_1 has no proper power graph")
    rep = bundle.quotient_components
    if n == 2:
        comp = rep.components[0]
        return MainComponent(0, comp, frozenset(comp.census), degenerate=True)
    transposition = Permutation.from_cycles([(1, 2)], n)
    c = bundle.class_of(transposition)
    idx = rep.component_of[bundle.quotient.index[c]]
    comp = rep.components[idx]
    return MainComponent(idx, comp, frozenset(comp.census))


def bundle_summary(bundle: PowerGraphBundle, include_explicit: bool | None = None) -> dict:
    """Vertex, edge and component counts per graph."""
    if include_explicit is None:
        include_explicit = bundle.group.order <= bundle.caps.max_explicit_order
    out = {"group": bundle.group.name, "degree": bundle.group.degree,
           "order": str(bundle.group.order), "graphs": {}}
    names = (["explicit"] if include_explicit else []) + ["quotient", "type", "order"]
    for name in names:
        g = bundle.graph(name)
        out["graphs"][name] = {"vertices": len(g), "edges": g.n_edges,
                               "components": bundle.components_of(name).count}
    return out


def export_bundle(bundle: PowerGraphBundle, directory: str,
                  include_explicit: bool | None = None) -> list[str]:
    """Write each graph, each map and ``summary.json`` into ``directory``."""
    if include_explicit is None:
        include_explicit = bundle.group.order <= bundle.caps.max_explicit_order
    os.makedirs(directory, exist_ok=True)
    written = []

    def put(name: str, text: str) -> None:
        path = os.path.join(directory, name)
        with open(path, "w") as fh:
            fh.write(text)
        written.append(path)

    if include_explicit:
        put("explicit.graph", write_graph(bundle.explicit))
        put("pi.map", write_map(bundle.pi))
    put("quotient.graph", write_graph(bundle.quotient))
    put("type.graph", write_graph(bundle.type_graph))
    put("order.graph", write_graph(bundle.order_graph))
    put("t.map", write_map(bundle.t_map))
    put("o.map", write_map(bundle.o_map))
    put("oT.map", write_map(bundle.oT_map))
    put("summary.json", json.dumps(bundle_summary(bundle, include_explicit), indent=2) + "\n")
    return written
