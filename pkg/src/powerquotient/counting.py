"""Component counts of proper power graphs.

Three independent routes to the number of components of ``P~_0(S_n)``:

* breadth-first search on the quotient graph (in :mod:`powergraphs`),
* the per-type sum ``mu_T / (phi(o(T)) * k_C(T))`` over one type per
  component of the type graph (:func:`count_via_theorem_a`), also run as an
  absorb-and-repeat loop (:func:`run_procedure_sn`),
* closed forms in the degree (:func:`closed_form_sn`).

Everything here is exact integer arithmetic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import factorial

from .config import DEFAULT_CAPS, Caps, CapExceeded, check_cap
from .graphcore import (
    Component,
    LabeledGraph,
    are_isomorphic,
    induced_subgraph,
    is_connected,
    is_two_connected,
)
from .partitions import (
    Partition,
    is_prime,
    mu_symmetric,
    partitions_of,
    totient,
    type_sort_key,
)
from .permutations import Permutation, is_fusion_controlled, symmetric_group
from .powergraphs import (
    PowerGraphBundle,
    build_bundle,
    main_component,
    symmetric_order_graph,
    symmetric_type_graph,
)

__all__ = [
    "InexactDivision",
    "NotFusionControlled",
    "ProcedureStep",
    "ProcedureTrace",
    "ClosedFormResult",
    "count_via_theorem_a",
    "run_procedure_sn",
    "closed_form_sn",
    "regime_of",
    "StructureReport",
    "structure_report",
    "ConnectivityFlags",
    "connectivity_equivalences",
    "min_two_connected_degree",
    "LemmaReport",
    "lemma_checks",
    "isoclass_holds",
    "sn_report",
]

# Table of small degrees, where no closed form applies: n -> (c0, type, order)
SMALL_TABLE = {
    2: (1, 1, 1),
    3: (4, 2, 2),
    4: (13, 3, 2),
    5: (31, 3, 2),
    6: (83, 4, 2),
    7: (128, 3, 2),
}

# partitions of 40 number 37338; above that the type graph is not built
MAX_TYPE_GRAPH_DEGREE = 40


class InexactDivision(ArithmeticError):
    """A per-type term did not divide exactly."""


class NotFusionControlled(ValueError):
    pass


@dataclass(frozen=True)
class ProcedureStep:
    type: Partition
    component: int
    k: int
    term: int
    absorbed: frozenset


@dataclass
class ProcedureTrace:
    steps: list[ProcedureStep] = field(default_factory=list)

    @property
    def total(self) -> int:
        return sum(s.term for s in self.steps)

    @property
    def step_count(self) -> int:
        return len(self.steps)

    @property
    def terms(self) -> list[int]:
        return [s.term for s in self.steps]

    def to_json(self) -> list[dict]:
        return [{"type": str(s.type), "term": str(s.term), "k": s.k,
                 "component": s.component,
                 "absorbed": [str(t) for t in sorted(s.absorbed, key=type_sort_key)]}
                for s in self.steps]


def _term(mu: int, t: Partition, k: int) -> int:
    den = totient(t.order) * k
    q, r = divmod(mu, den)
    if r:
        raise InexactDivision(f"type {t}: {mu} / ({totient(t.order)} * {k}) is not an integer")
    if q < 1:
        raise InexactDivision(f"type {t}: term {mu} / {den} is not positive")
    return q


def _mu_table(bundle: PowerGraphBundle) -> dict[Partition, int]:
    return bundle.table.mu()


def _least_class_component(bundle: PowerGraphBundle, t: Partition) -> int:
    """Component holding the class of type ``t`` with the least representative."""
    table = bundle.table
    tidx = table.types.index(t)
    hits = (table.type_index == tidx).nonzero()[0]
    if hits.size == 0:
        raise RuntimeError(f"type {t} occurs in no component")
    # class ids increase with the representative index
    return bundle.quotient_components.component_of[int(hits[0])]


def _admissible(bundle: PowerGraphBundle, t: Partition) -> list[int]:
    return [i for i, c in enumerate(bundle.quotient_components.components) if t in c.census]


def count_via_theorem_a(bundle: PowerGraphBundle, verify_fusion: bool = False) -> ProcedureTrace:
    """Sum of per-type terms, one type per type-graph component.

    The chosen type is the least vertex of each type-graph component under
    :func:`type_sort_key`; the chosen component is the one holding that
    type's least class. ``mu_T`` is counted over the enumerated group.
    The answer is only meaningful for fusion-controlled groups; pass
    ``verify_fusion`` to check that first (brute force, small degree only).
    """
    if verify_fusion:
        res = is_fusion_controlled(bundle.group, bundle.caps)
        if not res:
            raise NotFusionControlled(f"{bundle.group.name} is not fusion controlled: {res.witness}")
    mu = _mu_table(bundle)
    qcomps = bundle.quotient_components.components
    trace = ProcedureTrace()
    tg = bundle.type_graph
    for tcomp in bundle.type_components.components:
        types = [tg.labels[v] for v in tcomp.vertices]
        t = min(types, key=type_sort_key)
        ci = _least_class_component(bundle, t)
        k = qcomps[ci].census[t]
        trace.steps.append(ProcedureStep(t, ci, k, _term(mu[t], t, k), frozenset(types)))
    return trace


def run_procedure_sn(n: int, rng: random.Random | int | None = None,
                     caps: Caps = DEFAULT_CAPS,
                     bundle: PowerGraphBundle | None = None) -> ProcedureTrace:
    """Absorb-and-repeat count of the components of ``P~_0(S_n)``.

    Start with every non-trivial type unabsorbed. Each step picks a type,
    picks a quotient component containing it, adds its term, and absorbs the
    types met in that component. With ``rng`` unset the least type and the
    component of its least class are chosen; otherwise both choices are
    random. ``mu_T`` comes from the closed formula for ``S_n``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if bundle is None:
        bundle = build_bundle(symmetric_group(n, caps), caps)
    if isinstance(rng, int):
        rng = random.Random(rng)
    qcomps = bundle.quotient_components.components
    treport = bundle.type_components
    unabsorbed = {t for t in partitions_of(n) if not t.is_trivial()}
    seen: set = set()
    trace = ProcedureTrace()
    while unabsorbed:
        pool = sorted(unabsorbed, key=type_sort_key)
        if rng is None:
            t = pool[0]
            ci = _least_class_component(bundle, t)
        else:
            t = rng.choice(pool)
            ci = rng.choice(_admissible(bundle, t))
        comp = qcomps[ci]
        absorbed = frozenset(comp.census)
        expected = frozenset(treport.labels_of(treport.component_containing(t)))
        if absorbed != expected:
            raise RuntimeError(f"types of component {ci} differ from the type-graph component of {t}")
        if absorbed & seen:
            raise RuntimeError(f"step absorbing {t} re-absorbs {sorted(absorbed & seen, key=type_sort_key)}")
        k = comp.census[t]
        trace.steps.append(ProcedureStep(t, ci, k, _term(mu_symmetric(t), t, k), absorbed))
        seen |= absorbed
        unabsorbed -= absorbed
    if trace.step_count != len(treport.components):
        raise RuntimeError("step count differs from the number of type-graph components")
    return trace


@dataclass(frozen=True)
class ClosedFormResult:
    n: int
    c0: int
    c0_type: int
    c0_order: int
    regime: str

    def to_json(self) -> dict:
        return {"n": self.n, "regime": self.regime, "c0": str(self.c0),
                "c0_type": self.c0_type, "c0_order": self.c0_order}


def regime_of(n: int) -> str:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n <= 7:
        return "small"
    if is_prime(n):
        return "prime"
    if is_prime(n - 1):
        return "prime_plus_one"
    return "neither"


def closed_form_sn(n: int) -> ClosedFormResult:
    """Component counts of the quotient, type and order graphs of ``S_n``."""
    regime = regime_of(n)
    if regime == "small":
        c0, ct, co = SMALL_TABLE[n]
    elif regime == "prime":
        c0, ct, co = factorial(n - 2) + 1, 2, 2
    elif regime == "prime_plus_one":
        c0, ct, co = n * factorial(n - 3) + 1, 2, 2
    else:
        c0, ct, co = 1, 1, 1
    return ClosedFormResult(n, c0, ct, co, regime)


@dataclass
class OtherComponent:
    index: int
    size: int
    is_complete: bool
    type_census: dict
    isolated: bool
    prime_order: bool
    explicit_size: int | None = None
    explicit_complete: bool | None = None

    def to_json(self) -> dict:
        out = {"size": self.size, "is_complete": self.is_complete,
               "type_census": {str(t): k for t, k in self.type_census.items()}}
        if self.explicit_size is not None:
            out["explicit_size"] = self.explicit_size
            out["explicit_complete"] = self.explicit_complete
        return out


@dataclass
class StructureReport:
    n: int
    main_index: int
    main_size: int
    main_complete: dict
    others: list[OtherComponent]
    asserts_shape: bool

    def violations(self) -> list[str]:
        """Failures of the isolated-prime-vertex shape; empty when not asserted."""
        if not self.asserts_shape:
            return []
        out = []
        for o in self.others:
            if not o.isolated:
                out.append(f"component {o.index} has {o.size} vertices")
            if not o.prime_order:
                out.append(f"component {o.index} has type census {o.type_census}")
            if o.explicit_size is not None:
                (t,) = o.type_census
                if o.explicit_size != t.order - 1 or not o.explicit_complete:
                    out.append(f"explicit component over {o.index} is not complete on {t.order - 1}")
        for name in ("quotient", "explicit", "type"):
            if self.main_complete.get(name):
                out.append(f"main {name} component is complete")
        return out

    def to_json(self) -> dict:
        return {"main": {"size": self.main_size, "is_complete": self.main_complete["quotient"],
                         "completeness": self.main_complete},
                "others": [o.to_json() for o in self.others]}


def _image_complete(bundle: PowerGraphBundle, comp: Component) -> bool:
    """Is the order image of a quotient component a complete graph."""
    omap = bundle.o_map.assignment
    q = bundle.quotient
    verts = {omap[v] for v in comp.vertices}
    edges = set()
    for u in comp.vertices:
        for v in q.adj[u]:
            a, b = omap[u], omap[v]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    k = len(verts)
    return len(edges) == k * (k - 1) // 2


def structure_report(bundle: PowerGraphBundle, with_explicit: bool | None = None) -> StructureReport:
    """Main component of ``P~_0(S_n)`` and the shape of every other one.

    The isolated-prime-vertex shape is asserted (see ``violations``) for
    ``n >= 8`` only; smaller degrees are described without judgement.
    """
    mc = main_component(bundle)
    n = bundle.group.degree
    if with_explicit is None:
        with_explicit = bundle.group.order <= bundle.caps.max_explicit_order
    qrep = bundle.quotient_components
    q = bundle.quotient
    main_complete = {"quotient": mc.component.is_complete}
    trep = bundle.type_components
    if n >= 3:
        t_main = trep.component_containing(Partition.from_parts([1] * (n - 2) + [2]))
    else:
        t_main = trep.components[0]
    main_complete["type"] = t_main.is_complete
    main_complete["order_image"] = _image_complete(bundle, mc.component)
    erep = bundle.explicit_components if with_explicit else None
    if erep is not None:
        rep_label = q.labels[mc.component.vertices[0]].representative
        main_complete["explicit"] = erep.component_containing(rep_label).is_complete
    others = []
    for i, comp in enumerate(qrep.components):
        if i == mc.index:
            continue
        census = dict(comp.census)
        isolated = comp.size == 1 and not q.adj[comp.vertices[0]]
        prime = all(is_prime(t.order) for t in census)
        o = OtherComponent(i, comp.size, comp.is_complete, census, isolated, prime)
        if erep is not None:
            ecomp = erep.component_containing(q.labels[comp.vertices[0]].representative)
            o.explicit_size = ecomp.size
            o.explicit_complete = ecomp.is_complete
        others.append(o)
    return StructureReport(n, mc.index, mc.size, main_complete, others, asserts_shape=n >= 8)


@dataclass
class ConnectivityFlags:
    n: int
    flags: dict  # name -> (value, source)

    NAMES = ("two_connected", "explicit_connected", "quotient_connected",
             "type_connected", "order_connected", "predicate")

    @property
    def values(self) -> list[bool]:
        return [self.flags[k][0] for k in self.NAMES]

    @property
    def agree(self) -> bool:
        return len(set(self.values)) == 1

    @property
    def all_true(self) -> bool:
        return all(self.values)

    def to_json(self) -> dict:
        return {"n": self.n, "agree": self.agree,
                "flags": {k: {"value": v, "source": s} for k, (v, s) in self.flags.items()}}


def _power_graph_with_identity(bundle: PowerGraphBundle) -> LabeledGraph:
    e = bundle.explicit
    k = len(e)
    ident = Permutation.identity(bundle.group.degree)
    edges = list(e.edges()) + [(k, v) for v in range(k)]
    return LabeledGraph(list(e.labels) + [ident], edges, name=f"P({bundle.group.name})")


def connectivity_equivalences(n: int, caps: Caps = DEFAULT_CAPS) -> ConnectivityFlags:
    """Six statements about ``S_n`` that hold or fail together.

    Graph-based where caps allow, closed form otherwise; each flag records
    its source.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    cf = closed_form_sn(n)
    flags = {}
    order = factorial(n)
    bundle = None
    if n <= caps.max_degree and order <= caps.max_order:
        bundle = build_bundle(symmetric_group(n, caps), caps)
    if bundle is not None and order <= caps.max_explicit_order:
        flags["two_connected"] = (is_two_connected(_power_graph_with_identity(bundle)), "graph")
        flags["explicit_connected"] = (bundle.explicit_components.count == 1, "graph")
    else:
        flags["two_connected"] = (cf.c0 == 1, "closed_form")
        flags["explicit_connected"] = (cf.c0 == 1, "closed_form")
    if bundle is not None:
        flags["quotient_connected"] = (bundle.quotient_components.count == 1, "graph")
    else:
        flags["quotient_connected"] = (cf.c0 == 1, "closed_form")
    if n <= MAX_TYPE_GRAPH_DEGREE:
        flags["type_connected"] = (is_connected(symmetric_type_graph(n)), "graph")
        flags["order_connected"] = (is_connected(symmetric_order_graph(n)), "graph")
    else:
        flags["type_connected"] = (cf.c0_type == 1, "closed_form")
        flags["order_connected"] = (cf.c0_order == 1, "closed_form")
    flags["predicate"] = (n == 2 or not (is_prime(n) or is_prime(n - 1)), "predicate")
    return ConnectivityFlags(n, flags)


def min_two_connected_degree(start: int = 3, stop: int = 50, caps: Caps = DEFAULT_CAPS) -> int | None:
    """Least ``n`` in ``[start, stop)`` for which all six flags hold."""
    for n in range(start, stop):
        f = connectivity_equivalences(n, caps)
        if not f.agree:
            raise RuntimeError(f"flags disagree at n = {n}: {f.flags}")
        if f.all_true:
            return n
    return None


@dataclass
class TypeLemmaEntry:
    type: Partition
    k_total: int
    mu: int
    admissible: list[int]
    k_values: list[int]

    @property
    def admissible_count(self) -> int:
        return len(self.admissible)


@dataclass
class LemmaReport:
    entries: dict
    violations: list[tuple[str, dict]]

    @property
    def ok(self) -> bool:
        return not self.violations


def lemma_checks(bundle: PowerGraphBundle) -> LemmaReport:
    """Census identities of a fusion-controlled group.

    For every type ``T``: the ratio ``k_total(T) / k_C(T)`` is the same for
    every component ``C`` containing ``T`` and equals the number of such
    components, which also equals ``mu_T / (phi(o(T)) * k_C(T))``. Within
    one component the ratio is the same for all of its types. For ``S_n``
    ``k_total(T) = mu_T / phi(o(T))`` is also checked against the formula.
    """
    qcomps = bundle.quotient_components.components
    mu = _mu_table(bundle)
    k_total: dict = {}
    where: dict = {}
    for i, c in enumerate(qcomps):
        for t, k in c.census.items():
            k_total[t] = k_total.get(t, 0) + k
            where.setdefault(t, []).append(i)
    symmetric = bundle.group.order == factorial(bundle.group.degree)
    entries = {}
    bad: list[tuple[str, dict]] = []
    for t in sorted(k_total, key=type_sort_key):
        adm = where[t]
        ks = [qcomps[i].census[t] for i in adm]
        entries[t] = TypeLemmaEntry(t, k_total[t], mu[t], adm, ks)
        phi = totient(t.order)
        for i, k in zip(adm, ks):
            if k_total[t] % k or k_total[t] // k != len(adm):
                bad.append(("ratio_equals_count", {"type": str(t), "component": i, "k_C": k,
                                                   "k_total": k_total[t], "count": len(adm)}))
            if mu[t] % (phi * k) or mu[t] // (phi * k) != len(adm):
                bad.append(("count_formula", {"type": str(t), "component": i, "k_C": k,
                                              "mu": mu[t], "count": len(adm)}))
        if symmetric and k_total[t] * phi != mu_symmetric(t):
            bad.append(("census", {"type": str(t), "k_total": k_total[t], "mu": mu_symmetric(t)}))
    for i, c in enumerate(qcomps):
        # compare k_total / k across types by cross multiplication
        items = [(t, (k_total[t], k)) for t, k in c.census.items()]
        t0, (a0, k0) = items[0]
        for t, (a, k) in items[1:]:
            if a * k0 != a0 * k:
                bad.append(("ratio_within_component", {"component": i, "types": [str(t0), str(t)],
                                                       "ratios": [f"{a0}/{k0}", f"{a}/{k}"]}))
    return LemmaReport(entries, bad)


def isoclass_holds(bundle: PowerGraphBundle) -> bool:
    """Is every quotient component isomorphic to its induced type-graph component."""
    q = bundle.quotient
    tg = bundle.type_graph
    for comp in bundle.quotient_components.components:
        sub = induced_subgraph(q, comp.vertices)
        tsub = induced_subgraph(tg, [tg.index[t] for t in comp.census])
        if not are_isomorphic(sub, tsub):
            return False
    return True


def sn_report(n: int, caps: Caps = DEFAULT_CAPS) -> dict:
    """JSON-ready report for ``S_n``: closed form, trace and structure when in range."""
    cf = closed_form_sn(n)
    out = cf.to_json()
    out["steps"] = None
    out["structure"] = None
    try:
        check_cap(factorial(n), caps.max_order, f"order of S_{n}")
        check_cap(n, caps.max_degree, "degree")
    except CapExceeded:
        return out
    bundle = build_bundle(symmetric_group(n, caps), caps)
    out["steps"] = run_procedure_sn(n, caps=caps, bundle=bundle).to_json()
    out["structure"] = structure_report(bundle).to_json()
    return out
