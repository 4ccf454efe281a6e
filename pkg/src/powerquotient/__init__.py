"""Power graphs of permutation groups, their quotients, and component counts."""

from .config import DEFAULT_CAPS, CapExceeded, Caps
from .counting import (
    closed_form_sn,
    connectivity_equivalences,
    count_via_theorem_a,
    lemma_checks,
    run_procedure_sn,
    structure_report,
)
from .graphcore import GraphMap, LabeledGraph, components
from .partitions import Partition, partitions_of, power
from .permutations import (
    Permutation,
    alternating_group,
    enumerate_group,
    is_fusion_controlled,
    symmetric_group,
)
from .powergraphs import (
    PowerGraphBundle,
    build_bundle,
    build_explicit_power_graph,
    build_quotient_power_graph,
    main_component,
)

__version__ = "0.1.0"
