"""Walk through the three graphs for a small symmetric group.

Run with ``python3 notebooks/walkthrough_small_groups.py``. Cells are
separated by ``# %%`` so the file also opens as a notebook in most editors.
"""

# %%
from powerquotient import Partition, build_bundle, power, symmetric_group
from powerquotient.counting import count_via_theorem_a, run_procedure_sn

G = symmetric_group(5)
b = build_bundle(G)
print(f"|S_5| = {G.order}")
print(f"quotient graph: {len(b.quotient)} vertices, {b.quotient_components.count} components")
print(f"type graph:     {len(b.type_graph)} vertices, {b.type_components.count} components")
print(f"order graph:    {len(b.order_graph)} vertices, {b.order_components.count} components")

# %%
# Powers of cycle types: a power either keeps the type, kills it, or is proper.
t = Partition.parse("[2,3]")
for a in range(1, 7):
    print(f"{t}^{a} = {power(t, a)}")

# %%
# Type graph components and the classes sitting over each one.
for comp in b.type_components.components:
    types = sorted(str(b.type_graph.labels[v]) for v in comp.vertices)
    print(comp.size, types)

# %%
# Counting without a full search: one term per type graph component.
tr = count_via_theorem_a(b)
for s in tr.steps:
    print(f"{s.type}: term {s.term} (k = {s.k})")
print("total", tr.total)

# %%
# The same count from the S_n procedure with random choices.
import random

print({run_procedure_sn(5, rng=random.Random(seed), bundle=b).total for seed in range(5)})
