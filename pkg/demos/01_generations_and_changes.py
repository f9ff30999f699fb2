"""
Detecting changes across system generations
===========================================

The bundled example tracks requirements to a communication network over
four generations.  Here we diff neighbouring generations, look at the typed
operations, and merge everything into one general change set carrying the
expert (cost, profit) estimates.
"""

from morpho import aggregate_changes, diff_generations
from morpho.datasets import change_annotations, load_network_model, network_change_tables

model = load_network_model()

# Each generation stores satisfiability levels (0..3) of the leaf criteria.
for g in model.generations:
    print(g.index, " ".join(f"{leaf}{g.level(leaf)}" for leaf in model.tree.leaves))

##############################################################################
# Diff neighbouring generations.  0->k is an addition (O3), j->k a change (O1);
# a composite part that gains its first active leaf is reported as O8.

change_sets = []
for prev, curr in zip(model.generations, model.generations[1:]):
    cs = diff_generations(prev, curr, model)
    change_sets.append(cs)
    print(f"\n{prev.index} -> {curr.index}")
    for op in cs:
        print(f"  {op.kind.value:<3} {op}")

##############################################################################
# The third transition also contains V2->V3, which has no expert estimate.
# Attach the estimates and see which operations stay un-annotated.

general = aggregate_changes(change_sets, change_annotations(network_change_tables()))
print(f"\n{len(general)} operations in the general set")
for op in general:
    if op.cost is None:
        print("  no estimate:", op)
