"""
Composing a forecast from improvement alternatives
==================================================

Generation 4 is the base.  Six groups of prospective improvements hang off
parts A, B and D.  We rank the alternatives, compose one alternative per
group bottom-up, keep the Pareto-efficient compositions and apply them.
"""

from morpho import (ForecastConfig, assign_priorities, render_report,
                    run_forecast, synthesize_node, synthesize_tree)
from morpho.datasets import load_network_model

model = load_network_model()
groups = {g.id: g for g in model.groups}

##############################################################################
# Priorities from profits: "none" options get the worst rank, change items are
# ranked by descending profit.  Group A is the exception in the bundled data:
# its stored priorities favour keeping W unchanged.

for gid, g in groups.items():
    print(gid, assign_priorities(g, "profit-desc", model.priority_scale),
          "stored:", {a.id: a.priority for a in g})

prios = model.stored_priorities()

##############################################################################
# Part D on its own: 27 compositions, two of them Pareto-efficient.  One has
# the better compatibility, the other more top-priority picks.

for comp, q in synthesize_node([groups[g] for g in ("Dt", "Dh", "Db")], model.compat, prios):
    print(comp, q)

##############################################################################
# Whole hierarchy.  Composite alternatives of different parts are assumed
# fully compatible (default_compat=3).

for t in synthesize_tree(model, prios, default_compat=3):
    print(" * ".join(t.composition.alternatives), t.quality,
          {p.node: str(p.quality) for p in t.parts})

##############################################################################
# The same via the pipeline, with the resulting requirement levels.

print(render_report(run_forecast(model, ForecastConfig(method="hmmd"))))
