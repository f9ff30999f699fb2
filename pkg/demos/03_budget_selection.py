"""
Budgeted selection of change items
==================================

The alternative route ignores compatibility and solves knapsack problems
exactly: a 0/1 knapsack over past change operations, and a multiple-choice
knapsack (one option per group) over the prospective improvements.
"""

from morpho import ForecastConfig, knapsack01, mckp_select, render_report, run_forecast
from morpho.datasets import load_network_model, network_change_tables

model = load_network_model()

##############################################################################
# 0/1 knapsack over the first change table with a budget of 5.0 cost units.
# Costs have one decimal, so scale=10 turns them into exact integers.

items = [(str(op), op.cost, op.profit) for op in network_change_tables()[0]]
sel = knapsack01(items, "5.0", scale=10)
print(sel.chosen, sel.total_cost, sel.total_profit)

##############################################################################
# Multiple-choice knapsack: how does the best achievable profit grow with
# the budget?

for budget in ("0", "2.0", "4.0", "6.0", "9.0", "12.0", "15.0"):
    s = mckp_select(model.groups, budget)
    print(f"budget {budget:>5}: profit {s.total_profit:>5}  {' '.join(s.chosen)}")

##############################################################################
# Forecast through the budget route.  The quality vector is reported when the
# selection happens to be compatible.

print(render_report(run_forecast(model, ForecastConfig(method="budget", budget="9.0"))))
