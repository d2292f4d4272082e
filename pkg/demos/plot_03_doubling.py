"""
Doubling an amicable pair
=========================

Each doubling step adds a variable on one side and doubles the order.
The number of variables stays within the rho_t bound.
"""

from odtool import double_aod, rho_t_bound
from odtool.constructions import aod24_vars

base = aod24_vars()
heavy = base.type_c.weights.index(18)
print(base.order, len(base.type_c), len(base.type_d), "bound", rho_t_bound(base.order, 4))

for steps in (1, 2):
    aod = double_aod(base, steps, split=heavy)
    tc, td = sorted(aod.type_c.weights), sorted(aod.type_d.weights)
    print(aod.order, tc, td, bool(aod.verify()),
          "bound", rho_t_bound(aod.order, len(td)))
