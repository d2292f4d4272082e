"""
From a product design to an OD(24)
==================================

PD(12; 1,1,1; 1,1,1; 9) combined with the order 2 amicable pair.
"""

from odtool import combine_pd_aod, is_full, verify_od, verify_pd
from odtool.constructions import aod2_split, pd12

pd = pd12()
print(verify_pd(*pd.matrices, *pd.types).format())

od = combine_pd_aod(pd, aod2_split(), "ii")
print(od.order, od.type.describe())
print(verify_od(od.matrix, od.type).format())
print("full:", bool(is_full(od.matrix)))

# the other placements are valid too, with different weights
for variant in ("i", "iii", "iv"):
    od = combine_pd_aod(pd, aod2_split(), variant)
    print(variant, od.type.sorted().describe(), bool(verify_od(od.matrix, od.type)))
