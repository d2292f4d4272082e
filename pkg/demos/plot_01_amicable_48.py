"""
A full amicable pair of order 48
================================

Four pairwise amicable 12x12 matrices are plugged into a 4x4 array to give
an AOD(48; 4,10,34; 4,44).  Setting every variable to 1 gives Hadamard
matrices.
"""

from odtool import gram, is_full, is_scalar_identity, substitute, verify_aod
from odtool.constructions import aod48

aod = aod48()
print(aod.type_c.describe(), aod.type_d.describe())

# the relations are checked exactly over the polynomial ring
print(verify_aod(aod.C, aod.D, aod.type_c, aod.type_d).format())

# no zero entries on either side
print("full:", bool(is_full(aod.C)), bool(is_full(aod.D)))

# all ones collapses C to a Hadamard matrix
H = substitute(aod.C, {v: 1 for v in aod.type_c.vars})
print("H H^T = %s I" % is_scalar_identity(gram(H)))

# the disjoint-variable reading of the same array is not full
print("disjoint variant full:", bool(is_full(aod48("disjoint").C)))
