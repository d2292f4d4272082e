"""
Which PD(n; 1,1,1; 1,1,1; n-3) exist
====================================

Every verdict comes with the chain of rules that produced it.  The order 20
case goes through Hilbert symbols at p = 17.
"""

from odtool import Status, decide_pd133, hilbert, s_p

exists = [n for n in range(1, 201) if decide_pd133(n).status is Status.EXISTS]
print("exists for n <= 200:", exists)

print(decide_pd133(20).format(explain=True))

t = (1, 1, 1, 3, 3, 3, 17, 17, 34)
print("S_17 =", s_p(t, 17), " (3, 17)_17 =", hilbert(3, 17, 17))

print(decide_pd133(16).format(explain=True))
