"""Counting subrepresentations over small prime fields.

Point counts over F_2, F_3, F_5 interpolate to one integer polynomial in
the field size; its value at 1 is the Euler characteristic that feeds the
geometric F-polynomial formula.
"""

import itertools

from clusterchar import DynkinData, euler_characteristic, indecomposable_rep
from clusterchar.grass import end_ring_dimension

d = DynkinData.make("D4", I0={2})
alpha = (1, 2, 1, 1)
builder = lambda p: indecomposable_rep(alpha, d, p)

rep = builder(5)
print(f"M[{alpha}] over F_5: dims {rep.dims}, "
      f"End-ring dimension {end_ring_dimension(rep)}")

print("\nnonempty quiver grassmannians:")
for gamma in itertools.product(range(2), range(3), range(2), range(2)):
    gc = euler_characteristic(builder, gamma)
    if gc.euler:
        poly = " + ".join(f"{c}p^{k}" if k else str(c)
                          for k, c in enumerate(gc.polynomial) if c)
        print(f"    gamma={gamma}: counts {gc.counts[:3]} over p=2,3,5, "
              f"polynomial {poly}, chi = {gc.euler}")
