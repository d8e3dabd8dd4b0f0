"""Monte Carlo volumes of the two domains next to the exact numbers.

Run with ``python demos/volumes_and_euler.py``.
"""

import math

from quatmod.domains import volume_mc
from quatmod.orbifold import euler_characteristic

for tag, exact in (("PL", math.pi**2 / 72), ("PH", math.pi**2 / 216)):
    v = volume_mc(tag, 2_000_000, seed=1)
    print(f"{tag}: {v['estimate']:.6f} ± {v['stderr']:.1e}   exact {exact:.6f}   tail {v['exact_tail']:.6f}")

# Gauss-Bonnet in dimension 4: vol = (4π²/3) χ^orb
for group in "LH":
    chi = euler_characteristic(group)
    print(f"chi_orb({group}) = {chi},  4π²/3 · chi = {4 * math.pi**2 / 3 * float(chi):.6f}")
