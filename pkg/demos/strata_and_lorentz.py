"""Stabilizers of the strata, and the same groups seen in SO+(4,1).

Run with ``python demos/strata_and_lorentz.py``.
"""

import numpy as np

from quatmod.groups import parse_word
from quatmod.lorentz import hurwitz_lorentz_group, is_lorentz, lorentz_iwasawa, rep
from quatmod.orbifold import load_strata, verify_stratum

print("id   dim cells order abelian  element orders")
for s in load_strata("H"):
    r = verify_stratum(s)
    orders = " ".join(f"{k}:{v}" for k, v in sorted(r["element_orders"].items(), key=lambda kv: int(kv[0])))
    print(f"{s.id:<4} {s.dimension:>3} {s.cell_count:>5} {r['closure_order']:>5} {r['abelian']!s:<8} {orders}")

m = rep(parse_word("Ti Tj T Tk D[w1]"))
print("\nrep(Ti Tj T Tk D[w1]) is Lorentz:", is_lorentz(m))
f = lorentz_iwasawa(m)
print("Iwasawa: r =", f.r, " translation =", f.xyz)
print("recomposition error:", np.abs(f.recompose() - m.astype(float)).max())

info = hurwitz_lorentz_group()
print("\nU(H, Lor): order", info["order"], " S_i S_j = S_k:", info["SiSj_eq_Sk"])
