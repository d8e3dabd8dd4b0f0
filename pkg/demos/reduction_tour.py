"""Walk a point of the half-space down into the fundamental domain.

Run with ``python demos/reduction_tour.py``.
"""

from fractions import Fraction

from quatmod.domains import contains, reduce
from quatmod.groups import evaluate, word_str
from quatmod.moebius import apply
from quatmod.quat import Quaternion

q = Quaternion(Fraction(1, 7), Fraction(22, 5), Fraction(-3, 4), Fraction(9, 2))
print("start     ", q)

for group, target in (("L", "PL"), ("H", "PH")):
    r = reduce(q, group)
    print(f"\nPSL(2,{group}): {r.iterations} iterations")
    print("  word    ", word_str(r.word))
    print("  reduced ", r.reduced)
    # the word really maps q to the reduced point, in exact arithmetic
    assert apply(evaluate(r.word), q) == r.reduced
    print(f"  in {target}:", contains(target, r.reduced))
