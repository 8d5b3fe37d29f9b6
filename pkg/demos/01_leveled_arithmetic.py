"""A tour of the leveled value arithmetic.

A nonzero value is a pair (level, magnitude): an integer depth and a
positive extended rational.  Addition at equal levels adds magnitudes;
a deeper level swallows a shallower one outright.  That one absorption
rule is what everything else in the package leans on.
"""

from levelring import INF, ZERO, compare, from_sequence, pair, to_sequence, total

print("== addition ==")
print(f"(0,2) + (0,3)   = {pair(0, 2) + pair(0, 3)}")
print(f"(0,1) + (1,1)   = {pair(0, 1) + pair(1, 1)}   # the deeper level wins")
print(f"(1,inf) + (1,5) = {pair(1, INF) + pair(1, 5)}")
print(f"zero + (3,2/3)  = {ZERO + pair(3, '2/3')}")

# Absorption makes addition non-cancellative: two different shallow
# summands can leave no trace at all.
a = pair(1, 1) + pair(0, 5)
b = pair(1, 1) + pair(0, 7)
print(f"(1,1)+(0,5) == (1,1)+(0,7)?  {a == b}")

print()
print("== multiplication ==")
print(f"(1,2) * (2,3/2) = {pair(1, 2) * pair(2, '3/2')}   # levels add")
print(f"(0,1) * (4,7/5) = {pair(0, 1) * pair(4, '7/5')}   # (0,1) is the identity")
print(f"zero * (3,inf)  = {ZERO * pair(3, INF)}")

print()
print("== order ==")
chain = [ZERO, pair(0, "1/100"), pair(0, INF), pair(1, "1/100"), pair(1, INF)]
print(" < ".join(str(v) for v in chain))
print("ascending?", all(compare(x, y) == -1 for x, y in zip(chain, chain[1:])))

print()
print("== sums along a path ==")
# total() is the n-ary sum; with mixed levels only the deepest stretch
# survives, which is exactly how tree distances behave later on.
print(f"total (0,1),(1,2),(1,3),(0,9) = {total([pair(0,1), pair(1,2), pair(1,3), pair(0,9)])}")

print()
print("== the sequence picture ==")
# Each value unfolds into a height-H sequence: k leading infinities,
# then the magnitude, then zeros.  Lexicographic order on sequences
# matches the value order, which is handy for eyeballing comparisons.
for v in [ZERO, pair(0, 3), pair(2, 7), pair(1, INF)]:
    seq = to_sequence(v, 5)
    print(f"{str(v):8} -> ({', '.join(str(x) for x in seq)})")
    assert from_sequence(seq) == v
