"""Weighted train tracks: switch balance, adjustment, strata, filtration.

A track is a set of segments meeting at switches; a weight vector is
invariant when each switch sees equal sums on its two sides.  On top of
that sit the gap-closing alignment, the level-raising adjustments that
detect non-contiguous weights, an exact enumeration of the feasible
level-patterns, and the construction of leveled weights from growth
degrees.
"""

from levelring import INF, ZERO, pair
from levelring.tracks import (
    TrainTrack,
    adjustments,
    align_weights,
    enumerate_strata,
    height_filtration,
    is_contiguous,
    validate,
)
from levelring.vectors import monomial

# one segment spiraling onto a closed curve: switch equation x + y = y
XY = TrainTrack(["x", "y"], [(["x", "y"], ["y"])])

print("== validation ==")
good = (pair(0, 1), pair(1, INF))
bad = (pair(0, 1), pair(0, 1))
print("weights (0,1),(1,inf):", validate(XY, good) or "balanced")
for violation in validate(XY, bad):
    print("weights (0,1),(0,1): ", violation)

print()
print("== alignment closes level gaps ==")
gappy = (pair(1, 1), pair(2, 1), pair(1, 1))
print([str(w) for w in gappy], "->", [str(w) for w in align_weights(gappy)])

print()
print("== adjustments and contiguity ==")
print("adjustments of (0,1),(1,inf) — raise a subset, stay balanced:")
for subset, raised in adjustments(XY, good):
    print(f"  raise {subset}: {[str(w) for w in raised]}")
print("contiguous?", is_contiguous(XY, good), " (raising x keeps the height but lands elsewhere)")
print("contiguous (0,inf),(1,2)?", is_contiguous(XY, (pair(0, INF), pair(1, 2))))

print()
print("== strata of the solution cone, height bound 2 ==")
strata = enumerate_strata(XY, 2)
feasible = [s for s in strata if s.feasible]
print(f"{len(strata)} proximal level-patterns, {len(feasible)} feasible:")
for s in feasible:
    shown = ["zero" if p is None else f"{p[1]}@{p[0]}" for p in s.pattern]
    witness = [str(w) for w in s.witness]
    print(f"  x={shown[0]:6} y={shown[1]:6}  witness {witness}")

print()
print("== height filtration of a degree family ==")
# the spiral track with the doubled segment merged: x + y = y + z
MERGED = TrainTrack(["x", "y", "z"], [(["x", "y"], ["y", "z"])])
family = (monomial(0, 1, 0), monomial(0, 1, 1), monomial(0, 1, 0))
print("degrees t^0, t^1, t^0  ->", [str(w) for w in height_filtration(MERGED, family)])
