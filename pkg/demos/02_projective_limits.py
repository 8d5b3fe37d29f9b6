"""Projective weight vectors and one-parameter limits.

Scaling a weight vector by a positive real multiplies every finite
magnitude and leaves levels alone, so a projective class can be keyed by
the canonical representative whose largest finite magnitude is 1.
Families of monomial weights t^d then have well-defined limit classes as
t -> infinity, and different normalizations can land in different
classes — the projective space is not Hausdorff.
"""

from levelring import INF, ZERO, pair
from levelring.vectors import (
    ProjClass,
    limit_points,
    monomial,
    normalized_limit,
    proj_canonical,
    value_at,
)

vec = (pair(2, 6), pair(1, INF), pair(2, 2))
print("vector:           ", [str(v) for v in vec])
print("canonical form:   ", [str(v) for v in proj_canonical(vec)])
print("same class as x3? ", vec in ProjClass([v.scale(3) for v in vec]))

print()
print("== a family of monomial weights ==")
family = (monomial(1, 1, 1), monomial(1, 1, 0))  # (t at level 1, 1 at level 1)
for t in (1, 10, 100):
    sample = value_at(family, t)
    print(f"t={t:4}: {[str(v) for v in sample]}  canonical {[str(v) for v in proj_canonical(sample)]}")

print()
print("limit classes as t grows without bound:")
for cls in limit_points(family):
    print("  ", cls)

print()
# The two normalizations pin different entries to finite size; the
# runaway entry turns infinite in one and the dying entry vanishes (or
# drops a level) in the other.
print("normalized against entry 0:", [str(v) for v in normalized_limit(family, 0)])
print("normalized against entry 1:", [str(v) for v in normalized_limit(family, 1)])

print()
print("== the spiral family ==")
spiral = (monomial(0, 1, 0), monomial(0, 1, 1), monomial(0, 1, 0))
print("entries t^0, t^1, t^0 at level 0")
print("normalized against the middle:", [str(v) for v in normalized_limit(spiral, 1)])
print("normalized against the ends:  ", [str(v) for v in normalized_limit(spiral, 0)])
assert normalized_limit(spiral, 1) == (ZERO, pair(0, 1), ZERO)
assert normalized_limit(spiral, 0) == (pair(0, 1), pair(0, INF), pair(0, 1))
