"""Finite-height measures on a union of intervals.

A measure is a finite list of weighted components — point atoms and
constant-rate densities — each sitting at an integer level.  Evaluating
a region reports the deepest level that shows positive mass there,
paired with that mass.  The per-level slices can be tabulated and the
measure rebuilt from the table.
"""

from fractions import Fraction

from levelring import Atom, Density, Domain, FHMeasure, INF, Region
from levelring.measures import (
    align,
    evaluate,
    interval,
    is_locally_finite,
    is_open_graded,
    nu_hat,
    nu_k,
    recover,
    support,
)

dom = Domain([("I", 1)])
mu = FHMeasure(
    dom,
    [
        Density("I", 0, 1, 0, 1),                 # level-0 background
        Atom("I", Fraction(1, 2), 1, 1),          # one deeper point
    ],
)

whole = Region.whole(dom)
left = interval(dom, "I", 0, Fraction(1, 2), closed_hi=False)

print("whole domain:   ", evaluate(mu, whole))
print("left half-open: ", evaluate(mu, left), " (misses the atom)")
print()

print("per-level slice masses on the whole domain:")
for k in mu.levels():
    print(f"  level {k}: nu_k = {nu_k(mu, k, whole)},  nu_hat = {nu_hat(mu, k, whole)}")

print()
print("support of level >= 1:", support(mu, 1))
print("open-graded:", is_open_graded(mu), " locally finite:", is_locally_finite(mu))

rebuilt = recover(mu)
print("recovery rebuilds the same values:", evaluate(rebuilt, whole) == evaluate(mu, whole))

print()
print("== a measure that cannot be recovered ==")
# Burying a level-0 atom inside level-1 support hides it from every
# evaluation, so the slice table no longer determines the measure.
buried = FHMeasure(
    dom,
    [
        Atom("I", Fraction(1, 2), 0, 1),
        Density("I", 0, 1, 1, 1),
    ],
)
print("open-graded:", is_open_graded(buried))
print("whole-domain value ignores the atom:", evaluate(buried, whole))

print()
print("== alignment ==")
sparse = FHMeasure(dom, [Atom("I", 0, 3, 1), Density("I", 0, 1, 1, INF)])
packed = align(sparse)
print("occupied levels before:", sparse.levels(), " after:", packed.levels())
