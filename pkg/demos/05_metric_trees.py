"""Edge-weighted trees and the dual tree of a chord family."""

from levelring import INF, pair
from levelring.trees import (
    ChordFamily,
    STree,
    boundary_points,
    collapse,
    distance,
    dual_tree,
    infinite_points,
    insert,
    isomorphic,
    path,
)

tree = STree(
    ["a", "b", "c", "d"],
    [
        ("a", "b", pair(0, 1)),
        ("b", "c", pair(1, 2)),
        ("b", "d", pair(0, INF)),
    ],
)

print("path a -> c:", [(u, v, str(l)) for u, v, l in path(tree, "a", "c")])
print("d(a,c) =", distance(tree, "a", "c"), " (the level-1 edge dominates)")
print("d(a,d) =", distance(tree, "a", "d"))
print("boundary points:", sorted(boundary_points(tree)))

flat = STree(["p", "q", "r"], [("p", "q", pair(0, INF)), ("q", "r", pair(0, 2))])
print("infinite points of the flat tree:", sorted(infinite_points(flat)))

print()
print("== insert and collapse ==")
# replace the branch point b by a small star, one leaf per direction
wye = STree(
    ["m", "u", "v", "w"],
    [("m", "u", pair(2, 1)), ("m", "v", pair(2, 1)), ("m", "w", pair(2, 1))],
)
grown = insert(tree, "b", wye, {"u": "a", "v": "c", "w": "d"})
print("after insertion:", len(grown.nodes), "nodes,", len(grown.edges), "edges")
print("d(a,c) now runs through the deep star center:", distance(grown, "a", "c"))
shrunk = collapse(grown, wye.nodes)
print("collapsing the star restores the original tree:", isomorphic(shrunk, tree))

print()
print("== dual tree of non-crossing chords ==")
# three nested chords and one sibling, on eight marks around a circle
family = ChordFamily(
    8,
    [
        (1, 8, pair(0, 1)),
        (2, 5, pair(1, 1)),
        (3, 4, pair(1, 3)),
        (6, 7, pair(0, 2)),
    ],
)
dual, regions = dual_tree(family)
print("regions:", len(dual.nodes), " (one per chord, plus the outside)")
for name in dual.nodes:
    print(f"  {name:6} from {regions[name]}")
print("outer -> innermost crosses three chords:", distance(dual, "outer", "r3_4"))
print("two siblings at the same depth:        ", distance(dual, "r3_4", "r6_7"))
