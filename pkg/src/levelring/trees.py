"""Finite trees with leveled edge lengths, and dual trees of chord
families.

An ``STree`` is a finite tree whose edges carry nonzero ``LevelValue``
lengths.  Distance between nodes is the leveled sum along the unique
connecting path; since a sum always dominates its terms, the triangle
inequality comes for free, and ``verify_metric`` checks it (together with
symmetry and definiteness) as a consistency audit — optionally against an
externally supplied distance table.

``boundary_points`` are the degree-one nodes.  ``infinite_points`` is
offered for flat (all level-0) trees only: a node is infinite when every
path reaching it has infinite total length, i.e. when all of its incident
edges are infinite.  A tree is locally finite when boundary and infinite
points coincide.

``insert`` splices a tree into a node (redistributing the node's edges
onto chosen near-boundary nodes of the insertion), ``collapse`` contracts
a connected node set back to a point, and ``isomorphic`` compares trees by
a canonical form that includes edge lengths.

``dual_tree`` converts a family of non-crossing weighted chords in a disk
into the tree of complementary regions: one node per region, one edge per
chord (carrying its weight) between the regions on its two sides.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from levelring.values import LevelValue, XRat, ZERO, total

__all__ = [
    "ChordFamily",
    "STree",
    "boundary_points",
    "canonical_form",
    "collapse",
    "distance",
    "dual_tree",
    "infinite_points",
    "insert",
    "is_locally_finite",
    "isomorphic",
    "path",
    "verify_metric",
]

Edge = tuple[str, str, LevelValue]


@dataclass(frozen=True)
class STree:
    """A finite tree; every edge carries a nonzero leveled length."""

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]

    def __init__(
        self, nodes: Iterable[str], edges: Iterable[tuple[str, str, LevelValue]] = ()
    ):
        node_list = tuple(str(n) for n in nodes)
        if not node_list:
            raise ValueError("a tree needs at least one node")
        if len(set(node_list)) != len(node_list):
            raise ValueError("node ids must be unique")
        known = set(node_list)
        edge_list = []
        for a, b, length in edges:
            a, b = str(a), str(b)
            if a not in known or b not in known:
                raise ValueError(f"edge ({a},{b}) mentions unknown nodes")
            if a == b:
                raise ValueError(f"self-loop at {a}")
            if not isinstance(length, LevelValue) or length.is_zero:
                raise ValueError(f"edge ({a},{b}) needs a nonzero length")
            edge_list.append((min(a, b), max(a, b), length))
        if len(edge_list) != len(node_list) - 1:
            raise ValueError(
                f"{len(node_list)} nodes need exactly {len(node_list) - 1} edges "
                f"for a tree, got {len(edge_list)}"
            )
        # connectivity (acyclicity then follows from the edge count)
        adj: dict[str, list[str]] = {n: [] for n in node_list}
        for a, b, _ in edge_list:
            adj[a].append(b)
            adj[b].append(a)
        seen = {node_list[0]}
        frontier = [node_list[0]]
        while frontier:
            cur = frontier.pop()
            for nxt in adj[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        if len(seen) != len(node_list):
            raise ValueError("tree is not connected")
        object.__setattr__(self, "nodes", node_list)
        object.__setattr__(self, "edges", tuple(sorted(edge_list, key=lambda e: (e[0], e[1]))))

    def neighbors(self, node: str) -> dict[str, LevelValue]:
        """Adjacent nodes with the connecting edge lengths."""
        if node not in self.nodes:
            raise KeyError(f"unknown node {node!r}")
        out: dict[str, LevelValue] = {}
        for a, b, length in self.edges:
            if a == node:
                out[b] = length
            elif b == node:
                out[a] = length
        return out

    def degree(self, node: str) -> int:
        return len(self.neighbors(node))


def path(tree: STree, x: str, y: str) -> list[tuple[str, str, LevelValue]]:
    """The unique simple path from x to y as oriented (from, to, length)
    steps; empty for x == y."""
    if x not in tree.nodes or y not in tree.nodes:
        raise KeyError(f"unknown node in path query: {x!r} or {y!r}")
    parent: dict[str, Optional[tuple[str, LevelValue]]] = {x: None}
    frontier = [x]
    while frontier and y not in parent:
        cur = frontier.pop()
        for nxt, length in tree.neighbors(cur).items():
            if nxt not in parent:
                parent[nxt] = (cur, length)
                frontier.append(nxt)
    steps = []
    cur = y
    while parent[cur] is not None:
        prev, length = parent[cur]  # type: ignore[misc]
        steps.append((prev, cur, length))
        cur = prev
    return list(reversed(steps))


def distance(tree: STree, x: str, y: str) -> LevelValue:
    """Leveled sum of the edge lengths along the unique x-y path."""
    return total(length for _, _, length in path(tree, x, y))


def verify_metric(
    tree: STree,
    table: Optional[Mapping[tuple[str, str], LevelValue]] = None,
) -> bool:
    """Audit the metric axioms on all node pairs/triples.

    With no table, distances are computed from the tree (the axioms then
    hold by construction; this is an implementation self-check).  A caller
    may pass its own table to have it audited instead.
    """
    if table is None:
        table = {
            (x, y): distance(tree, x, y)
            for x in tree.nodes
            for y in tree.nodes
        }
    d = lambda x, y: table[(x, y)]
    for x in tree.nodes:
        if d(x, x) != ZERO:
            return False
        for y in tree.nodes:
            if d(x, y) != d(y, x):
                return False
            if x != y and d(x, y) == ZERO:
                return False
    for x, y, z in itertools.product(tree.nodes, repeat=3):
        if not (d(y, z) <= d(y, x) + d(x, z)):
            return False
    return True


def boundary_points(tree: STree) -> set[str]:
    """Nodes with exactly one direction (degree one)."""
    return {n for n in tree.nodes if tree.degree(n) == 1}


def infinite_points(tree: STree) -> set[str]:
    """Nodes every approach to which has infinite total length.

    Only defined for flat trees (all edge lengths at level 0), where path
    length is an extended real: a node qualifies exactly when all of its
    incident edges are infinite (the last step dominates any finite
    prefix).  A one-node tree has no approaches and no infinite points.
    """
    for _, _, length in tree.edges:
        if length.level != 0:
            raise ValueError("infinite points are defined for level-0 trees only")
    out = set()
    for n in tree.nodes:
        incident = tree.neighbors(n)
        if incident and all(l.magnitude.is_infinite for l in incident.values()):
            out.add(n)
    return out


def is_locally_finite(tree: STree) -> bool:
    """Whether boundary points and infinite points coincide (flat trees)."""
    return boundary_points(tree) == infinite_points(tree)


def insert(
    tree: STree, v: str, insertion: STree, attach: Mapping[str, str]
) -> STree:
    """Replace node v by the `insertion` tree.

    `attach` maps chosen nodes of the insertion (each of degree at most
    one there) onto the neighbors of v, bijectively; the edge that ran
    from v toward that neighbor is reattached to the chosen node, keeping
    its length.  Node sets must be disjoint.
    """
    if v not in tree.nodes:
        raise KeyError(f"unknown node {v!r}")
    overlap = set(tree.nodes) & set(insertion.nodes)
    if overlap:
        raise ValueError(f"insertion shares node ids with the tree: {sorted(overlap)}")
    neighbors = tree.neighbors(v)
    if sorted(attach.values()) != sorted(neighbors):
        raise ValueError(
            "attachment must map onto the neighbors of the replaced node, "
            f"{sorted(neighbors)}; got {sorted(attach.values())}"
        )
    for b in attach:
        if b not in insertion.nodes:
            raise KeyError(f"attachment node {b!r} is not in the insertion")
        if insertion.degree(b) > 1:
            raise ValueError(
                f"attachment node {b!r} has degree {insertion.degree(b)} > 1"
            )
    to_node = {direction: b for b, direction in attach.items()}
    nodes = tuple(n for n in tree.nodes if n != v) + insertion.nodes
    edges = [e for e in tree.edges if v not in (e[0], e[1])]
    for direction, length in neighbors.items():
        edges.append((to_node[direction], direction, length))
    edges.extend(insertion.edges)
    return STree(nodes, edges)


def collapse(tree: STree, group: Iterable[str]) -> STree:
    """Contract a connected set of nodes to a single node (named by the
    smallest id in the set); edges inside the set vanish, edges leaving it
    are reattached."""
    chosen = {str(n) for n in group}
    if not chosen:
        raise ValueError("nothing to collapse")
    unknown = chosen - set(tree.nodes)
    if unknown:
        raise KeyError(f"unknown nodes: {sorted(unknown)}")
    # connectivity of the chosen set
    start = next(iter(chosen))
    seen = {start}
    frontier = [start]
    while frontier:
        cur = frontier.pop()
        for nxt in tree.neighbors(cur):
            if nxt in chosen and nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    if seen != chosen:
        raise ValueError("collapse set is not connected")
    merged = min(chosen)
    nodes = [merged] + [n for n in tree.nodes if n not in chosen]
    edges = []
    for a, b, length in tree.edges:
        a2 = merged if a in chosen else a
        b2 = merged if b in chosen else b
        if a2 != b2:
            edges.append((a2, b2, length))
    return STree(nodes, edges)


def _encode(tree: STree, root: str) -> tuple:
    """Rooted canonical encoding with edge-length keys."""

    def key(length: LevelValue) -> tuple:
        return (length.level, length.magnitude)

    def enc(node: str, parent: Optional[str]) -> tuple:
        children = sorted(
            (key(length), enc(nxt, node))
            for nxt, length in tree.neighbors(node).items()
            if nxt != parent
        )
        return tuple(children)

    return enc(root, None)


def canonical_form(tree: STree) -> tuple:
    """Root-independent canonical form: the minimum rooted encoding over
    all choices of root.  Equal forms mean label- and
    orientation-independent equality of shape and lengths."""
    return min(_encode(tree, r) for r in tree.nodes)


def isomorphic(a: STree, b: STree) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# chord families in a disk

@dataclass(frozen=True)
class ChordFamily:
    """Non-crossing weighted chords on marks 1..marks around a circle."""

    marks: int
    chords: tuple[tuple[int, int, LevelValue], ...]

    def __init__(self, marks: int, chords: Iterable[tuple[int, int, LevelValue]]):
        rows = []
        for i, j, w in chords:
            i, j = int(i), int(j)
            if not (1 <= i <= marks and 1 <= j <= marks) or i == j:
                raise ValueError(f"chord ends ({i},{j}) out of range 1..{marks}")
            if not isinstance(w, LevelValue) or w.is_zero:
                raise ValueError(f"chord ({i},{j}) needs a nonzero weight")
            rows.append((min(i, j), max(i, j), w))
        ends = [e for i, j, _ in rows for e in (i, j)]
        if len(set(ends)) != len(ends):
            raise ValueError("chord endpoints must be distinct")
        for (a, b, _), (c, d, _) in itertools.combinations(rows, 2):
            if (a < c < b < d) or (c < a < d < b):
                raise ValueError(f"chords ({a},{b}) and ({c},{d}) cross")
        object.__setattr__(self, "marks", int(marks))
        object.__setattr__(self, "chords", tuple(sorted(rows)))


def _chord_parent(rows: Sequence[tuple[int, int, LevelValue]], idx: int) -> Optional[int]:
    """Index of the smallest chord strictly enclosing rows[idx], if any."""
    a, b, _ = rows[idx]
    best: Optional[int] = None
    for k, (c, d, _) in enumerate(rows):
        if k == idx:
            continue
        if c <= a and b <= d:
            if best is None or (rows[best][1] - rows[best][0]) > (d - c):
                best = k
    return best


def _region_id(row: tuple[int, int, LevelValue]) -> str:
    return f"r{row[0]}_{row[1]}"


def dual_tree(family: ChordFamily) -> tuple[STree, dict[str, tuple]]:
    """The tree of complementary regions of the chord family.

    One node per region — the outer region plus, for each chord, the
    region just inside it — and one edge per chord, joining the regions on
    its two sides with the chord's weight.  Also returns a provenance map:
    node id -> ("outer",) or ("chord", (i, j)).
    """
    rows = family.chords
    names = ["outer"] + [_region_id(r) for r in rows]
    provenance: dict[str, tuple] = {"outer": ("outer",)}
    for r in rows:
        provenance[_region_id(r)] = ("chord", (r[0], r[1]))
    edges = []
    for idx, row in enumerate(rows):
        up = _chord_parent(rows, idx)
        parent_name = "outer" if up is None else _region_id(rows[up])
        edges.append((parent_name, _region_id(row), row[2]))
    return STree(names, edges), provenance
