"""Seeded random generators shared by the measure, track, and acceptance
tests."""

import itertools
from fractions import Fraction
from random import Random

from levelring.measures import Atom, Density, Domain, FHMeasure, support
from levelring.tracks import TrainTrack
from levelring.values import XRat
from levelring.vectors import Monomial, monomial

LENGTHS = [Fraction(1), Fraction(2), Fraction(3, 2)]


def _grid_point(rng: Random, length: Fraction) -> Fraction:
    return length * Fraction(rng.randint(0, 8), 8)


def _finite_mass(rng: Random) -> XRat:
    return XRat(Fraction(rng.randint(1, 5), rng.randint(1, 3)))


def random_components(rng: Random, dom: Domain, max_level: int, allow_infinite: bool):
    out = []
    for _ in range(rng.randint(0, 5)):
        iid, length = dom.intervals[rng.randrange(len(dom.intervals))]
        level = rng.randint(0, max_level)
        infinite = allow_infinite and rng.random() < 0.15
        if rng.random() < 0.45:
            mass = XRat("inf") if infinite else _finite_mass(rng)
            out.append(Atom(iid, _grid_point(rng, length), level, mass))
        else:
            a = length * Fraction(rng.randint(0, 7), 8)
            b = length * Fraction(rng.randint(1, 8), 8)
            if a == b:
                continue
            if a > b:
                a, b = b, a
            rate = XRat("inf") if infinite else _finite_mass(rng)
            out.append(Density(iid, a, b, level, rate))
    return out


def random_domain(rng: Random) -> Domain:
    return Domain(
        [(f"I{i}", rng.choice(LENGTHS)) for i in range(rng.randint(1, 2))]
    )


def random_measure(rng: Random, max_level: int = 2, allow_infinite: bool = True) -> FHMeasure:
    """Any measure; atoms may land inside higher supports."""
    dom = random_domain(rng)
    return FHMeasure(dom, random_components(rng, dom, max_level, allow_infinite))


def random_open_graded(rng: Random, max_level: int = 2, allow_infinite: bool = True) -> FHMeasure:
    """A measure whose atoms all sit clear of strictly higher supports.

    Drawn like random_measure, then repaired from the top level down:
    an atom buried under the (already settled) higher levels is dropped.
    """
    dom = random_domain(rng)
    drafts = random_components(rng, dom, max_level, allow_infinite)
    densities = [c for c in drafts if isinstance(c, Density)]
    kept = list(densities)
    for atom in sorted(
        (c for c in drafts if isinstance(c, Atom)), key=lambda c: -c.level
    ):
        probe = FHMeasure(dom, kept)
        if not support(probe, atom.level + 1).contains(atom.interval, atom.position):
            kept.append(atom)
    return FHMeasure(dom, kept)


def random_track_family(rng: Random, max_switches: int = 3):
    """A random track plus a level-0 monomial family that balances every
    switch identically in the parameter.

    Switches are built balanced by construction: one side draws ends from
    segments with spare end-slots, the other side gets fresh segments
    whose per-degree coefficient sums mirror the first (occasionally split
    in two).  Leftover end-slots become free ends.
    """
    counter = itertools.count()
    entries: dict[str, Monomial] = {}
    slots: dict[str, int] = {}

    def fresh(coeff: Fraction, degree: int) -> str:
        sid = f"s{next(counter):02d}"
        entries[sid] = monomial(0, coeff, degree)
        slots[sid] = 2
        return sid

    for _ in range(rng.randint(1, 3)):
        fresh(Fraction(rng.randint(1, 5)), rng.randint(0, 3))
    switches = []
    for _ in range(rng.randint(1, max_switches)):
        side_a = []
        for _ in range(rng.randint(1, 3)):
            avail = [s for s in sorted(slots) if slots[s] > 0]
            if not avail:
                break
            s = rng.choice(avail)
            side_a.append(s)
            slots[s] -= 1
        if not side_a:
            break
        sums: dict[int, Fraction] = {}
        for s in side_a:
            m = entries[s]
            sums[m.degree] = sums.get(m.degree, Fraction(0)) + m.coeff
        side_b = []
        for degree in sorted(sums):
            c = sums[degree]
            if rng.random() < 0.3:
                part = c * Fraction(rng.randint(1, 3), 4)
                side_b += [fresh(part, degree), fresh(c - part, degree)]
            else:
                side_b.append(fresh(c, degree))
        for s in side_b:
            slots[s] -= 1
        switches.append((side_a, side_b))
    ids = sorted(entries)
    track = TrainTrack(ids, switches)
    return track, tuple(entries[s] for s in ids)


# --- trees and chord families -----------------------------------------------

from levelring.trees import ChordFamily, STree
from levelring.values import INF, pair


def _edge_length(rng: Random, levels=(0, 1, 2), allow_infinite=True):
    level = rng.choice(levels)
    if allow_infinite and rng.random() < 0.2:
        return pair(level, INF)
    return pair(level, Fraction(rng.randint(1, 9), rng.randint(1, 4)))


def random_tree(rng: Random, max_nodes=8, levels=(0, 1, 2), allow_infinite=True,
                prefix="n") -> STree:
    """Random attachment tree: node i hangs off a uniformly chosen earlier
    node, so every shape on <= max_nodes nodes is reachable."""
    n = rng.randint(1, max_nodes)
    names = [f"{prefix}{i}" for i in range(n)]
    edges = [
        (names[rng.randrange(i)], names[i], _edge_length(rng, levels, allow_infinite))
        for i in range(1, n)
    ]
    return STree(names, edges)


def random_flat_tree(rng: Random, max_nodes=8) -> STree:
    """All edge lengths at level 0 (the extended-real reading)."""
    return random_tree(rng, max_nodes, levels=(0,))


def random_chords(rng: Random, max_chords=6) -> ChordFamily:
    """Random non-crossing matching: repeatedly pair two marks that are
    adjacent among the unpaired ones (every non-crossing matching arises
    this way)."""
    m = rng.randint(1, max_chords)
    avail = list(range(1, 2 * m + 1))
    chords = []
    while avail:
        i = rng.randrange(len(avail) - 1)
        chords.append((avail[i], avail[i + 1], _edge_length(rng)))
        del avail[i : i + 2]
    return ChordFamily(2 * m, chords)


def random_insertion(rng: Random, tree: STree):
    """Pick a node of `tree` and build a disjoint insertion tree with
    exactly degree-many attachment leaves; returns (v, insertion, attach)."""
    v = rng.choice(tree.nodes)
    deg = tree.degree(v)
    if deg == 0:
        return v, random_tree(rng, max_nodes=4, prefix="ins"), {}
    if deg == 1 and rng.random() < 0.3:
        sub = STree(["ins0"])
        return v, sub, {"ins0": next(iter(tree.neighbors(v)))}
    if deg <= 2:
        # a path; its two ends serve as attachment nodes
        k = rng.randint(2, 4)
        names = [f"ins{i}" for i in range(k)]
        edges = [(names[i], names[i + 1], _edge_length(rng)) for i in range(k - 1)]
        sub = STree(names, edges)
        ends = [names[0], names[-1]][:deg]
    else:
        # a star with one leaf per direction
        names = ["insc"] + [f"ins{i}" for i in range(deg)]
        edges = [("insc", leaf, _edge_length(rng)) for leaf in names[1:]]
        sub = STree(names, edges)
        ends = names[1:]
    attach = dict(zip(ends, sorted(tree.neighbors(v))))
    return v, sub, attach
