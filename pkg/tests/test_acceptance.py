"""Acceptance gate: one test per shipping criterion.

Run with ``pytest tests/test_acceptance.py -v`` to get one pass/fail line
per criterion.  Everything here is exact arithmetic — no tolerances.
"""

import itertools
from fractions import Fraction
from random import Random

from levelring.measures import (
    Region,
    align,
    evaluate,
    grid_sets,
    is_open_graded,
    recover,
    recover_check,
    support,
)
from levelring.tracks import (
    TrainTrack,
    enumerate_strata,
    height_filtration,
    is_contiguous,
    is_proximal,
    validate,
)
from levelring.trees import collapse, distance, dual_tree, insert, isomorphic, path, verify_metric
from levelring.values import (
    INF,
    XRat,
    ZERO,
    compare,
    from_sequence,
    pair,
    to_sequence,
)
from levelring.vectors import ProjClass, limit_points, monomial, normalized_limit

from helpers import (
    random_chords,
    random_insertion,
    random_open_graded,
    random_track_family,
    random_tree,
)
from test_trees import common_prefix, separating_distance

XY = TrainTrack(["x", "y"], [(["x", "y"], ["y"])])
SPIRAL = TrainTrack(["x", "y", "z", "w"], [(["x", "y"], ["w"]), (["w"], ["y", "z"])])
MERGED = TrainTrack(["x", "y", "z"], [(["x", "y"], ["y", "z"])])


def test_criterion_1_semiring_golden_table():
    # the anchor identity
    assert pair(0, 1) + pair(1, 1) == pair(1, 1)
    # addition conventions: same level adds, lower level is absorbed,
    # zero is neutral, infinity absorbs within its level
    assert pair(0, 2) + pair(0, 3) == pair(0, 5)
    assert pair(2, 5) + pair(0, "1/7") == pair(2, 5)
    assert ZERO + pair(3, "2/3") == pair(3, "2/3")
    assert pair(1, INF) + pair(1, 5) == pair(1, INF)
    assert pair(1, INF) + pair(2, 4) == pair(2, 4)
    assert ZERO + ZERO == ZERO
    # multiplication conventions: levels add, magnitudes multiply,
    # zero annihilates, (0,1) is the identity
    assert pair(1, 2) * pair(2, "3/2") == pair(3, 3)
    assert pair(0, 1) * pair(4, "7/5") == pair(4, "7/5")
    assert ZERO * pair(3, INF) == ZERO
    assert pair(2, INF) * pair(1, 3) == pair(3, INF)
    # scalar action touches only the magnitude
    assert pair(2, 6).scale(XRat("1/3")) == pair(2, 2)
    assert pair(2, 6).scale(INF) == pair(2, INF)
    # order: zero least, then level-lexicographic
    assert ZERO < pair(0, "1/100") < pair(0, INF) < pair(1, "1/100") < pair(1, INF)
    # the non-cancellative witness
    assert pair(1, 1) + pair(0, 5) == pair(1, 1) + pair(0, 7)


def _random_value(rng, height):
    if rng.random() < 0.1:
        return ZERO
    level = rng.randrange(height)
    if rng.random() < 0.2:
        return pair(level, INF)
    return pair(level, Fraction(rng.randint(1, 60), rng.randint(1, 12)))


def test_criterion_2_sequence_embedding_preserves_order():
    rng = Random(160816)
    height = 16
    for _ in range(1000):
        a, b = _random_value(rng, height), _random_value(rng, height)
        seq_a, seq_b = to_sequence(a, height), to_sequence(b, height)
        want = compare(a, b)
        got = (seq_a > seq_b) - (seq_a < seq_b)  # lexicographic on entries
        assert got == want, (a, b)
        assert from_sequence(seq_a) == a
        assert from_sequence(seq_b) == b
    # identity on the sequence side, over every canonical shape
    for _ in range(300):
        n = rng.randint(1, height)
        shape = rng.randrange(4)
        if shape == 0:
            seq = [XRat(0)] * n
        elif shape == 1:
            k = rng.randrange(n)
            seq = [INF] * k + [XRat(rng.randint(1, 9))] + [XRat(0)] * (n - k - 1)
        elif shape == 2:
            j = rng.randint(1, n)
            seq = [INF] * j + [XRat(0)] * (n - j)
        else:
            seq = [INF] * n
        assert to_sequence(from_sequence(seq), n) == tuple(seq)


def test_criterion_3_spiral_track_reproduction():
    weights = (pair(0, 1), pair(1, 1), pair(0, 1), pair(1, 1))
    assert validate(SPIRAL, weights) == []
    family = (monomial(0, 1, 0), monomial(0, 1, 1), monomial(0, 1, 0))
    assert normalized_limit(family, 1) == (ZERO, pair(0, 1), ZERO)
    assert normalized_limit(family, 0) == (pair(0, 1), pair(0, INF), pair(0, 1))


def test_criterion_4_one_switch_strata_and_contiguity():
    strata = enumerate_strata(XY, 2)
    feasible = {s.pattern for s in strata if s.feasible}
    zero_axis = {(None, None), (None, (0, "fin")), (None, (0, "inf"))}
    lower_x = {((0, a), (1, b)) for a in ("fin", "inf") for b in ("fin", "inf")}
    equal_with_infinite_y = {((0, "fin"), (0, "inf")), ((0, "inf"), (0, "inf"))}
    assert feasible == zero_axis | lower_x | equal_with_infinite_y

    verdicts = {
        (ZERO, ZERO): True,
        (ZERO, pair(0, 1)): True,
        (ZERO, pair(0, INF)): True,
        (pair(0, 1), pair(1, 2)): True,
        (pair(0, 1), pair(1, INF)): False,
        (pair(0, 1), pair(0, INF)): True,
        (pair(0, INF), pair(0, INF)): True,
        (pair(0, INF), pair(1, 2)): True,
        (pair(0, INF), pair(1, INF)): False,
    }
    for weights, want in verdicts.items():
        assert is_contiguous(XY, weights) == want, weights


def test_criterion_5_two_limit_classes():
    family = (monomial(1, 1, 1), monomial(1, 1, 0))
    classes = limit_points(family)
    assert classes == [
        ProjClass((pair(1, 1), pair(0, INF))),
        ProjClass((pair(1, INF), pair(1, 1))),
    ]


def test_criterion_6_measure_suite():
    rng = Random(60816)
    for _ in range(200):
        mu = random_open_graded(rng, max_level=3)
        assert is_open_graded(mu)
        sets = grid_sets(mu, midpoints=False)

        # finite additivity on the refinement grid
        assert evaluate(mu, Region.empty(mu.domain)) == ZERO
        pairs_checked = 0
        for a, b in itertools.combinations(sets, 2):
            if not a.intersect(b).is_empty:
                continue
            assert evaluate(mu, a.union(b)) == evaluate(mu, a) + evaluate(mu, b)
            pairs_checked += 1
            if pairs_checked >= 15:
                break

        # slice-table recovery round trip
        assert recover_check(mu, regions=sets)
        rebuilt = recover(mu)
        for region in sets:
            assert evaluate(rebuilt, region) == evaluate(mu, region)

        # nested closed supports
        top = mu.height if mu.height is not None else 0
        for k in range(top + 2):
            deeper, shallower = support(mu, k + 1), support(mu, k)
            assert deeper.minus(shallower).is_empty
            assert shallower.is_closed()

        # level alignment is idempotent and gap-free
        assert align(align(mu)) == align(mu)
        assert align(mu).levels() == tuple(range(len(mu.levels())))


def test_criterion_7_filtration_suite():
    assert height_filtration(
        MERGED, (monomial(0, 1, 0), monomial(0, 1, 1), monomial(0, 1, 0))
    ) == (pair(0, 1), pair(1, 1), pair(0, 1))
    rng = Random(70816)
    for _ in range(100):
        track, family = random_track_family(rng)
        weights = height_filtration(track, family)
        assert validate(track, weights) == []
        assert is_proximal(weights)


def test_criterion_8_tree_suite():
    rng = Random(80816)
    for _ in range(200):
        assert verify_metric(random_tree(rng, max_nodes=12))
    for _ in range(100):
        family = random_chords(rng, max_chords=10)
        tree, regions = dual_tree(family)
        for r1, r2 in itertools.combinations(tree.nodes, 2):
            assert distance(tree, r1, r2) == separating_distance(family, regions, r1, r2)
    for _ in range(100):
        tree = random_tree(rng)
        v, sub, attach = random_insertion(rng, tree)
        grown = insert(tree, v, sub, attach)
        assert isomorphic(collapse(grown, sub.nodes), tree)


def test_criterion_9_order_tree_axioms():
    rng = Random(90816)
    for _ in range(40):
        tree, _ = dual_tree(random_chords(rng))
        for x, y, z in itertools.product(tree.nodes, repeat=3):
            # the common prefix of two runs from x is itself a run from x
            prefix = common_prefix(path(tree, x, y), path(tree, x, z))
            w = prefix[-1][1] if prefix else x
            assert prefix == path(tree, x, w)
            # runs meeting only at y concatenate to a run
            first, second = path(tree, x, y), path(tree, y, z)
            touched_first = {x} | {b for _, b, _ in first}
            touched_second = {y} | {b for _, b, _ in second}
            if touched_first & touched_second == {y}:
                assert first + second == path(tree, x, z)
