"""Finite-height leveled measures on unions of closed intervals.

The domain is a finite disjoint union of closed intervals, each with an id
and a rational length.  Measurable test sets are finite unions of
sub-intervals (any mix of open/closed endpoints) and isolated points,
handled exactly by the ``Region`` algebra below.

A measure is a finite list of components, each an ``Atom`` (point mass) or
a ``Density`` (constant rate on a closed sub-interval), every component
carrying a level.  Evaluation returns a ``LevelValue``: the highest level
with positive mass on the set, paired with that mass.  An infinite density
rate flags a component whose every positive-length subset has infinite
mass at its level.

The level structure is exposed through ``support`` (the closed set carrying
mass at or above a level), the slice functions ``nu_k`` / ``nu_hat``, the
recovery round-trip that rebuilds evaluation from the per-level slices, the
gradedness and local-finiteness validators, and ``align``, which deletes
empty levels.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence, Union

from levelring.values import DEFAULT_HEIGHT_BOUND, LevelValue, XRat, ZERO, pair

__all__ = [
    "Atom",
    "Density",
    "Domain",
    "FHMeasure",
    "Region",
    "align",
    "evaluate",
    "grid_sets",
    "is_locally_finite",
    "is_open_graded",
    "nu_hat",
    "nu_k",
    "recover",
    "recover_check",
    "support",
]

Rat = Union[Fraction, int, str]


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# domains and regions

@dataclass(frozen=True)
class Domain:
    """Disjoint union of closed intervals [0, length], keyed by id."""

    intervals: tuple[tuple[str, Fraction], ...]

    def __init__(self, intervals: Iterable[tuple[str, Rat]]):
        rows = tuple((str(i), _frac(l)) for i, l in intervals)
        if not rows:
            raise ValueError("domain needs at least one interval")
        if len({i for i, _ in rows}) != len(rows):
            raise ValueError("interval ids must be unique")
        for _, length in rows:
            if length <= 0:
                raise ValueError("interval lengths must be positive")
        object.__setattr__(self, "intervals", rows)

    def length_of(self, interval: str) -> Fraction:
        for i, length in self.intervals:
            if i == interval:
                return length
        raise KeyError(f"no interval {interval!r} in domain")

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.intervals)


# One piece: (lo, hi, closed_lo, closed_hi).  lo < hi, or lo == hi with both
# ends closed (an isolated point).
Piece = tuple[Fraction, Fraction, bool, bool]


def _piece_contains(p: Piece, x: Fraction) -> bool:
    lo, hi, cl, cr = p
    if x < lo or x > hi:
        return False
    if x == lo and not cl:
        return False
    if x == hi and not cr:
        return False
    return True


def _piece_intersect(p: Piece, q: Piece) -> Optional[Piece]:
    lo = max(p[0], q[0])
    hi = min(p[1], q[1])
    if lo > hi:
        return None
    cl = _piece_contains(p, lo) and _piece_contains(q, lo)
    cr = _piece_contains(p, hi) and _piece_contains(q, hi)
    if lo == hi:
        return (lo, hi, True, True) if cl and cr else None
    return (lo, hi, cl, cr)


def _touches(p: Piece, q: Piece) -> bool:
    """Whether two start-sorted pieces p <= q overlap or abut with no gap."""
    if q[0] < p[1]:
        return True
    if q[0] == p[1]:
        return p[3] or q[2]
    return False


def _norm(pieces: Iterable[Piece]) -> tuple[Piece, ...]:
    todo = sorted(pieces, key=lambda p: (p[0], p[1]))
    out: list[Piece] = []
    for p in todo:
        if p[0] == p[1] and not (p[2] and p[3]):
            continue  # empty
        # Merging can close an endpoint that was open (e.g. absorbing a
        # point at a half-open boundary), which may put the grown piece in
        # contact with an earlier one — so keep folding backwards.
        while out and _touches(out[-1], p):
            a = out.pop()
            lo, cl = (
                (a[0], a[2])
                if a[0] < p[0]
                else (p[0], p[2])
                if p[0] < a[0]
                else (a[0], a[2] or p[2])
            )
            hi, cr = (
                (a[1], a[3])
                if a[1] > p[1]
                else (p[1], p[3])
                if p[1] > a[1]
                else (a[1], a[3] or p[3])
            )
            p = (lo, hi, cl, cr)
        out.append(p)
    return tuple(out)


def _complement(pieces: Sequence[Piece], length: Fraction) -> tuple[Piece, ...]:
    """Complement of a normalized piece list within [0, length]."""
    out: list[Piece] = []
    pos, incl = Fraction(0), True
    for lo, hi, cl, cr in pieces:
        gap_hi_closed = not cl
        if pos < lo or (pos == lo and incl and gap_hi_closed):
            out.append((pos, lo, incl, gap_hi_closed))
        pos, incl = hi, not cr
    if pos < length or (pos == length and incl):
        out.append((pos, length, incl, True))
    return _norm(out)


@dataclass(frozen=True)
class Region:
    """A finite union of sub-intervals and points of a domain, exact.

    Immutable and hashable; supports union/intersection/difference,
    closure, length, membership, and relative-openness tests.  Build one
    with ``Region.of`` or the ``interval``/``points`` helpers.
    """

    domain: Domain
    parts: tuple[tuple[str, tuple[Piece, ...]], ...]

    @staticmethod
    def of(
        domain: Domain,
        spans: Iterable[tuple[str, Rat, Rat, bool, bool]] = (),
        points: Iterable[tuple[str, Rat]] = (),
    ) -> "Region":
        """Build a region from (interval, lo, hi, closed_lo, closed_hi)
        spans and (interval, position) points."""
        by_id: dict[str, list[Piece]] = {}
        for interval, lo, hi, cl, cr in spans:
            lo, hi = _frac(lo), _frac(hi)
            length = domain.length_of(interval)
            if lo > hi:
                raise ValueError(f"reversed endpoints: [{lo}, {hi}]")
            if lo < 0 or hi > length:
                raise ValueError(f"span [{lo},{hi}] outside interval {interval!r}")
            by_id.setdefault(interval, []).append((lo, hi, cl, cr))
        for interval, x in points:
            x = _frac(x)
            if x < 0 or x > domain.length_of(interval):
                raise ValueError(f"point {x} outside interval {interval!r}")
            by_id.setdefault(interval, []).append((x, x, True, True))
        parts = tuple(
            (i, _norm(by_id[i])) for i in domain.ids if by_id.get(i)
        )
        return Region(domain, tuple((i, ps) for i, ps in parts if ps))

    @staticmethod
    def empty(domain: Domain) -> "Region":
        return Region(domain, ())

    @staticmethod
    def whole(domain: Domain) -> "Region":
        return Region.of(
            domain, [(i, 0, l, True, True) for i, l in domain.intervals]
        )

    def _pieces(self, interval: str) -> tuple[Piece, ...]:
        for i, ps in self.parts:
            if i == interval:
                return ps
        return ()

    def _check_same_domain(self, other: "Region") -> None:
        if self.domain != other.domain:
            raise ValueError("regions live on different domains")

    def _rebuild(self, by_id: dict[str, tuple[Piece, ...]]) -> "Region":
        return Region(
            self.domain,
            tuple((i, by_id[i]) for i in self.domain.ids if by_id.get(i)),
        )

    def union(self, other: "Region") -> "Region":
        self._check_same_domain(other)
        return self._rebuild(
            {
                i: _norm(self._pieces(i) + other._pieces(i))
                for i in self.domain.ids
            }
        )

    def intersect(self, other: "Region") -> "Region":
        self._check_same_domain(other)
        out: dict[str, tuple[Piece, ...]] = {}
        for i in self.domain.ids:
            hits = [
                r
                for p in self._pieces(i)
                for q in other._pieces(i)
                if (r := _piece_intersect(p, q)) is not None
            ]
            out[i] = _norm(hits)
        return self._rebuild(out)

    def complement(self) -> "Region":
        return self._rebuild(
            {
                i: _complement(self._pieces(i), self.domain.length_of(i))
                for i in self.domain.ids
            }
        )

    def minus(self, other: "Region") -> "Region":
        return self.intersect(other.complement())

    def closure(self) -> "Region":
        return self._rebuild(
            {
                i: _norm((lo, hi, True, True) for lo, hi, _, _ in self._pieces(i))
                for i in self.domain.ids
            }
        )

    def length(self) -> Fraction:
        return sum(
            (hi - lo for _, ps in self.parts for lo, hi, _, _ in ps), Fraction(0)
        )

    def contains(self, interval: str, x: Rat) -> bool:
        x = _frac(x)
        return any(_piece_contains(p, x) for p in self._pieces(interval))

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def is_closed(self) -> bool:
        return self == self.closure()

    def is_open(self) -> bool:
        """Open in the domain's own (relative) topology."""
        return self.complement().is_closed()

    def __str__(self) -> str:
        def end(piece: Piece) -> str:
            lo, hi, cl, cr = piece
            if lo == hi:
                return f"{{{lo}}}"
            return ("[" if cl else "(") + f"{lo},{hi}" + ("]" if cr else ")")

        return (
            "∅"
            if self.is_empty
            else " ∪ ".join(
                f"{i}:{end(p)}" for i, ps in self.parts for p in ps
            )
        )


def interval(
    domain: Domain,
    iid: str,
    lo: Rat,
    hi: Rat,
    closed_lo: bool = True,
    closed_hi: bool = True,
) -> Region:
    """One sub-interval of the named domain interval, as a Region."""
    return Region.of(domain, [(iid, lo, hi, closed_lo, closed_hi)])


def points(domain: Domain, *pts: tuple[str, Rat]) -> Region:
    """A finite point set, as a Region."""
    return Region.of(domain, points=pts)


# ---------------------------------------------------------------------------
# measures

@dataclass(frozen=True)
class Atom:
    """A point mass: `mass` (possibly infinite) at `position`, at `level`."""

    interval: str
    position: Fraction
    level: int
    mass: XRat

    def __init__(self, interval: str, position: Rat, level: int, mass):
        object.__setattr__(self, "interval", str(interval))
        object.__setattr__(self, "position", _frac(position))
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "mass", XRat(mass))
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if not self.mass:
            raise ValueError("atom mass must be positive")


@dataclass(frozen=True)
class Density:
    """Constant-rate mass on the closed sub-interval [lo, hi], at `level`.

    An infinite rate means every positive-length subset of [lo, hi] has
    infinite mass at this level.
    """

    interval: str
    lo: Fraction
    hi: Fraction
    level: int
    rate: XRat

    def __init__(self, interval: str, lo: Rat, hi: Rat, level: int, rate):
        object.__setattr__(self, "interval", str(interval))
        object.__setattr__(self, "lo", _frac(lo))
        object.__setattr__(self, "hi", _frac(hi))
        object.__setattr__(self, "level", int(level))
        object.__setattr__(self, "rate", XRat(rate))
        if self.level < 0:
            raise ValueError("level must be nonnegative")
        if self.lo >= self.hi:
            raise ValueError("density needs lo < hi")
        if not self.rate:
            raise ValueError("density rate must be positive")


Component = Union[Atom, Density]


@dataclass(frozen=True)
class FHMeasure:
    """A finite-height measure: a domain plus atom/density components."""

    domain: Domain
    components: tuple[Component, ...]
    height_bound: int = DEFAULT_HEIGHT_BOUND

    def __init__(
        self,
        domain: Domain,
        components: Iterable[Component] = (),
        height_bound: int = DEFAULT_HEIGHT_BOUND,
    ):
        comps = tuple(components)
        for c in comps:
            if not isinstance(c, (Atom, Density)):
                raise TypeError(f"not a measure component: {c!r}")
            length = domain.length_of(c.interval)
            if isinstance(c, Atom):
                if not (0 <= c.position <= length):
                    raise ValueError(f"atom position {c.position} outside interval")
            else:
                if c.lo < 0 or c.hi > length:
                    raise ValueError(f"density [{c.lo},{c.hi}] outside interval")
            if c.level >= height_bound:
                raise ValueError(
                    f"component level {c.level} exceeds height bound {height_bound}"
                )
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "height_bound", int(height_bound))

    @property
    def height(self) -> Optional[int]:
        """Largest level carrying a component, or None for the zero measure."""
        return max((c.level for c in self.components), default=None)

    def levels(self) -> tuple[int, ...]:
        return tuple(sorted({c.level for c in self.components}))


def _level_mass(mu: FHMeasure, k: int, region: Region) -> XRat:
    """Total level-k mass of the region: atom masses plus rate x length."""
    out = XRat(0)
    for c in mu.components:
        if c.level != k:
            continue
        if isinstance(c, Atom):
            if region.contains(c.interval, c.position):
                out = out + c.mass
        else:
            overlap = region.intersect(
                interval(mu.domain, c.interval, c.lo, c.hi)
            ).length()
            if overlap > 0:
                out = out + c.rate * overlap
    return out


def evaluate(mu: FHMeasure, region: Region) -> LevelValue:
    """Measure of the region: its highest level with positive mass, paired
    with that mass; ZERO when nothing meets the region."""
    if region.domain != mu.domain:
        raise ValueError("region is not on this measure's domain")
    for k in sorted({c.level for c in mu.components}, reverse=True):
        m = _level_mass(mu, k, region)
        if m:
            return pair(k, m)
    return ZERO


def nu_k(mu: FHMeasure, k: int, region: Region) -> XRat:
    """Level-k reading of the measure: the mass when the value sits exactly
    at level k, infinite when it sits higher, zero when lower or ZERO."""
    if k < 0:
        raise ValueError("level must be nonnegative")
    v = evaluate(mu, region)
    if v.is_zero or v.level < k:
        return XRat(0)
    if v.level == k:
        return v.magnitude
    return XRat("inf")


def support(mu: FHMeasure, k: int) -> Region:
    """Closed region carrying components of level >= k."""
    spans = [
        (c.interval, c.lo, c.hi, True, True)
        for c in mu.components
        if isinstance(c, Density) and c.level >= k
    ]
    pts = [
        (c.interval, c.position)
        for c in mu.components
        if isinstance(c, Atom) and c.level >= k
    ]
    return Region.of(mu.domain, spans, pts)


def nu_hat(mu: FHMeasure, k: int, region: Region) -> XRat:
    """Level-k mass of the part of the region in support(k) and clear of
    support(k+1) — the level-k slice used by the recovery formula."""
    stratum = support(mu, k).minus(support(mu, k + 1))
    return _level_mass(mu, k, region.intersect(stratum))


def recover(mu: FHMeasure) -> FHMeasure:
    """The measure rebuilt from the per-level slices.

    Each level-k component is restricted to the part of its carrier clear
    of support(k+1): atoms inside the higher support are dropped, densities
    are clipped to what survives (up to endpoints, which carry no density
    mass).  For gradable measures this evaluates identically to mu.
    """
    comps: list[Component] = []
    for k in sorted({c.level for c in mu.components}):
        higher = support(mu, k + 1)
        for c in mu.components:
            if c.level != k:
                continue
            if isinstance(c, Atom):
                if not higher.contains(c.interval, c.position):
                    comps.append(c)
            else:
                kept = interval(mu.domain, c.interval, c.lo, c.hi).minus(higher)
                for lo, hi, _, _ in kept._pieces(c.interval):
                    if lo < hi:
                        comps.append(Density(c.interval, lo, hi, k, c.rate))
    return FHMeasure(mu.domain, comps, mu.height_bound)


def recover_check(
    mu: FHMeasure,
    regions: Optional[Iterable[Region]] = None,
    slice_mass: Optional[Callable[[int, Region], XRat]] = None,
) -> bool:
    """Verify the recovery formula on a family of test regions.

    For each region E the formula reads: with m_k the level-k slice mass of
    E minus support(k+1), the measure is (j, m_j) for the largest j with
    m_j > 0, and ZERO if there is none.  `slice_mass` defaults to nu_hat
    and exists so tests can inject a corrupted slice table.
    """
    if regions is None:
        regions = grid_sets(mu)
    if slice_mass is None:
        slice_mass = lambda k, region: nu_hat(mu, k, region)
    levels = sorted({c.level for c in mu.components})
    for region in regions:
        best: LevelValue = ZERO
        for k in levels:
            m = slice_mass(k, region.minus(support(mu, k + 1)))
            if m:
                best = pair(k, m)
        if best != evaluate(mu, region):
            return False
    return True


def is_open_graded(mu: FHMeasure) -> bool:
    """Whether the level grading is honest at every point.

    The one representable failure is a level-j atom sitting inside the
    closed support of strictly higher levels with no higher atom at its
    exact position: the singleton there evaluates to level j, but the
    level-j slice excludes the higher support, so recovery loses the mass.
    Two shadowing cases are safe and allowed: a density carrier buried
    under higher support (positive-length sets there already read a higher
    level, zero-length sets read no density), and an atom directly under a
    higher atom (every set containing the point reads the higher atom, so
    the lower mass never surfaces in evaluation at all).  On this
    representation the predicate is exactly equivalent to the recovery
    formula reproducing evaluation on every region.
    """
    for c in mu.components:
        if not isinstance(c, Atom):
            continue
        if not support(mu, c.level + 1).contains(c.interval, c.position):
            continue
        stacked = any(
            isinstance(d, Atom)
            and d.level > c.level
            and d.interval == c.interval
            and d.position == c.position
            for d in mu.components
        )
        if not stacked:
            return False
    return True


def is_locally_finite(mu: FHMeasure) -> bool:
    """Whether every point has a finite-measure neighborhood.

    Infinite mass at level k is tolerable only adjacent to level-(k+1)
    support: an infinite atom clear of the higher support fails, and an
    infinite density whose closed carrier misses the higher support fails.
    """
    for c in mu.components:
        if isinstance(c, Atom):
            if c.mass.is_infinite and not support(mu, c.level + 1).contains(
                c.interval, c.position
            ):
                return False
        else:
            if c.rate.is_infinite:
                carrier = interval(mu.domain, c.interval, c.lo, c.hi)
                if carrier.intersect(support(mu, c.level + 1)).is_empty:
                    return False
    return True


def align(mu: FHMeasure) -> FHMeasure:
    """Delete empty levels: remap the occupied levels, in order, onto
    0..m-1.  Idempotent; a measure already shaped this way is returned
    unchanged."""
    rank = {lev: i for i, lev in enumerate(mu.levels())}
    if all(rank[lev] == lev for lev in rank):
        return mu
    comps: list[Component] = []
    for c in mu.components:
        if isinstance(c, Atom):
            comps.append(Atom(c.interval, c.position, rank[c.level], c.mass))
        else:
            comps.append(Density(c.interval, c.lo, c.hi, rank[c.level], c.rate))
    return FHMeasure(mu.domain, comps, mu.height_bound)


def grid_sets(mu: FHMeasure, midpoints: bool = True) -> list[Region]:
    """Test family for round-trip checks: per interval, all sub-spans with
    endpoints on the grid of component endpoints (plus midpoints), in all
    four open/closed shapes, together with grid singletons, the empty
    region, and the whole domain."""
    out: list[Region] = [Region.empty(mu.domain), Region.whole(mu.domain)]
    for iid, length in mu.domain.intervals:
        marks = {Fraction(0), length}
        for c in mu.components:
            if c.interval != iid:
                continue
            if isinstance(c, Atom):
                marks.add(c.position)
            else:
                marks.update((c.lo, c.hi))
        grid = sorted(marks)
        if midpoints:
            grid = sorted(
                set(grid)
                | {(a + b) / 2 for a, b in zip(grid, grid[1:])}
            )
        for x in grid:
            out.append(points(mu.domain, (iid, x)))
        for a, b in itertools.combinations(grid, 2):
            for cl, cr in ((True, True), (False, False), (True, False), (False, True)):
                out.append(interval(mu.domain, iid, a, b, cl, cr))
    return out
