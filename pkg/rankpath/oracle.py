"""
Brute-force enumeration of partition and lattice-path families

Everything here is plain enumeration: the ground truth the closed
forms are checked against.  Families compose as filters over a finite base
and are generated lazily in lexicographic order.
"""

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional

from rankpath.config import load_settings
from rankpath.errors import EnumerationLimitError, PreconditionError
from rankpath.foata import phi_inv_of_partition
from rankpath.partitions import (
    AtLeast,
    BoxedPartition,
    Finite,
    Interval,
    Partition,
    RankConstraint,
    durfee,
    ranks,
    satisfies,
)
from rankpath.paths import DOWN, UP, StepWord, heights, profile, valley_heights
from rankpath.qseries import QPoly, QTPoly, TruncatedSeries

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- families


@dataclass(frozen=True)
class PartitionsInBox:
    m: int
    n: int


@dataclass(frozen=True)
class PartitionsOfN:
    N: int


@dataclass(frozen=True)
class PartitionsUpTo:
    """All partitions of area <= N, optionally with at most max_parts parts"""

    N: int
    max_parts: Optional[int] = None


@dataclass(frozen=True)
class PathsInGrid:
    """Paths with m U steps and n D steps"""

    m: int
    n: int


@dataclass(frozen=True)
class RankFiltered:
    base: object
    constraint: RankConstraint
    complement: bool = False


@dataclass(frozen=True)
class ValleyFiltered:
    """Paths whose valley heights all satisfy the constraint"""

    base: object
    heights: RankConstraint
    complement: bool = False


@dataclass(frozen=True)
class AboveLine:
    """Paths staying weakly above y = ell (complement: paths that dip below it)"""

    base: object
    ell: int
    complement: bool = False


@dataclass(frozen=True)
class PartsFiltered:
    """Partitions avoiding the listed parts and, when modulus > 0, the listed residues"""

    base: object
    forbidden: frozenset = frozenset()
    modulus: int = 0
    residues: frozenset = frozenset()

    def allows(self, part):
        if part in self.forbidden:
            return False
        return not (self.modulus and part % self.modulus in self.residues)


_PARTITION_BASES = (PartitionsInBox, PartitionsOfN, PartitionsUpTo)


def _root(spec):
    while isinstance(spec, (RankFiltered, ValleyFiltered, AboveLine, PartsFiltered)):
        spec = spec.base
    return spec


def is_path_family(spec):
    return isinstance(_root(spec), PathsInGrid)


# ---------------------------------------------------------------- generators


def _box(rows, width):
    yield ()
    if rows == 0:
        return
    for p in range(1, width + 1):
        for tail in _box(rows - 1, p):
            yield (p,) + tail


def _of_n(total, largest):
    if total == 0:
        yield ()
        return
    for p in range(1, min(total, largest) + 1):
        for tail in _of_n(total - p, p):
            yield (p,) + tail


def _up_to(budget, rows, largest):
    yield ()
    if rows == 0:
        return
    for p in range(1, min(largest, budget) + 1):
        for tail in _up_to(budget - p, rows - 1, p):
            yield (p,) + tail


def _words(ones, twos):
    if ones == 0 and twos == 0:
        yield ()
        return
    if ones:
        for w in _words(ones - 1, twos):
            yield (UP,) + w
    if twos:
        for w in _words(ones, twos - 1):
            yield (DOWN,) + w


def _raw(spec):
    if isinstance(spec, PartitionsInBox):
        if spec.m < 0 or spec.n < 0:
            raise PreconditionError(f"Box sides must be nonnegative, got {spec}")
        return (Partition(p) for p in _box(spec.m, spec.n))
    if isinstance(spec, PartitionsOfN):
        if spec.N < 0:
            raise PreconditionError(f"N must be nonnegative, got {spec.N}")
        return (Partition(p) for p in _of_n(spec.N, spec.N))
    if isinstance(spec, PartitionsUpTo):
        if spec.N < 0:
            raise PreconditionError(f"N must be nonnegative, got {spec.N}")
        rows = spec.N if spec.max_parts is None else spec.max_parts
        return (Partition(p) for p in _up_to(spec.N, rows, spec.N))
    if isinstance(spec, PathsInGrid):
        if spec.m < 0 or spec.n < 0:
            raise PreconditionError(f"Step counts must be nonnegative, got {spec}")
        return (StepWord(w) for w in _words(spec.m, spec.n))
    raise PreconditionError(f"Unknown family {spec!r}")


def _keep(spec, obj):
    if isinstance(spec, RankFiltered):
        return satisfies(obj, spec.constraint) != spec.complement
    if isinstance(spec, ValleyFiltered):
        inside = all(spec.heights.contains(h) for h in valley_heights(obj))
        return inside != spec.complement
    if isinstance(spec, AboveLine):
        above = min(heights(obj)) >= spec.ell
        return above != spec.complement
    if isinstance(spec, PartsFiltered):
        return all(spec.allows(p) for p in obj.parts)
    return True


def _filters(spec):
    chain = []
    while isinstance(spec, (RankFiltered, ValleyFiltered, AboveLine, PartsFiltered)):
        chain.append(spec)
        spec = spec.base
    root = spec
    for f in chain:
        needs_paths = isinstance(f, (ValleyFiltered, AboveLine))
        if needs_paths != isinstance(root, PathsInGrid):
            raise PreconditionError(f"{type(f).__name__} cannot filter {type(root).__name__}")
    return root, list(reversed(chain))


def enumerate_family(spec, cap=None) -> Iterator:
    """Yield every member of the family once, in lexicographic order"""
    root, chain = _filters(spec)
    limit = load_settings().cap if cap is None else cap
    generated = 0
    for obj in _raw(root):
        generated += 1
        if generated > limit:
            raise EnumerationLimitError(f"Enumeration of {spec} exceeded the cap of {limit} objects")
        if all(_keep(f, obj) for f in chain):
            yield obj


def count(spec, cap=None):
    return sum(1 for _ in enumerate_family(spec, cap))


# ---------------------------------------------------------------- generating functions

TSTATS = ("d", "dr", "des", "hdes", "none")


def _marks(obj, tstat):
    """(t-exponent, q-exponent) for one object"""
    if isinstance(obj, Partition):
        if tstat == "d":
            return durfee(obj)[0], obj.area
        if tstat == "dr":
            return durfee(obj)[1], obj.area
        if tstat == "none":
            return 0, obj.area
        raise PreconditionError(f"t-statistic {tstat!r} does not apply to partitions")
    prof = profile(obj)
    if tstat == "des":
        return prof.des, prof.maj
    if tstat == "hdes":
        return prof.hdes, prof.hmaj
    if tstat == "none":
        return 0, prof.maj
    raise PreconditionError(f"t-statistic {tstat!r} does not apply to paths")


def gf(spec, tstat="d", cap=None):
    """sum over the family of t^tstat q^(area or maj); hdes pairs with hmaj"""
    if tstat not in TSTATS:
        raise PreconditionError(f"Unknown t-statistic {tstat!r}; use one of {', '.join(TSTATS)}")
    tally = Counter(_marks(obj, tstat) for obj in enumerate_family(spec, cap))
    buckets = {}
    for (i, j), c in tally.items():
        buckets.setdefault(i, {})[j] = c
    return QTPoly({i: QPoly([b.get(j, 0) for j in range(max(b) + 1)]) for i, b in buckets.items()})


def rank_parity_gf(D, cap=None):
    """sum_{n <= D} sum over the n x n box of t^{#odd ranks} u^{#even ranks} z^n"""
    coeffs = Counter()
    for n in range(D + 1):
        for lam in enumerate_family(PartitionsInBox(n, n), cap):
            r = ranks(lam)
            odd = sum(1 for v in r if v % 2)
            coeffs[(n, odd, len(r) - odd)] += 1
    return TruncatedSeries(("z", "t", "u"), D, coeffs)


# ---------------------------------------------------------------- counting identities


def andrews_bressoud_counts(r, M, N, cap=None):
    """Partitions of N with ranks in [2-r, M-r-2] versus parts not 0, r, -r mod M"""
    if not (0 < r and 2 * r < M):
        raise PreconditionError(f"Need 0 < r < M/2, got r={r}, M={M}")
    if N < 0:
        raise PreconditionError(f"N must be nonnegative, got {N}")
    lo, hi = 2 - r, M - r - 2
    if lo <= hi:
        left = count(RankFiltered(PartitionsOfN(N), Interval(lo, hi)), cap)
    else:
        left = 1 if N == 0 else 0
    right = count(
        PartsFiltered(PartitionsOfN(N), modulus=M, residues=frozenset({0, r % M, (-r) % M})),
        cap,
    )
    return left, right


def cor_ab_counts(ell, N, cap=None):
    """Partitions of N with all ranks >= 1 - ell versus partitions of N with no part ell + 1"""
    if ell < 0:
        raise PreconditionError(f"ell must be nonnegative, got {ell}")
    left = count(RankFiltered(PartitionsOfN(N), AtLeast(1 - ell)), cap)
    right = count(PartsFiltered(PartitionsOfN(N), forbidden=frozenset({ell + 1})), cap)
    return left, right


# ---------------------------------------------------------------- path pairs


def boundary_vertices(parts, rows, width, origin=(0, 0)):
    """Lattice points on the east-then-north boundary path of a diagram in a rows x width box"""
    padded = list(parts) + [0] * (rows - len(parts))
    x0, y0 = origin
    x = 0
    points = [(x0, y0)]
    for y in range(rows):
        target = padded[rows - 1 - y]
        while x < target:
            x += 1
            points.append((x0 + x, y0 + y))
        points.append((x0 + x, y0 + y + 1))
    while x < width:
        x += 1
        points.append((x0 + x, y0 + rows))
    return frozenset(points)


def lgv_pairs_gf(m, n, ell, i, intersecting=True, cap=None):
    """Brute-force area generating function of (alpha, beta) boundary-path pairs

    alpha in the i x (n-i) box runs from (0,0) to (n-i, i); beta in the
    i x (m-i) box is translated to run from (ell,-1) to (m+ell-i, i-1).
    """
    if not 0 <= i <= min(m, n):
        raise PreconditionError(f"Need 0 <= i <= min(m, n), got m={m}, n={n}, i={i}")
    if ell < 0 or m + ell < n:
        raise PreconditionError(f"Need ell >= 0 and m + ell >= n, got m={m}, n={n}, ell={ell}")
    alphas = [
        (a.area, boundary_vertices(a.parts, i, n - i))
        for a in enumerate_family(PartitionsInBox(i, n - i), cap)
    ]
    betas = [
        (b.area, boundary_vertices(b.parts, i, m - i, origin=(ell, -1)))
        for b in enumerate_family(PartitionsInBox(i, m - i), cap)
    ]
    tally = Counter()
    for area_a, verts_a in alphas:
        for area_b, verts_b in betas:
            if bool(verts_a & verts_b) == intersecting:
                tally[area_a + area_b] += 1
    return QPoly([tally.get(j, 0) for j in range(max(tally, default=-1) + 1)])


# ---------------------------------------------------------------- self-conjugate bridge


def _distinct_odd_parts(largest):
    odds = list(range(1, largest + 1, 2))
    for mask in range(1 << len(odds)):
        yield tuple(sorted((odds[k] for k in range(len(odds)) if mask >> k & 1), reverse=True))


def self_conjugate_bridge(m, n, cap=None):
    """Self-conjugate partitions in the box <-> distinct odd parts <= 2 min(m,n) - 1 via valleys"""
    seen = set()
    for lam in enumerate_family(RankFiltered(PartitionsInBox(m, n), Finite(frozenset({0}))), cap):
        path = phi_inv_of_partition(BoxedPartition(lam, m, n))
        prof = profile(path)
        if any(h != -1 for _, h in prof.valleys):
            logger.warning(f"self-conjugate {lam} maps to {path} with a valley off height -1")
            return False
        parts = tuple(sorted((x for x, _ in prof.valleys), reverse=True))
        if any(x % 2 == 0 for x in parts) or sum(parts) != lam.area or parts in seen:
            logger.warning(f"self-conjugate {lam} gives valley positions {parts}")
            return False
        seen.add(parts)
    expected = set(_distinct_odd_parts(2 * min(m, n) - 1))
    return seen == expected
