"""
Partitions, their classical statistics and the boundary-word encoding in a box
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Iterable

from rankpath.errors import BoxViolationError, InvalidPartitionError, PreconditionError
from rankpath.paths import DOWN, UP, StepWord, parse_word


def _is_int(value):
    # bool is an int subclass; floats and strings are never coerced
    return isinstance(value, int) and not isinstance(value, bool)


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing tuple of positive parts, largest first"""

    parts: tuple = ()

    def __post_init__(self):
        try:
            parts = tuple(self.parts)
        except TypeError as e:
            raise InvalidPartitionError(f"Parts must be a sequence of integers, got {self.parts!r}") from e
        if not all(_is_int(p) for p in parts):
            raise InvalidPartitionError(f"Parts must be integers, got {list(parts)!r}")
        if any(p < 1 for p in parts):
            raise InvalidPartitionError(f"Parts must be positive, got {list(parts)}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartitionError(f"Parts must be weakly decreasing, got {list(parts)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts):
        return cls(tuple(parts))

    @classmethod
    def from_json(cls, data):
        """Build from a JSON array of parts"""
        if not isinstance(data, (list, tuple)):
            raise InvalidPartitionError(f"A partition is a JSON array of parts, got {data!r}")
        return cls(tuple(data))

    def to_json(self):
        return list(self.parts)

    @property
    def area(self):
        return sum(self.parts)

    @property
    def length(self):
        """Number of parts k"""
        return len(self.parts)

    def part(self, i):
        """lambda_i, 1-based, 0 beyond the last part"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __bool__(self):
        return bool(self.parts)

    def __str__(self):
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class BoxedPartition:
    """A partition together with an m x n bounding box (m rows, n columns)"""

    partition: Partition
    m: int
    n: int

    def __post_init__(self):
        if not isinstance(self.partition, Partition):
            object.__setattr__(self, "partition", Partition(tuple(self.partition)))
        if not (_is_int(self.m) and _is_int(self.n)):
            raise InvalidPartitionError(f"Box sides must be integers, got m={self.m!r}, n={self.n!r}")
        if self.m < 0 or self.n < 0:
            raise BoxViolationError(f"Box sides must be nonnegative, got m={self.m}, n={self.n}")
        lam = self.partition
        if lam.length > self.m or (lam and lam.parts[0] > self.n):
            raise BoxViolationError(f"Partition {lam} does not fit in a {self.m}x{self.n} box")

    @classmethod
    def from_json(cls, data):
        """Build from {"parts": [...], "m": m, "n": n}"""
        try:
            return cls(Partition.from_json(data["parts"]), data["m"], data["n"])
        except (KeyError, TypeError) as e:
            raise InvalidPartitionError(
                f'A boxed partition is {{"parts": [...], "m": m, "n": n}}, got {data!r}'
            ) from e

    def to_json(self):
        return {"parts": self.partition.to_json(), "m": self.m, "n": self.n}

    def transposed(self):
        """The conjugate partition in the n x m box"""
        return BoxedPartition(conjugate(self.partition), self.n, self.m)


def conjugate(lam):
    """Transpose the Young diagram"""
    parts = lam.parts
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in parts if p >= j) for j in range(1, parts[0] + 1)))


def durfee(lam):
    """Return (d, dr): Durfee square side and Durfee rectangle height"""
    parts = lam.parts
    d = sum(1 for i, p in enumerate(parts, start=1) if p >= i)
    dr = sum(1 for i, p in enumerate(parts, start=1) if p >= i + 1)
    return d, dr


def ranks(lam):
    """Successive ranks r_i = lambda_i - lambda'_i for i <= d"""
    d, _ = durfee(lam)
    conj = conjugate(lam)
    return tuple(lam.part(i) - conj.part(i) for i in range(1, d + 1))


@dataclass(frozen=True)
class HookDecomposition:
    """Arm lengths a and leg lengths b of the principal hooks, indexed bottom-up"""

    a: tuple
    b: tuple

    @property
    def d(self):
        return len(self.a)

    @property
    def hooks(self):
        return tuple(x + y for x, y in zip(self.a, self.b))

    def to_json(self):
        return {"a": list(self.a), "b": list(self.b)}


def hook_decomposition(lam):
    """a_{d+1-j} = lambda_j - j + 1 and b_{d+1-j} = lambda'_j - j"""
    d, _ = durfee(lam)
    conj = conjugate(lam)
    a = [0] * d
    b = [0] * d
    for j in range(1, d + 1):
        a[d - j] = lam.part(j) - j + 1
        b[d - j] = conj.part(j) - j
    return HookDecomposition(tuple(a), tuple(b))


def to_word(bp):
    """Boundary word of the diagram, traced from the lower-left corner of the box"""
    lam = bp.partition
    steps = []
    x = 0
    for i in range(bp.m, 0, -1):
        row = lam.part(i)
        steps.extend([DOWN] * (row - x))
        steps.append(UP)
        x = row
    steps.extend([DOWN] * (bp.n - x))
    return StepWord(tuple(steps))


def from_word(w):
    """Decode a boundary word; each 1 contributes a part equal to the 2s before it"""
    w = parse_word(w)
    twos = 0
    rows = []
    for s in w:
        if s == DOWN:
            twos += 1
        else:
            rows.append(twos)
    parts = tuple(p for p in reversed(rows) if p > 0)
    return BoxedPartition(Partition(parts), w.m, w.n)


class RankConstraint(ABC):
    """Membership predicate on successive ranks"""

    @abstractmethod
    def contains(self, r):
        """True iff r is allowed"""

    def __contains__(self, r):
        return self.contains(r)

    def shifted_negated(self):
        """The valley-height set -S-1 as a predicate"""
        return lambda h: self.contains(-h - 1)


@dataclass(frozen=True)
class AtLeast(RankConstraint):
    b: int

    def contains(self, r):
        return r >= self.b

    def __str__(self):
        return f">={self.b}"


@dataclass(frozen=True)
class AtMost(RankConstraint):
    b: int

    def contains(self, r):
        return r <= self.b

    def __str__(self):
        return f"<={self.b}"


@dataclass(frozen=True)
class Interval(RankConstraint):
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionError(f"Interval needs lo <= hi, got [{self.lo},{self.hi}]")

    def contains(self, r):
        return self.lo <= r <= self.hi

    def __str__(self):
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class Finite(RankConstraint):
    values: frozenset

    def __post_init__(self):
        values = frozenset(int(v) for v in self.values)
        if not values:
            raise PreconditionError("A finite rank set must be nonempty")
        object.__setattr__(self, "values", values)

    def contains(self, r):
        return r in self.values

    def __str__(self):
        return "{" + ",".join(str(v) for v in sorted(self.values)) + "}"


def parse_constraint(text):
    """Parse '>=b', '<=b', '[lo,hi]' or '{v1,v2,...}'"""
    s = text.replace(" ", "")
    try:
        if s.startswith(">="):
            return AtLeast(int(s[2:]))
        if s.startswith("<="):
            return AtMost(int(s[2:]))
        if s.startswith("[") and s.endswith("]"):
            lo, hi = s[1:-1].split(",")
            return Interval(int(lo), int(hi))
        if s.startswith("{") and s.endswith("}"):
            return Finite(frozenset(int(v) for v in s[1:-1].split(",") if v))
    except ValueError as e:
        raise PreconditionError(f"Cannot parse rank constraint {text!r}") from e
    raise PreconditionError(f"Cannot parse rank constraint {text!r}")


def satisfies(lam, constraint):
    """True iff every successive rank of lam lies in the constraint"""
    return all(constraint.contains(r) for r in ranks(lam))


def coerce_partition(value: "Partition | Iterable[int]"):
    """Accept a Partition or a sequence of parts"""
    return value if isinstance(value, Partition) else Partition(tuple(value))
