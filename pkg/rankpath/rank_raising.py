"""
The minimum-rank-raising map f, its inverse g, and the boxed iterates

f removes a part i (i = last index where the minimum rank is attained) and
adds a part i-1 to the conjugate.  theta = f^{ell+1} moves partitions with
some rank <= -ell from the m x n box into the (m-ell-1) x (n+ell+1) box.
"""

import logging
import math
from dataclasses import dataclass

from rankpath.errors import DomainError
from rankpath.foata import phi, phi_inv_of_partition
from rankpath.greene_kleitman import gamma, gamma_iter
from rankpath.partitions import BoxedPartition, Partition, conjugate, durfee, ranks, to_word

logger = logging.getLogger(__name__)


def tau(lam):
    """Minimum successive rank; +inf for the empty partition"""
    r = ranks(lam)
    return min(r) if r else math.inf


def rank_index(lam):
    """i(lambda): largest index attaining the minimum rank"""
    r = ranks(lam)
    if not r:
        raise DomainError("The empty partition has no ranks")
    low = min(r)
    return max(i for i, v in enumerate(r, start=1) if v == low)


def _remove_part(parts, value):
    parts = list(parts)
    try:
        parts.remove(value)
    except ValueError as e:
        raise DomainError(f"No part equal to {value} in {Partition(tuple(parts))}") from e
    return parts


def _add_part(parts, value):
    return sorted(list(parts) + [value], reverse=True)


def f(lam):
    """Definition of f: remove a part i, add a part i-1 to the conjugate"""
    t = tau(lam)
    if t > 0:
        raise DomainError(f"f needs a rank <= 0, {lam} has ranks {list(ranks(lam))}")
    i = rank_index(lam)
    mu = Partition(tuple(_remove_part(lam.parts, i)))
    if i > 1:
        conj = conjugate(mu)
        mu = conjugate(Partition(tuple(_add_part(conj.parts, i - 1))))
    return mu


def g(lam):
    """Inverse of f: remove a part j-1 from the conjugate, add a part j"""
    t = tau(lam)
    if t > 1:
        j = durfee(lam)[0] + 1
    else:
        j = min(i for i, v in enumerate(ranks(lam), start=1) if v == t)
    mu = lam
    if j > 1:
        conj = conjugate(lam)
        mu = conjugate(Partition(tuple(_remove_part(conj.parts, j - 1))))
    return Partition(tuple(_add_part(mu.parts, j)))


def g_iter(lam, k):
    for _ in range(k):
        lam = g(lam)
    return lam


@dataclass(frozen=True)
class TrajectoryState:
    """Snapshot of one partition along iterated f"""

    partition: Partition
    tau: float
    i: int
    d: int
    dr: int
    area: int

    @classmethod
    def of(cls, lam):
        d, dr = durfee(lam)
        t = tau(lam)
        return cls(lam, t, rank_index(lam) if lam else None, d, dr, lam.area)

    def to_json(self):
        return {
            "partition": self.partition.to_json(),
            "tau": None if self.tau == math.inf else self.tau,
            "i": self.i,
            "d": self.d,
            "dr": self.dr,
            "area": self.area,
        }


@dataclass(frozen=True)
class Trajectory:
    states: tuple

    def to_json_lines(self):
        return [state.to_json() for state in self.states]


def _check_boxed(bp, ell, steps):
    if ell < 0:
        raise DomainError(f"ell must be nonnegative, got {ell}")
    if bp.n + ell < bp.m:
        raise DomainError(f"Need n + ell >= m, got m={bp.m}, n={bp.n}, ell={ell}")
    if steps and tau(bp.partition) > -ell:
        raise DomainError(
            f"Need some rank <= {-ell}, {bp.partition} has ranks {list(ranks(bp.partition))}"
        )


def theta(bp, ell):
    """theta = f^{ell+1}, landing in the (m-ell-1) x (n+ell+1) box"""
    _check_boxed(bp, ell, steps=ell + 1)
    lam = bp.partition
    for _ in range(ell + 1):
        lam = f(lam)
    return BoxedPartition(lam, bp.m - ell - 1, bp.n + ell + 1)


def theta_inverse(bp, ell):
    """g^{ell+1}, the inverse of theta on its image"""
    if ell < 0:
        raise DomainError(f"ell must be nonnegative, got {ell}")
    if bp.n < ell + 1:
        raise DomainError(f"theta_inverse needs n >= ell + 1, got n={bp.n}, ell={ell}")
    return BoxedPartition(g_iter(bp.partition, ell + 1), bp.m + ell + 1, bp.n - ell - 1)


def f_iter(bp, ell):
    """f^ell with the trajectory of every intermediate state"""
    _check_boxed(bp, ell, steps=ell)
    lam = bp.partition
    states = [TrajectoryState.of(lam)]
    for _ in range(ell):
        lam = f(lam)
        states.append(TrajectoryState.of(lam))
    logger.debug(f"f_iter {bp.partition} ell={ell}: {len(states)} states")
    return BoxedPartition(lam, bp.m - ell, bp.n + ell), Trajectory(tuple(states))


def bridge_words(bp, ell):
    """Both sides of theta(lambda)' = phi(gamma^{ell+1}(phi^{-1}(lambda'))) as words"""
    image = theta(bp, ell)
    left = to_word(image.transposed())
    right = phi(gamma_iter(phi_inv_of_partition(bp.transposed()), ell + 1))
    return left, right


def bridge_check(bp, ell):
    """True iff theta and every single f step commute with phi and gamma"""
    left, right = bridge_words(bp, ell)
    if left != right:
        logger.warning(f"bridge mismatch for {bp.partition} ell={ell}: {left} != {right}")
        return False
    current = bp
    for _ in range(ell + 1):
        stepped = BoxedPartition(f(current.partition), current.m - 1, current.n + 1)
        lhs = to_word(stepped.transposed())
        rhs = phi(gamma(phi_inv_of_partition(current.transposed())))
        if lhs != rhs:
            logger.warning(f"single-step bridge mismatch at {current.partition}: {lhs} != {rhs}")
            return False
        current = stepped
    return True
