"""
Foata's second fundamental transformation on {1,2}-words

phi satisfies maj(w) = inv(phi(w)).  Through the boundary-word encoding,
phi^{-1} sends a partition to the path whose valleys sit at its hook
coordinates; the valley-flip map conjugates through phi.

The psi map of the rank-valley literature is reflect(phi^{-1}(lambda')).
"""

import logging

from rankpath.errors import DomainError
from rankpath.partitions import (
    from_word,
    hook_decomposition,
    to_word,
)
from rankpath.paths import DOWN, UP, StepWord, durfee_from_word, parse_word, valley_heights

logger = logging.getLogger(__name__)


def _blocks(w):
    """Split w into blocks 1^{m_k} 2^{n_k}, k = 0..d"""
    steps = w.steps
    blocks = []
    pos = 0
    while True:
        start = pos
        while pos < len(steps) and steps[pos] == UP:
            pos += 1
        ones = pos - start
        start = pos
        while pos < len(steps) and steps[pos] == DOWN:
            pos += 1
        blocks.append((ones, pos - start))
        if pos >= len(steps):
            return blocks


def phi(w):
    """Foata's map, computed from its unwound closed form in one pass"""
    w = parse_word(w)
    blocks = _blocks(w)
    d = len(blocks) - 1
    out = []
    for k in range(d, 0, -1):
        out.extend([UP] * (blocks[k][0] - 1))
        out.append(DOWN)
    out.extend([UP] * blocks[0][0])
    for k in range(d):
        out.extend([DOWN] * (blocks[k][1] - 1))
        out.append(UP)
    out.extend([DOWN] * blocks[d][1])
    return StepWord(tuple(out))


def phi_recursive(w):
    """phi(w2) = phi(w)2, phi(w11) = 1 phi(w1), phi(w21) = 2 phi(w) 1"""
    steps = parse_word(w).steps
    if len(steps) <= 1:
        return StepWord(steps)
    if steps[-1] == DOWN:
        return StepWord(phi_recursive(StepWord(steps[:-1])).steps + (DOWN,))
    if steps[-2] == UP:
        return StepWord((UP,) + phi_recursive(StepWord(steps[:-1])).steps)
    return StepWord((DOWN,) + phi_recursive(StepWord(steps[:-2])).steps + (UP,))


def phi_inv(v):
    """Inverse of phi, reading the blocks back off the image word"""
    v = parse_word(v)
    steps = v.steps
    d = durfee_from_word(v)

    pos = 0
    head = []
    for _ in range(d):
        run = 0
        while steps[pos] == UP:
            run += 1
            pos += 1
        pos += 1  # the closing 2
        head.append(run + 1)
    ones_m = list(reversed(head))  # m_1..m_d

    rest = steps[pos:]
    m0 = rest.count(UP) - d
    rest = rest[m0:]
    tails = []
    run = 0
    for s in rest:
        if s == UP:
            tails.append(run + 1)
            run = 0
        else:
            run += 1
    twos_n = tails + [run]  # n_0..n_d

    out = [UP] * m0 + [DOWN] * twos_n[0]
    for k in range(1, d + 1):
        out.extend([UP] * ones_m[k - 1])
        out.extend([DOWN] * twos_n[k])
    return StepWord(tuple(out))


def phi_inv_of_partition(bp):
    """phi^{-1} of the boundary word of bp, built directly from the hook decomposition

    The j-th valley of the result is (b_j + a_j, b_j - a_j).
    """
    hooks = hook_decomposition(bp.partition)
    out = []
    prev_a = prev_b = 0
    for a, b in zip(hooks.a, hooks.b):
        out.extend([UP] * (b - prev_b))
        out.extend([DOWN] * (a - prev_a))
        prev_a, prev_b = a, b
    out.extend([UP] * (bp.m - prev_b))
    out.extend([DOWN] * (bp.n - prev_a))
    return StepWord(tuple(out))


def flip_valleys(w):
    """P -> phi^{-1}(phi(P)'): preserves (des, maj), swaps the step counts"""
    w = parse_word(w)
    bp = from_word(phi(w))
    flipped = to_word(bp.transposed())
    return phi_inv(flipped)


def shift_to_dyck(w, ell):
    """Move a path with valleys >= -ell (ell <= 1) to one with valleys >= 0

    ell = 1 prepends a U step; ell <= 0 strips the forced prefix U^{-ell}.
    Valley positions shift by ell, so maj grows by ell * des.
    """
    w = parse_word(w)
    if ell > 1:
        raise DomainError(f"shift_to_dyck needs ell <= 1, got {ell}")
    if any(h < -ell for h in valley_heights(w)):
        raise DomainError(f"shift_to_dyck needs every valley at height >= {-ell}")
    if ell == 1:
        return StepWord((UP,) + w.steps)
    prefix = -ell
    if w.steps[:prefix] != (UP,) * prefix:
        raise DomainError(f"Path {w} does not begin with U^{prefix}")
    return StepWord(w.steps[prefix:])
