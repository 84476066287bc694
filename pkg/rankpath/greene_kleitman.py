"""
Greene-Kleitman lifting on lattice paths

gamma turns the D step ending at the leftmost minimum into a U step; its
inverse turns the U step starting at the rightmost minimum into a D step.
Both keep the set of matched 1-2 pairs.
"""

import logging

from rankpath.errors import DomainError
from rankpath.paths import DOWN, UP, StepWord, heights, match_steps, parse_word

logger = logging.getLogger(__name__)


def gamma(w):
    """Flip the D step ending at the leftmost minimum"""
    w = parse_word(w)
    h = heights(w)
    low = min(h)
    if low >= 0:
        raise DomainError(f"gamma needs a path that goes below the axis, {w} has minimum {low}")
    x = h.index(low)
    steps = list(w.steps)
    steps[x - 1] = UP
    return StepWord(tuple(steps))


def gamma_inv(w):
    """Flip the U step starting at the rightmost minimum"""
    w = parse_word(w)
    h = heights(w)
    low = min(h)
    if low >= h[-1]:
        raise DomainError(
            f"gamma_inv needs minimum below the final height {h[-1]}, {w} has minimum {low}"
        )
    x = len(h) - 1 - h[::-1].index(low)
    steps = list(w.steps)
    steps[x] = DOWN
    return StepWord(tuple(steps))


def gamma_iter(w, k):
    """gamma applied k times: flip the k rightmost unmatched 2s"""
    w = parse_word(w)
    if k < 0:
        raise DomainError(f"gamma_iter needs k >= 0, got {k}")
    if k == 0:
        return w
    unmatched = match_steps(w).unmatched_twos
    if len(unmatched) < k:
        raise DomainError(f"gamma_iter needs {k} unmatched 2s, {w} has {len(unmatched)}")
    steps = list(w.steps)
    for position in unmatched[len(unmatched) - k:]:
        steps[position - 1] = UP
    return StepWord(tuple(steps))


def gamma_inv_iter(w, k):
    """gamma_inv applied k times: flip the k leftmost unmatched 1s"""
    w = parse_word(w)
    if k < 0:
        raise DomainError(f"gamma_inv_iter needs k >= 0, got {k}")
    unmatched = match_steps(w).unmatched_ones
    if len(unmatched) < k:
        raise DomainError(f"gamma_inv_iter needs {k} unmatched 1s, {w} has {len(unmatched)}")
    steps = list(w.steps)
    for position in unmatched[:k]:
        steps[position - 1] = DOWN
    return StepWord(tuple(steps))
