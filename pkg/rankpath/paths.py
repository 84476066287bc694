"""
Step words over {1,2} read as lattice paths
1 is an up step U=(1,1), 2 is a down step D=(1,-1); positions are 1-based
"""

import logging
from dataclasses import dataclass
from typing import Iterator

from rankpath.errors import DomainError, InvalidWordError

logger = logging.getLogger(__name__)

UP = 1
DOWN = 2

_LETTERS = {"1": UP, "2": DOWN, "U": UP, "D": DOWN, "u": UP, "d": DOWN}


@dataclass(frozen=True)
class StepWord:
    """A word over {1,2}, equivalently a path of U and D steps from the origin"""

    steps: tuple

    def __post_init__(self):
        steps = tuple(self.steps)
        for letter in steps:
            if letter not in (UP, DOWN):
                raise InvalidWordError(f"Step words use the letters 1 and 2 only, got {letter!r}")
        object.__setattr__(self, "steps", steps)

    @classmethod
    def parse(cls, text):
        """Parse a word written in either the 12 or the UD alphabet"""
        return parse_word(text)

    @property
    def m(self):
        """Number of 1s (up steps)"""
        return self.steps.count(UP)

    @property
    def n(self):
        """Number of 2s (down steps)"""
        return self.steps.count(DOWN)

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[int]:
        return iter(self.steps)

    def __getitem__(self, index):
        return self.steps[index]

    def __add__(self, other):
        return StepWord(self.steps + tuple(other))

    def __str__(self):
        return format_word(self, "UD")

    def digits(self):
        """The word in the 12 alphabet"""
        return format_word(self, "12")


def parse_word(text):
    """Parse a step word from '1212' or 'UDUD' text"""
    if isinstance(text, StepWord):
        return text
    if not isinstance(text, str):
        raise InvalidWordError(f"Expected a word as text, got {type(text).__name__}")
    cleaned = text.strip()
    if cleaned in ("", "e", "ε"):
        return StepWord(())
    alphabets = {"12" if ch in "12" else "UD" for ch in cleaned if ch in _LETTERS}
    if len(alphabets) > 1:
        raise InvalidWordError(f"Word {text!r} mixes the 12 and UD alphabets")
    try:
        return StepWord(tuple(_LETTERS[ch] for ch in cleaned))
    except KeyError as e:
        raise InvalidWordError(f"Word {text!r} has a letter outside 1/2/U/D") from e


def format_word(w, alphabet="UD"):
    """Render a word in the UD (canonical) or 12 alphabet"""
    up, down = ("U", "D") if alphabet.upper() == "UD" else ("1", "2")
    return "".join(up if s == UP else down for s in w)


def heights(w):
    """Heights h_0..h_len of the path; h_0 = 0"""
    result = [0]
    for s in w:
        result.append(result[-1] + (1 if s == UP else -1))
    return result


def min_height(w):
    """Minimum height reached by the path (0 for the empty path)"""
    return min(heights(w))


def inversions(w):
    """Number of pairs i < j with w_i = 2 and w_j = 1"""
    twos_seen = 0
    total = 0
    for s in w:
        if s == DOWN:
            twos_seen += 1
        else:
            total += twos_seen
    return total


def valleys(w):
    """Valleys (x, h_x) left to right: a D step ending at x followed by a U step"""
    h = heights(w)
    return tuple((x, h[x]) for x in range(1, len(w)) if w[x - 1] == DOWN and w[x] == UP)


def peaks(w):
    """Peaks (x, h_x) left to right: a U step ending at x followed by a D step"""
    h = heights(w)
    return tuple((x, h[x]) for x in range(1, len(w)) if w[x - 1] == UP and w[x] == DOWN)


def descent_set(w):
    """Des(w): positions of the valleys"""
    return tuple(x for x, _ in valleys(w))


def valley_heights(w):
    """Heights v_1, v_2, ... of the valleys from left to right"""
    return tuple(h for _, h in valleys(w))


@dataclass(frozen=True)
class PathProfile:
    """Valley/peak profile and the word statistics of a path"""

    valleys: tuple
    peaks: tuple
    min_height: int
    des: int
    maj: int
    hdes: int
    hmaj: int
    inv: int

    def to_json(self):
        return {
            "valleys": [list(v) for v in self.valleys],
            "peaks": [list(p) for p in self.peaks],
            "min": self.min_height,
            "des": self.des,
            "maj": self.maj,
            "hdes": self.hdes,
            "hmaj": self.hmaj,
            "inv": self.inv,
        }


def profile(w):
    """Compute the full PathProfile of a step word"""
    vs = valleys(w)
    ps = peaks(w)
    return PathProfile(
        valleys=vs,
        peaks=ps,
        min_height=min_height(w),
        des=len(vs),
        maj=sum(x for x, _ in vs),
        hdes=len(ps),
        hmaj=sum(x for x, _ in ps),
        inv=inversions(w),
    )


def maj(w):
    """Sum of the valley positions"""
    return sum(x for x, _ in valleys(w))


def des(w):
    """Number of valleys"""
    return len(valleys(w))


@dataclass(frozen=True)
class StepMatching:
    """Parenthesis matching of a word: each 1 opens, each 2 closes"""

    pairs: frozenset
    unmatched_twos: tuple
    unmatched_ones: tuple

    def to_json(self):
        return {
            "pairs": sorted([list(p) for p in self.pairs]),
            "unmatched_twos": list(self.unmatched_twos),
            "unmatched_ones": list(self.unmatched_ones),
        }


def match_steps(w):
    """Greene-Kleitman matching computed in one left-to-right stack pass"""
    stack = []
    pairs = set()
    unmatched_twos = []
    for position, s in enumerate(w, start=1):
        if s == UP:
            stack.append(position)
        elif stack:
            pairs.add((stack.pop(), position))
        else:
            unmatched_twos.append(position)
    return StepMatching(frozenset(pairs), tuple(unmatched_twos), tuple(stack))


def match_steps_by_removal(w):
    """Matching by repeatedly removing every adjacent 1 2 pair"""
    remaining = list(enumerate(w, start=1))
    pairs = set()
    while True:
        keep = []
        removed = False
        i = 0
        while i < len(remaining):
            if (
                i + 1 < len(remaining)
                and remaining[i][1] == UP
                and remaining[i + 1][1] == DOWN
            ):
                pairs.add((remaining[i][0], remaining[i + 1][0]))
                removed = True
                i += 2
            else:
                keep.append(remaining[i])
                i += 1
        remaining = keep
        if not removed:
            break
    twos = tuple(p for p, s in remaining if s == DOWN)
    ones = tuple(p for p, s in remaining if s == UP)
    return StepMatching(frozenset(pairs), twos, ones)


def reflect(w):
    """Reflect the path in the x-axis (swap 1 and 2)"""
    return StepWord(tuple(DOWN if s == UP else UP for s in w))


def durfee_from_word(w):
    """Largest i such that the i-th 2 from the left precedes the i-th 1 from the right"""
    return _staircase_readoff(w, offset=0)


def durfee_rect_from_word(w):
    """Largest i such that the (i+1)-th 2 from the left precedes the i-th 1 from the right"""
    return _staircase_readoff(w, offset=1)


def _staircase_readoff(w, offset):
    twos = [p for p, s in enumerate(w, start=1) if s == DOWN]
    ones_from_right = [p for p, s in reversed(list(enumerate(w, start=1))) if s == UP]
    i = 0
    while i + offset < len(twos) and i < len(ones_from_right) and twos[i + offset] < ones_from_right[i]:
        i += 1
    return i


def in_valley_domain(w, allowed):
    """True iff every valley height of w satisfies the allowed predicate"""
    return all(allowed(h) for h in valley_heights(w))


def block_bijection(w):
    """Map a grand Dyck path with all valleys at height <= -2 onto a Dyck path

    Reflect the path, then replace every block below the axis (necessarily
    D^i U^i) by (UD)^i.
    """
    if w.m != w.n:
        raise DomainError(f"block_bijection needs equal numbers of U and D steps, got {w.m} and {w.n}")
    bad = [(x, h) for x, h in valleys(w) if h > -2]
    if bad:
        raise DomainError(f"block_bijection needs every valley at height <= -2, found valley {bad[0]}")

    r = reflect(w)
    h = heights(r)
    out = []
    x = 0
    while x < len(r):
        if r[x] == DOWN and h[x] == 0:
            # below-axis block: runs until the path returns to 0
            end = x + 1
            while h[end] != 0:
                end += 1
            size = (end - x) // 2
            out.extend((UP, DOWN) * size)
            x = end
        else:
            out.append(r[x])
            x += 1
    result = StepWord(tuple(out))
    logger.debug(f"block_bijection {w} -> {result}")
    return result
