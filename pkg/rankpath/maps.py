"""
Named bijections applied to JSON-shaped input, with a statistics block

Used by the `map` and `trajectory` commands and by POST /api/map/<name>.
"""

import json
import logging

from rankpath import foata, greene_kleitman, rank_raising
from rankpath.errors import InvalidPartitionError, PreconditionError, UnknownNameError
from rankpath.partitions import BoxedPartition, Partition, conjugate, durfee, hook_decomposition, ranks
from rankpath.paths import StepWord, block_bijection, parse_word, profile, valley_heights

logger = logging.getLogger(__name__)


def decode_input(raw):
    """CLI text -> JSON array or object; anything else, such as DDUU or 1221, stays a string"""
    if not isinstance(raw, str):
        return raw
    try:
        value = json.loads(raw)
    except json.JSONDecodeError:
        return raw.strip()
    return value if isinstance(value, (list, dict, str)) else raw.strip()


def _as_partition(value):
    if isinstance(value, dict):
        return BoxedPartition.from_json(value).partition
    return Partition.from_json(value)


def _as_boxed(value):
    if not isinstance(value, dict):
        raise InvalidPartitionError(f'Expected {{"parts": [...], "m": m, "n": n}}, got {value!r}')
    return BoxedPartition.from_json(value)


def _as_word(value):
    if not isinstance(value, str):
        raise PreconditionError(f"Expected a step word such as 'UDDU' or '1221', got {value!r}")
    return parse_word(value)


def partition_stats(lam):
    d, dr = durfee(lam)
    return {
        "area": lam.area,
        "d": d,
        "dr": dr,
        "ranks": list(ranks(lam)),
        "hooks": hook_decomposition(lam).to_json(),
    }


def word_stats(w):
    prof = profile(w)
    return {
        "m": w.m,
        "n": w.n,
        "maj": prof.maj,
        "des": prof.des,
        "inv": prof.inv,
        "min": prof.min_height,
        "valley_heights": list(valley_heights(w)),
    }


def stats_of(value):
    if isinstance(value, StepWord):
        return word_stats(value)
    if isinstance(value, BoxedPartition):
        return partition_stats(value.partition)
    return partition_stats(value)


def render(value):
    if isinstance(value, StepWord):
        return str(value)
    return value.to_json()


def _conj(value, ell):
    if isinstance(value, dict):
        return _as_boxed(value).transposed()
    return conjugate(_as_partition(value))


def _theta(value, ell):
    return rank_raising.theta(_as_boxed(value), ell)


def _theta_inverse(value, ell):
    return rank_raising.theta_inverse(_as_boxed(value), ell)


def _f_iter(value, ell):
    image, _ = rank_raising.f_iter(_as_boxed(value), ell)
    return image


def _word_map(fn):
    return lambda value, ell: fn(_as_word(value))


def _partition_map(fn):
    return lambda value, ell: fn(_as_partition(value))


MAPS = {
    "conj": _conj,
    "phi": _word_map(foata.phi),
    "phi-inv": _word_map(foata.phi_inv),
    "gamma": _word_map(greene_kleitman.gamma),
    "gamma-inv": _word_map(greene_kleitman.gamma_inv),
    "f": _partition_map(rank_raising.f),
    "g": _partition_map(rank_raising.g),
    "theta": _theta,
    "theta-inv": _theta_inverse,
    "f-iter": _f_iter,
    "flip-valleys": _word_map(foata.flip_valleys),
    "block-bijection": _word_map(block_bijection),
}

INVERSES = {
    "conj": "conj",
    "phi": "phi-inv",
    "phi-inv": "phi",
    "gamma": "gamma-inv",
    "gamma-inv": "gamma",
    "f": "g",
    "g": "f",
    "theta": "theta-inv",
    "theta-inv": "theta",
    "flip-valleys": "flip-valleys",
}

NEEDS_ELL = {"theta", "theta-inv", "f-iter"}


def _same_kind(value, like):
    """Decode value as the same kind of object as like"""
    if isinstance(like, StepWord):
        return _as_word(value)
    if isinstance(like, BoxedPartition):
        return _as_boxed(value)
    return _as_partition(value)


def apply_map(name, value, ell=None, round_trip=False):
    """Apply a named map and annotate the result with its statistics

    With round_trip the image is fed through the inverse map and the result
    records whether the input came back.
    """
    if name not in MAPS:
        raise UnknownNameError(f"Unknown map {name!r}; known: {', '.join(sorted(MAPS))}")
    if name in NEEDS_ELL and ell is None:
        raise PreconditionError(f"Map {name} needs --ell")
    value = decode_input(value)
    result = MAPS[name](value, ell)
    logger.debug(f"map {name}: {value} -> {render(result)}")
    out = {"map": name, "input": value, "output": render(result), "stats": stats_of(result)}
    if round_trip:
        if name not in INVERSES:
            raise PreconditionError(f"Map {name} has no registered inverse")
        back = MAPS[INVERSES[name]](render(result), ell)
        out["round_trip"] = back == _same_kind(value, back)
        if not out["round_trip"]:
            logger.warning(f"{INVERSES[name]}({name}({value})) = {render(back)}")
    return out


def trajectory(value, ell):
    """f^ell with every intermediate state, as JSON lines"""
    bp = _as_boxed(decode_input(value))
    image, path = rank_raising.f_iter(bp, ell)
    return image, path.to_json_lines()
