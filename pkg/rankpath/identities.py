"""
Identity catalog and verification sweeps

Each identity is registered once: a function computing both sides for one
parameter cell, a predicate saying which cells are in range, and a default
grid.  verify() runs the grid (optionally in a process pool) and assembles a
VerifyReport; the CLI and the HTTP API both drive it.
"""

import itertools
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from rankpath import oracle, qseries
from rankpath.errors import PreconditionError, RankPathError, UnknownNameError
from rankpath.oracle import (
    AboveLine,
    PartitionsInBox,
    PartitionsUpTo,
    PathsInGrid,
    RankFiltered,
    ValleyFiltered,
)
from rankpath.partitions import AtLeast, BoxedPartition, Finite, durfee
from rankpath.qseries import QPoly, QTPoly, TruncatedSeries, canonical_name
from rankpath.rank_raising import bridge_check, tau, theta, theta_inverse

logger = logging.getLogger(__name__)


# ---------------------------------------------------------------- ranges


def parse_range(text):
    """'a..b', 'a,b,c' or 'a' -> list of ints"""
    if isinstance(text, int):
        return [text]
    if isinstance(text, (list, tuple)):
        return [int(v) for v in text]
    s = str(text).replace(" ", "")
    try:
        if ".." in s:
            lo, hi = s.split("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(v) for v in s.split(",") if v]
    except ValueError as e:
        raise PreconditionError(f"Invalid range {text!r}; use a..b, a,b,c or a") from e
    if not values:
        raise PreconditionError(f"Range {text!r} is empty")
    return values


# ---------------------------------------------------------------- JSON rendering


def to_json_value(value):
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    if isinstance(value, (list, tuple)):
        return [to_json_value(v) for v in value]
    return str(value)


def to_text(value):
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(to_text(v) for v in value) + ")"
    return str(value)


# ---------------------------------------------------------------- sides


def _box_gf(m, n, constraint, tstat, cap):
    return oracle.gf(RankFiltered(PartitionsInBox(m, n), constraint), tstat, cap)


def _lopsided(m, n, ell, cap=None):
    return qseries.thm_lopsided(m, n, ell), _box_gf(m, n, AtLeast(1 - ell), "d", cap)


def _central_dsq(m, n, ell, cap=None):
    return qseries.thm_central_dsq(m, n, ell), _box_gf(m, n, AtLeast(1 - ell), "d", cap)


def _central_drect(m, n, ell, cap=None):
    return qseries.thm_central_drect(m, n, ell), _box_gf(m, n, AtLeast(1 - ell), "dr", cap)


def _box_t1(m, n, ell, cap=None):
    return QTPoly.lift(qseries.thm_box_t1(m, n, ell)), _box_gf(m, n, AtLeast(1 - ell), "none", cap)


def _branch_overlap(m, n, ell, cap=None):
    return qseries.thm_lopsided(m, n, ell), qseries.thm_central_dsq(m, n, ell)


def _fh(m, n, cap=None):
    return qseries.fh_formula(m, n), oracle.gf(AboveLine(PathsInGrid(m, n), 0), "des", cap)


def _fh_complement(m, n, cap=None):
    brute = oracle.gf(AboveLine(PathsInGrid(m, n), 0, complement=True), "des", cap)
    return qseries.fh_formula(m, n, complement=True), brute


def _catalan(n, cap=None):
    dyck = ValleyFiltered(PathsInGrid(n, n), AtLeast(0))
    return qseries.catalan_qt(n), oracle.gf(dyck, "des", cap)


def _qcatalan(n, cap=None):
    return qseries.qcatalan(n), qseries.catalan_qt(n).at_t1()


def _keith(m, n, ell, cap=None):
    return qseries.keith_km(m, n, ell), oracle.gf(AboveLine(PathsInGrid(n, m), -ell), "hdes", cap)


def _lemma_box_area(m, n, cap=None):
    return QTPoly.lift(qseries.qbinom(m + n, n)), oracle.gf(PartitionsInBox(m, n), "none", cap)


def _lemma_box_d(m, n, cap=None):
    return qseries.d_box_gf(m, n), oracle.gf(PartitionsInBox(m, n), "d", cap)


def _box_dr(m, n, cap=None):
    return qseries.dr_box_gf(m, n), oracle.gf(PartitionsInBox(m, n), "dr", cap)


def _cor_ab(ell, N, cap=None):
    left, right = oracle.cor_ab_counts(ell, N, cap)
    return left, right


def _andrews_bressoud(r, M, N, cap=None):
    left, right = oracle.andrews_bressoud_counts(r, M, N, cap)
    return left, right


def _rr_box(m, n, cap=None):
    return qseries.rr_box(m, n), _box_gf(m, n, Finite(frozenset({0, -1})), "d", cap)


def _ex83_box(m, n, cap=None):
    return qseries.ex83_box(m, n), _box_gf(m, n, Finite(frozenset({-1, -2})), "d", cap)


def _limit_oracle(D, constraint, tstat, cap, max_parts=None):
    return oracle.gf(RankFiltered(PartitionsUpTo(D, max_parts), constraint), tstat, cap).truncate_q(D)


def _rr1_limit(D, cap=None):
    brute = _limit_oracle(D, Finite(frozenset({0, -1})), "d", cap)
    return qseries.rr1_limit(D).to_qtpoly(), brute


def _zero_minus_a(a, D, cap=None):
    brute = _limit_oracle(D, Finite(frozenset({0, -a})), "d", cap)
    return qseries.zero_minus_a_limit(D, a).to_qtpoly(), brute


def _rank_parity(D, cap=None):
    return qseries.rank_parity_closed_form(D), oracle.rank_parity_gf(D, cap)


def _lgv(m, n, ell, i, cap=None):
    formula = (qseries.lgv_product(m, n, ell, i), qseries.lgv_product(m, n, ell, i, intersecting=False))
    brute = (
        oracle.lgv_pairs_gf(m, n, ell, i, True, cap),
        oracle.lgv_pairs_gf(m, n, ell, i, False, cap),
    )
    return formula, brute


def _lgv_bracket(m, n, ell, i, cap=None):
    """Nonintersecting pairs at (m, n) against the central bracket at (n, m)"""
    bracket = qseries.thm_central_dsq(n, m, ell).coefficient(i).shift(-i * i)
    return oracle.lgv_pairs_gf(m, n, ell, i, False, cap), bracket


def _bridge(m, n, ell, cap=None):
    failures = []
    for lam in oracle.enumerate_family(PartitionsInBox(m, n), cap):
        if tau(lam) > -ell:
            continue
        if not bridge_check(BoxedPartition(lam, m, n), ell):
            failures.append(lam)
    return tuple(failures), ()


def _theta_bijection(m, n, ell, cap=None):
    """theta is a bijection onto the smaller box, preserving dr and dropping the area by ell+1"""
    bad = []
    images = set()
    for lam in oracle.enumerate_family(PartitionsInBox(m, n), cap):
        if tau(lam) > -ell:
            continue
        bp = BoxedPartition(lam, m, n)
        image = theta(bp, ell)
        same_dr = durfee(image.partition)[1] == durfee(lam)[1]
        if not same_dr or image.partition.area != lam.area - ell - 1 or theta_inverse(image, ell) != bp:
            bad.append(lam)
        images.add(image.partition)
    target = set(oracle.enumerate_family(PartitionsInBox(m - ell - 1, n + ell + 1), cap))
    return (tuple(bad), images == target), ((), True)


def _limit_identity(name, tstat, constraint_of, max_parts_of=None):
    def sides(D, cap=None, **params):
        series = qseries.limit_series(name, D, **params).to_qtpoly().truncate_q(D)
        max_parts = max_parts_of(params) if max_parts_of else None
        return series, _limit_oracle(D, constraint_of(params), tstat, cap, max_parts)

    return sides


# ---------------------------------------------------------------- catalog


def _always(**cell):
    return True


def _lopsided_range(m, n, ell):
    return -n <= ell <= 1


def _central_range(m, n, ell):
    return ell >= 0 and n + ell >= m


def _overlap_range(m, n, ell):
    return ell in (0, 1) and -n <= ell and n + ell >= m


def _m_at_least_n(m, n):
    return m >= n


def _keith_range(m, n, ell):
    return ell >= 0 and n + ell >= m - 1


def _ab_range(r, M, N):
    return 0 < r and 2 * r < M


def _ex83_range(m, n):
    return m >= 2 and n >= 2


def _lgv_range(m, n, ell, i):
    return 0 <= i <= min(m, n) and ell >= 0 and m + ell >= n


def _bridge_range(m, n, ell):
    return ell >= 0 and n + ell >= m


def _theta_range(m, n, ell):
    return ell >= 0 and n + ell >= m and m > ell


def _mlimit_range(D, m, ell):
    return m > ell >= 0


@dataclass(frozen=True)
class Identity:
    name: str
    params: Tuple[str, ...]
    sides: Callable
    grid: Dict[str, str]
    applies: Callable = _always
    description: str = ""


def _limit(name, tstat, constraint_of, params=(), grid=None, applies=_always, max_parts_of=None, description=""):
    grid = {"D": "0..12", **(grid or {})}
    return Identity(
        name,
        ("D",) + tuple(params),
        _limit_identity(name, tstat, constraint_of, max_parts_of),
        grid,
        applies,
        description,
    )


# Default grids are quick-check sizes for the CLI and the API; the acceptance
# sizes are passed as overrides by tests/non_functional/test_performance.py.
_CATALOG = [
    Identity("thm-lopsided", ("m", "n", "ell"), _lopsided, {"m": "0..5", "n": "0..5", "ell": "-5..1"},
             _lopsided_range, "ranks >= 1-ell in the box, t marking d, -n <= ell <= 1"),
    Identity("thm-central-dsq", ("m", "n", "ell"), _central_dsq, {"m": "0..5", "n": "0..5", "ell": "0..3"},
             _central_range, "ranks >= 1-ell in the box, t marking d, n+ell >= m"),
    Identity("thm-central-drect", ("m", "n", "ell"), _central_drect, {"m": "0..5", "n": "0..5", "ell": "0..3"},
             _central_range, "ranks >= 1-ell in the box, t marking dr, n+ell >= m"),
    Identity("thm-box-t1", ("m", "n", "ell"), _box_t1, {"m": "0..5", "n": "0..5", "ell": "0..3"},
             _central_range, "ranks >= 1-ell in the box, by area"),
    Identity("branch-overlap", ("m", "n", "ell"), _branch_overlap, {"m": "0..6", "n": "0..6", "ell": "0..1"},
             _overlap_range, "lopsided and central formulas agree for ell in {0,1}"),
    Identity("fh", ("m", "n"), _fh, {"m": "0..6", "n": "0..6"}, _m_at_least_n,
             "paths staying above the axis by (des, maj)"),
    Identity("fh-complement", ("m", "n"), _fh_complement, {"m": "0..6", "n": "0..6"}, _m_at_least_n,
             "paths dipping below the axis by (des, maj)"),
    Identity("catalan-qt", ("n",), _catalan, {"n": "0..6"}, _always, "Dyck paths by (des, maj)"),
    Identity("qcatalan", ("n",), _qcatalan, {"n": "0..10"}, _always, "MacMahon q-Catalan is C_n(q,1)"),
    Identity("keith-km", ("m", "n", "ell"), _keith, {"m": "0..6", "n": "0..6", "ell": "0..3"},
             _keith_range, "paths above y=-ell by (hdes, hmaj)"),
    Identity("eq-drPmn", ("m", "n"), _box_dr, {"m": "0..6", "n": "0..6"}, _always,
             "the box by area, t marking dr"),
    Identity("lemma-2.2", ("m", "n"), _lemma_box_area, {"m": "0..6", "n": "0..6"}, _always,
             "the box by area is a q-binomial"),
    Identity("lemma-2.3", ("m", "n"), _lemma_box_d, {"m": "0..6", "n": "0..6"}, _always,
             "the box by area, t marking d"),
    Identity("cor-AB", ("ell", "N"), _cor_ab, {"ell": "0..5", "N": "0..20"}, _always,
             "ranks >= 1-ell versus no part ell+1"),
    Identity("andrews-bressoud", ("r", "M", "N"), _andrews_bressoud, {"r": "1..3", "M": "4..8", "N": "0..20"},
             _ab_range, "ranks in [2-r, M-r-2] versus parts not 0, r, -r mod M"),
    Identity("rr-box", ("m", "n"), _rr_box, {"m": "0..6", "n": "0..6"}, _always, "ranks in {0,-1} in the box"),
    Identity("ex83-box", ("m", "n"), _ex83_box, {"m": "2..6", "n": "2..6"}, _ex83_range,
             "ranks in {-1,-2} in the box"),
    Identity("rr1-limit", ("D",), _rr1_limit, {"D": "0..12"}, _always, "ranks in {0,-1}, all partitions"),
    Identity("zero-minus-a-limit", ("a", "D"), _zero_minus_a, {"a": "1..3", "D": "0..10"}, _always,
             "ranks in {0,-a}, all partitions"),
    Identity("rank-parity", ("D",), _rank_parity, {"D": "0..6"}, _always,
             "square boxes by odd and even ranks"),
    Identity("lgv", ("m", "n", "ell", "i"), _lgv, {"m": "0..4", "n": "0..4", "ell": "0..2", "i": "0..4"},
             _lgv_range, "intersecting and nonintersecting boundary path pairs"),
    Identity("lgv-bracket", ("m", "n", "ell", "i"), _lgv_bracket,
             {"m": "0..4", "n": "0..4", "ell": "0..2", "i": "0..4"}, _lgv_range,
             "nonintersecting pairs give the central bracket"),
    Identity("bridge", ("m", "n", "ell"), _bridge, {"m": "0..4", "n": "0..4", "ell": "0..2"}, _bridge_range,
             "theta commutes with phi and gamma"),
    Identity("theta-bijection", ("m", "n", "ell"), _theta_bijection, {"m": "1..5", "n": "0..5", "ell": "0..3"},
             _theta_range, "theta is onto the smaller box, keeps dr and drops the area by ell+1"),
    _limit("eq-limCq1", "none", lambda p: AtLeast(1), description="all ranks >= 1, by area"),
    _limit("eq-limCn", "none", lambda p: AtLeast(0), description="all ranks >= 0, by area"),
    _limit("eq-limCn-sum", "none", lambda p: AtLeast(0), description="all ranks >= 0, sum form"),
    _limit("eq-limCn-split", "none", lambda p: AtLeast(0), description="all ranks >= 0, parity split"),
    _limit("limCqt", "d", lambda p: AtLeast(1), description="all ranks >= 1, t marking d"),
    _limit("cor-lopsidedlimit", "d", lambda p: AtLeast(p["b"]), ("b",), {"b": "0..3"},
           description="all ranks >= b, t marking d"),
    _limit("cor-central-t1-mlimit", "none", lambda p: AtLeast(1 - p["ell"]), ("m", "ell"),
           {"m": "1..5", "ell": "0..3"}, _mlimit_range, lambda p: p["m"],
           "at most m parts, ranks >= 1-ell, by area"),
    _limit("cor-AB-limit", "none", lambda p: AtLeast(1 - p["ell"]), ("ell",), {"ell": "0..3"},
           description="ranks >= 1-ell, by area"),
    _limit("cor-drect-mlimit", "dr", lambda p: AtLeast(1 - p["ell"]), ("m", "ell"),
           {"m": "0..5", "ell": "0..3"}, max_parts_of=lambda p: p["m"],
           description="at most m parts, ranks >= 1-ell, t marking dr"),
    _limit("cor-drect-limit", "dr", lambda p: AtLeast(1 - p["ell"]), ("ell",), {"ell": "0..3"},
           description="ranks >= 1-ell, t marking dr"),
    _limit("cor-main-mlimit", "d", lambda p: AtLeast(1 - p["ell"]), ("m", "ell"),
           {"m": "0..5", "ell": "0..3"}, max_parts_of=lambda p: p["m"],
           description="at most m parts, ranks >= 1-ell, t marking d"),
    _limit("cor-mainlimit", "d", lambda p: AtLeast(1 - p["ell"]), ("ell",), {"ell": "0..3"},
           description="ranks >= 1-ell, t marking d"),
]

CATALOG: Dict[str, Identity] = {identity.name: identity for identity in _CATALOG}


def get_identity(name):
    key = canonical_name(name)
    if key in CATALOG:
        return CATALOG[key]
    raise UnknownNameError(f"Unknown identity {name!r}; known: {', '.join(sorted(CATALOG))}")


def list_identities():
    return [
        {"name": i.name, "params": list(i.params), "grid": dict(i.grid), "description": i.description}
        for i in sorted(CATALOG.values(), key=lambda i: i.name)
    ]


# ---------------------------------------------------------------- reports


@dataclass(frozen=True)
class CellResult:
    params: Dict[str, int]
    passed: bool
    left: object
    right: object
    left_text: str
    right_text: str
    seconds: float

    def to_json(self):
        return {
            "params": dict(self.params),
            "passed": self.passed,
            "left": self.left,
            "right": self.right,
            "seconds": round(self.seconds, 6),
        }


@dataclass(frozen=True)
class VerifyReport:
    identity: str
    grid: Dict[str, list]
    cells: Tuple[CellResult, ...]
    skipped: int = 0
    seconds: float = 0.0
    description: str = field(default="", compare=False)

    @property
    def passed(self):
        return all(cell.passed for cell in self.cells)

    @property
    def failures(self):
        return tuple(cell for cell in self.cells if not cell.passed)

    @property
    def counterexample(self) -> Optional[CellResult]:
        failures = self.failures
        return failures[0] if failures else None

    def to_json(self):
        cx = self.counterexample
        return {
            "identity": self.identity,
            "grid": {k: list(v) for k, v in self.grid.items()},
            "checked": len(self.cells),
            "skipped": self.skipped,
            "passed": self.passed,
            "failed": len(self.failures),
            "counterexample": cx.to_json() if cx else None,
            "seconds": round(self.seconds, 6),
        }


def run_cell(name, cell, cap=None):
    """Evaluate both sides of one identity at one parameter cell"""
    identity = get_identity(name)
    start = time.perf_counter()
    try:
        left, right = identity.sides(cap=cap, **cell)
    except RankPathError:
        raise
    except Exception:
        logger.error(f"{identity.name} crashed at {cell}", exc_info=True)
        raise
    passed = left == right
    result = CellResult(
        params=dict(cell),
        passed=passed,
        left=to_json_value(left),
        right=to_json_value(right),
        left_text=to_text(left),
        right_text=to_text(right),
        seconds=time.perf_counter() - start,
    )
    if passed:
        logger.debug(f"{identity.name} {cell}: {result.left_text}")
    else:
        logger.warning(f"{identity.name} fails at {cell}: {result.left_text} != {result.right_text}")
    return result


def _run_packed(args):
    return run_cell(*args)


def build_grid(identity, overrides=None):
    overrides = overrides or {}
    unknown = set(overrides) - set(identity.params)
    if unknown:
        raise PreconditionError(
            f"{identity.name} takes parameters {list(identity.params)}, not {sorted(unknown)}"
        )
    return {p: parse_range(overrides.get(p, identity.grid.get(p, "0"))) for p in identity.params}


def verify(name, overrides=None, jobs=1, cap=None):
    """Check an identity on every in-range cell of its grid"""
    identity = get_identity(name)
    grid = build_grid(identity, overrides)
    cells = [dict(zip(identity.params, values)) for values in itertools.product(*grid.values())]
    in_range = [cell for cell in cells if identity.applies(**cell)]
    skipped = len(cells) - len(in_range)
    logger.info(f"verifying {identity.name} on {len(in_range)} cells ({skipped} out of range), jobs={jobs}")

    start = time.perf_counter()
    tasks = [(identity.name, cell, cap) for cell in in_range]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_packed, tasks))
    else:
        results = [_run_packed(task) for task in tasks]
    elapsed = time.perf_counter() - start

    report = VerifyReport(identity.name, grid, tuple(results), skipped, elapsed, identity.description)
    status = "PASS" if report.passed else "FAIL"
    logger.info(f"{identity.name}: {status} {len(results) - len(report.failures)}/{len(results)} in {elapsed:.2f}s")
    return report


# ---------------------------------------------------------------- formulas for `series`


def _qbinom_formula(n, k):
    return qseries.qbinom(n, k)


FORMULAS = {
    "catalan-qt": (qseries.catalan_qt, ("n",)),
    "qcatalan": (qseries.qcatalan, ("n",)),
    "qbinom": (_qbinom_formula, ("n", "k")),
    "fh": (qseries.fh_formula, ("m", "n")),
    "fh-complement": (lambda m, n: qseries.fh_formula(m, n, complement=True), ("m", "n")),
    "thm-lopsided": (qseries.thm_lopsided, ("m", "n", "ell")),
    "thm-central-dsq": (qseries.thm_central_dsq, ("m", "n", "ell")),
    "thm-central-drect": (qseries.thm_central_drect, ("m", "n", "ell")),
    "thm-box-t1": (qseries.thm_box_t1, ("m", "n", "ell")),
    "combined-t1": (qseries.combined_t1, ("n", "ell")),
    "keith-km": (qseries.keith_km, ("m", "n", "ell")),
    "d-box": (qseries.d_box_gf, ("m", "n")),
    "dr-box": (qseries.dr_box_gf, ("m", "n")),
    "lgv": (qseries.lgv_product, ("m", "n", "ell", "i")),
    "rr-box": (qseries.rr_box, ("m", "n")),
    "ex83-box": (qseries.ex83_box, ("m", "n")),
}


def formula_names():
    return sorted(set(FORMULAS) | set(qseries.LIMIT_SERIES) | {"rank-parity"})


def evaluate_formula(name, D=None, **params):
    """Evaluate a named closed form; limits and rank-parity need the truncation order D"""
    key = canonical_name(name)
    if key == "rank-parity":
        if D is None:
            raise PreconditionError("rank-parity needs a truncation order D")
        return qseries.rank_parity_closed_form(D)
    if key in qseries.LIMIT_SERIES:
        if D is None:
            raise PreconditionError(f"{key} needs a truncation order D")
        return qseries.limit_series(key, D, **params)
    if key not in FORMULAS:
        raise UnknownNameError(f"Unknown formula {name!r}; known: {', '.join(formula_names())}")
    builder, names = FORMULAS[key]
    missing = [p for p in names if p not in params]
    if missing:
        raise PreconditionError(f"{key} needs parameters {missing}")
    value = builder(*[params[p] for p in names])
    if D is not None and isinstance(value, (QPoly, QTPoly)):
        value = QTPoly.lift(value).truncate_q(D)
    return value


def specialize_t1(value):
    """Set t = 1 in a (q, t) value"""
    if isinstance(value, QTPoly):
        return value.at_t1()
    if isinstance(value, TruncatedSeries) and "t" in value.variables:
        return value.specialize("t", 1)
    return value
