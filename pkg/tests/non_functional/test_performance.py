"""
Performance tests for the verification sweeps
Runs the acceptance-sized grids and checks they pass within their time limits
"""

import statistics
import time

import pytest

from rankpath.foata import phi, phi_inv
from rankpath.greene_kleitman import gamma_inv_iter, gamma_iter
from rankpath.identities import CATALOG, verify
from rankpath.oracle import AboveLine, PartitionsOfN, PathsInGrid, enumerate_family
from rankpath.paths import inversions, profile
from rankpath.qseries import lopsided_limit, product_exponents
from rankpath.rank_raising import f, g, tau

RANKS_AT_LEAST_TWO = (0, 0, 1, 1, 2, 1, 2, 1, 1, 0, 1, 0, 1, 1, 1, 2, 2, 2, 1, 1, -1, 0, -1, 1, 0, 3, 3, 4, 3, 3)


def sweep(name, **overrides):
    """Run verify and fail with the first counterexample"""
    report = verify(name, {k: str(v) for k, v in overrides.items()})
    cx = report.counterexample
    assert report.passed, f"{name} fails at {cx.params}: {cx.left_text} != {cx.right_text}"
    return report


@pytest.mark.performance
@pytest.mark.slow
class TestClosedFormSweeps:
    """Test the finite-box closed forms on their full grids"""

    def test_lopsided_sweep(self):
        """Test thm-lopsided for m, n <= 7 and -n <= ell <= 1"""
        start_time = time.time()
        report = sweep('thm-lopsided', m='0..7', n='0..7', ell='-7..1')
        elapsed = time.time() - start_time

        assert len(report.cells) == 8 * sum(n + 2 for n in range(8))
        assert elapsed < 60.0

    def test_central_sweeps(self):
        """Test both central forms and the t = 1 form for m, n <= 7 and ell <= 4"""
        start_time = time.time()
        for name in ('thm-central-dsq', 'thm-central-drect', 'thm-box-t1'):
            sweep(name, m='0..7', n='0..7', ell='0..4')
        elapsed = time.time() - start_time

        assert elapsed < 120.0

    def test_keith_and_lgv(self):
        """Test the peak generating function for m + n <= 12 and the path pairs for m, n <= 5"""
        start_time = time.time()
        for m in range(13):
            sweep('keith-km', m=m, n=f'0..{12 - m}', ell='0..3')
        sweep('lgv', m='0..5', n='0..5', ell='0..2', i='0..5')
        sweep('lgv-bracket', m='0..5', n='0..5', ell='0..2', i='0..5')
        elapsed = time.time() - start_time

        assert elapsed < 60.0

    def test_finite_rank_examples(self):
        """Test the finite rank sets, the zero-minus-a limits and rank parity"""
        start_time = time.time()
        sweep('rr-box', m='0..6', n='0..6')
        sweep('ex83-box', m='2..6', n='2..6')
        sweep('rr1-limit', D='0..12')
        sweep('zero-minus-a-limit', a='1..3', D='0..10')
        sweep('rank-parity', D='0..8')
        elapsed = time.time() - start_time

        assert elapsed < 120.0


@pytest.mark.performance
@pytest.mark.slow
class TestBijectionSweeps:
    """Test the bijections exhaustively at acceptance sizes"""

    def test_phi_words(self):
        """Test phi sends maj to inv and inverts, for every word with m + n <= 14"""
        start_time = time.time()
        for size in range(15):
            for ones in range(size + 1):
                for w in enumerate_family(PathsInGrid(ones, size - ones)):
                    image = phi(w)
                    assert inversions(image) == profile(w).maj
                    assert phi_inv(image) == w, f"phi_inv(phi({w})) != {w}"
        elapsed = time.time() - start_time

        assert elapsed < 180.0

    def test_gamma_lifts(self):
        """Test gamma^(ell+1) inverts and lowers maj by ell+1 for m + n <= 12, ell <= 3"""
        start_time = time.time()
        for size in range(13):
            for n_up in range(size + 1):
                n_down = size - n_up
                for ell in range(4):
                    if n_up + ell < n_down or n_down < ell + 1:
                        continue
                    family = AboveLine(PathsInGrid(n_up, n_down), -ell, complement=True)
                    for w in enumerate_family(family):
                        lifted = gamma_iter(w, ell + 1)
                        assert profile(lifted).maj == profile(w).maj - ell - 1
                        assert gamma_inv_iter(lifted, ell + 1) == w
        elapsed = time.time() - start_time

        assert elapsed < 180.0

    def test_f_g_inverse_pair(self):
        """Test g(f(lambda)) = lambda for every tau <= 0 partition of size at most 22"""
        start_time = time.time()
        per_size = []
        for N in range(1, 23):
            size_start = time.time()
            for lam in enumerate_family(PartitionsOfN(N)):
                if tau(lam) <= 0:
                    assert g(f(lam)) == lam, f"g(f({lam})) != {lam}"
            per_size.append(time.time() - size_start)
        elapsed = time.time() - start_time

        assert elapsed < 180.0
        assert statistics.mean(per_size) < 10.0

    def test_theta_and_bridge(self):
        """Test theta on boxes up to 6x6 and the bridge up to 5x5"""
        start_time = time.time()
        sweep('theta-bijection', m='1..6', n='0..6', ell='0..3')
        theta_elapsed = time.time() - start_time
        sweep('bridge', m='0..5', n='0..5', ell='0..2')
        bridge_elapsed = time.time() - start_time - theta_elapsed

        assert theta_elapsed < 180.0
        assert bridge_elapsed < 30.0


@pytest.mark.performance
@pytest.mark.slow
class TestSeriesSweeps:
    """Test the counting identities and truncated limits"""

    def test_andrews_bressoud(self):
        """Test the modular counts for 4 <= M <= 8, N <= 30 and the corollary for N <= 25, ell <= 5"""
        start_time = time.time()
        sweep('andrews-bressoud', r='1..3', M='4..8', N='0..30')
        sweep('cor-AB', ell='0..5', N='0..25')
        elapsed = time.time() - start_time

        assert elapsed < 60.0

    def test_limits_to_order_twelve(self):
        """Test every limit identity at D = 12"""
        limits = [name for name, identity in CATALOG.items() if identity.params[0] == 'D' and name != 'rank-parity']
        assert limits

        start_time = time.time()
        timings = []
        for name in limits:
            report = sweep(name, D='12')
            timings.append(report.seconds)
        elapsed = time.time() - start_time

        assert elapsed < 60.0
        assert max(timings) < 30.0

    def test_ranks_at_least_two_exponents(self):
        """Test the product exponents of the ranks >= 2 limit to order 30"""
        start_time = time.time()
        exponents = product_exponents(lopsided_limit(30, 2), 30)
        elapsed = time.time() - start_time

        assert exponents == RANKS_AT_LEAST_TWO
        assert elapsed < 60.0
