"""
Unit tests for q-polynomials, truncated series and the closed forms
"""

from fractions import Fraction

import pytest

from rankpath.errors import IntegralityError, PreconditionError, UnknownNameError
from rankpath.oracle import rank_parity_gf
from rankpath.qseries import (
    ONE,
    QPoly,
    QTPoly,
    TruncatedSeries,
    ab_limit,
    canonical_name,
    catalan_qt,
    d_box_gf,
    drect_limit,
    ex83_box,
    finite_rank_gf,
    keith_km,
    lim_cq1,
    lim_cqt,
    limit_series,
    lopsided_limit,
    main_limit,
    product_exponents,
    q_integer,
    qbinom,
    qbinom_by_quotient,
    qcatalan,
    rank_parity_closed_form,
    rr_box,
    thm_box_t1,
    thm_central_drect,
    thm_central_dsq,
    thm_lopsided,
)


def qt(*rows):
    """QTPoly from rows of q-coefficients, row i multiplying t^i"""
    return QTPoly({i: QPoly(row) for i, row in enumerate(rows)})


def at_t1(series):
    return series.to_qtpoly().at_t1()


@pytest.mark.unit
class TestQPoly:
    """Test polynomial arithmetic and rendering"""

    def test_arithmetic(self):
        """Test sums, products, shifts and exact division"""
        p = QPoly([1, 1])
        assert p * p == QPoly([1, 2, 1])
        assert p - p == 0
        assert p.shift(2) == QPoly([0, 0, 1, 1])
        assert QPoly([0, 0, 1]).shift(-2) == ONE
        assert QPoly([1, 2, 1]).exact_div(p) == p
        with pytest.raises(ArithmeticError):
            QPoly([1, 0, 1]).exact_div(p)
        with pytest.raises(ArithmeticError):
            p.shift(-1)

    def test_rendering(self):
        """Test text and JSON forms"""
        assert str(QPoly([1, 0, -2, 1])) == "1 - 2*q^2 + q^3"
        assert str(QPoly()) == "0"
        assert QPoly([1, 0, 3]).to_json() == {"q^0": 1, "q^2": 3}
        assert str(d_box_gf(1, 1)) == "1 + t*q"
        assert d_box_gf(1, 1).to_json() == {"t^0": {"q^0": 1}, "t^1": {"q^1": 1}}

    def test_evaluation(self):
        """Test evaluating at q = 1 gives the plain count"""
        assert qbinom(6, 3)(1) == 20
        assert q_integer(4)(2) == 15


@pytest.mark.unit
class TestQAnalogues:
    """Test Gaussian binomials and q-Catalan numbers"""

    def test_small_values(self):
        """Test hand-computed values"""
        assert qbinom(4, 2) == QPoly([1, 1, 2, 1, 1])
        assert qbinom(3, 5) == 0
        assert qbinom(-1, 0) == 0
        assert qcatalan(3) == QPoly([1, 0, 1, 1, 1, 0, 1])

    def test_recurrences(self):
        """Test both Pascal recurrences and the Pochhammer quotient"""
        for n in range(1, 11):
            for k in range(1, n):
                assert qbinom(n, k) == qbinom(n - 1, k - 1) + qbinom(n - 1, k).shift(k)
                assert qbinom(n, k) == qbinom(n - 1, k - 1).shift(n - k) + qbinom(n - 1, k)
            for k in range(n + 1):
                assert qbinom(n, k) == qbinom_by_quotient(n, k), f"[{n},{k}] differs from the quotient"

    def test_catalan_qt(self):
        """Test C_n(q,t) at small n and its t = 1 value"""
        assert catalan_qt(0) == 1
        assert catalan_qt(2) == qt([1], [0, 0, 1])
        assert catalan_qt(3) == qt([1], [0, 0, 1, 1, 1], [0, 0, 0, 0, 0, 0, 1])
        for n in range(9):
            assert catalan_qt(n).at_t1() == qcatalan(n)
        with pytest.raises(PreconditionError):
            catalan_qt(-1)


@pytest.mark.unit
class TestClosedForms:
    """Test the finite-box closed forms on small values"""

    def test_durfee_box(self):
        """Test the Durfee-square generating function of the 2x2 box"""
        assert d_box_gf(2, 2) == qt([1], [0, 1, 2, 1], [0, 0, 0, 0, 1])
        for m in range(6):
            for n in range(6):
                assert d_box_gf(m, n).at_t1() == qbinom(m + n, m)

    def test_finite_rank_boxes(self):
        """Test the ranks-in-{0,-1} and ranks-in-{-1,-2} boxes"""
        assert rr_box(1, 2) == qt([1], [0, 1])
        assert rr_box(2, 1) == qt([1], [0, 1, 1])
        assert ex83_box(2, 2) == qt([1], [0, 0, 1])
        assert finite_rank_gf("rr_box", m=1, n=2) == rr_box(1, 2)
        with pytest.raises(PreconditionError):
            ex83_box(1, 3)

    def test_keith(self):
        """Test the peak generating function of a short example"""
        assert keith_km(2, 2, 0) == qt([], [0, 0, 1], [0, 0, 0, 0, 1])
        with pytest.raises(PreconditionError):
            keith_km(4, 1, 0)

    def test_lopsided_branches_overlap(self):
        """Test the Catalan and sum branches agree where both apply"""
        for n in range(6):
            assert thm_lopsided(n, n, 0, "catalan") == thm_lopsided(n, n, 0, "sum")
            assert thm_lopsided(n + 1, n, 1, "catalan") == thm_lopsided(n + 1, n, 1, "sum")
        with pytest.raises(PreconditionError):
            thm_lopsided(2, 3, 0, "catalan")
        with pytest.raises(UnknownNameError):
            thm_lopsided(2, 2, 0, "other")

    def test_central_forms_at_t1(self):
        """Test both central forms collapse to the same area polynomial at t = 1"""
        for m in range(5):
            for n in range(5):
                for ell in range(3):
                    if n + ell < m:
                        continue
                    assert thm_central_dsq(m, n, ell).at_t1() == thm_box_t1(m, n, ell)
                    assert thm_central_drect(m, n, ell).at_t1() == thm_box_t1(m, n, ell)
        assert thm_central_drect(3, 0, 3) == 1
        with pytest.raises(PreconditionError):
            thm_central_dsq(3, 1, 1)


@pytest.mark.unit
class TestTruncatedSeries:
    """Test truncated multivariate series"""

    def test_inverse_square_root(self):
        """Test (1-4z)^(-1/2) gives the central binomial coefficients"""
        s = TruncatedSeries(("z",), 4, {(0,): 1, (1,): -4})
        assert s.inv_sqrt().univariate() == [1, 2, 6, 20, 70]
        assert TruncatedSeries(("z",), 3, {(0,): 1, (1,): -1}).inverse().univariate() == [1, 1, 1, 1]

    def test_integrality(self):
        """Test non-integral coefficients are reported"""
        s = TruncatedSeries(("z",), 2, {(1,): Fraction(1, 2)})
        assert not s.is_integral()
        with pytest.raises(IntegralityError):
            s.check_integral()

    def test_inversion_preconditions(self):
        """Test series without an invertible constant term are rejected"""
        with pytest.raises(PreconditionError):
            TruncatedSeries(("z",), 2, {(1,): 1}).inverse()
        with pytest.raises(PreconditionError):
            TruncatedSeries(("z",), 2, {(0,): 4}).inv_sqrt()

    def test_specialize(self):
        """Test setting a secondary variable to a number"""
        s = TruncatedSeries(("z", "t"), 2, {(1, 1): 2, (1, 0): 1})
        assert s.specialize("t", 1).coefficient(z=1) == 3
        with pytest.raises(PreconditionError):
            s.specialize("z", 1)

    def test_rank_parity(self):
        """Test the closed form against brute force, and the first two z-coefficients"""
        closed = rank_parity_closed_form(4)
        assert closed.coefficient(z=0) == 1
        assert closed.coefficient(z=1, u=1) == 1
        assert closed.coefficient(z=1) == 1
        assert closed == rank_parity_gf(4)


@pytest.mark.unit
class TestLimits:
    """Test truncated limit series"""

    def test_product_exponents(self):
        """Test product exponents recover the omitted part"""
        D = 12
        assert product_exponents(lim_cq1(D), D) == (0,) + (1,) * (D - 1)
        assert product_exponents(ab_limit(D, 2), D) == (1, 1, 0) + (1,) * (D - 3)

    def test_t1_values_omit_a_part(self):
        """Test the t = 1 limits equal partitions avoiding the part ell + 1"""
        D = 12
        assert at_t1(lim_cqt(D)) == at_t1(lim_cq1(D))
        for ell in range(3):
            assert at_t1(main_limit(D, ell)) == at_t1(ab_limit(D, ell))
            assert at_t1(drect_limit(D, ell)) == at_t1(ab_limit(D, ell))

    def test_catalan_limit_is_stable(self):
        """Test C_n(q,1) agrees with prod_{i>=2} 1/(1-q^i) through q^n"""
        for n in range(13):
            limit = at_t1(limit_series("eq:limCq1", n))
            assert catalan_qt(n).at_t1().truncate(n) == limit, f"C_{n}(q,1) leaves the limit below q^{n + 1}"
        assert catalan_qt(3).at_t1().truncate(4) != at_t1(lim_cq1(4))

    def test_registry(self):
        """Test name normalisation and parameter checks"""
        assert canonical_name("eq:limCn") == "eq-limCn"
        assert limit_series("eq:limCq1", 6) == lim_cq1(6)
        with pytest.raises(UnknownNameError):
            limit_series("no-such-limit", 6)
        with pytest.raises(PreconditionError):
            limit_series("cor-AB-limit", 6)
        with pytest.raises(PreconditionError):
            limit_series("eq-limCq1", -1)

    def test_ranks_at_least_two_exponents(self):
        """Test the product exponents of the all-ranks-at-least-2 limit"""
        expected = (0, 0, 1, 1, 2, 1, 2, 1, 1, 0, 1, 0, 1, 1, 1, 2, 2, 2, 1, 1, -1, 0, -1, 1, 0, 3, 3, 4, 3, 3)
        assert product_exponents(lopsided_limit(30, 2), 30) == expected
