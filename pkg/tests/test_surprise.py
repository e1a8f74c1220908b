import math
import threading
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surpkit.partition import Partition
from surpkit.surprise import ln_choose, ln_factorial, partition_stats, surprise


def surprise_exact(F, M, n, ell):
    """Independent oracle: the cumulative tail in exact rational arithmetic."""
    total = Fraction(0)
    for j in range(ell, min(M, n) + 1):
        total += Fraction(math.comb(M, j) * math.comb(F - M, n - j), math.comb(F, n))
    return -math.log(total)


@st.composite
def surprise_inputs(draw, max_F=60):
    F = draw(st.integers(1, max_F))
    M = draw(st.integers(0, F))
    n = draw(st.integers(0, F))
    lo = max(0, n - (F - M))
    hi = min(M, n)
    ell = draw(st.integers(lo, hi))
    return F, M, n, ell


class TestLnFactorial:
    def test_base_cases(self):
        assert ln_factorial(0) == 0.0
        assert ln_factorial(1) == 0.0

    def test_ten(self):
        assert ln_factorial(10) == pytest.approx(math.log(3628800), rel=1e-12)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            ln_factorial(-1)

    @given(st.integers(0, 400))
    def test_against_exact_integer_factorial(self, m):
        assert ln_factorial(m) == pytest.approx(math.log(math.factorial(m)) if m > 1 else 0.0, rel=1e-12, abs=1e-12)

    def test_concurrent_extension(self):
        results = {}

        def worker(tag, m):
            results[tag] = ln_factorial(m)

        threads = [
            threading.Thread(target=worker, args=(i, 50_000 + 137 * i))
            for i in range(8)
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        for i in range(8):
            m = 50_000 + 137 * i
            assert results[i] == pytest.approx(math.lgamma(m + 1), rel=1e-12)


class TestLnChoose:
    def test_edges(self):
        assert ln_choose(7, 0) == 0.0
        assert ln_choose(7, 7) == 0.0

    def test_poker(self):
        assert ln_choose(52, 5) == pytest.approx(math.log(2598960), rel=1e-12)

    @pytest.mark.parametrize("m,k", [(5, -1), (5, 6), (0, 1)])
    def test_domain(self, m, k):
        with pytest.raises(ValueError):
            ln_choose(m, k)

    @given(st.integers(0, 300), st.data())
    def test_against_comb(self, m, data):
        k = data.draw(st.integers(0, m))
        assert ln_choose(m, k) == pytest.approx(
            math.log(math.comb(m, k)), rel=1e-11, abs=1e-11
        )


class TestSurprise:
    def test_zero_at_M_zero(self):
        assert surprise(55, 0, 16, 0) == 0.0

    def test_zero_whole_graph(self):
        assert surprise(55, 55, 16, 16) == 0.0

    @pytest.mark.parametrize(
        "F,M,n,ell",
        [(10, 11, 5, 0), (10, 5, 11, 0), (10, 5, 5, 6), (10, 8, 5, 1), (5, 3, 2, -1)],
    )
    def test_preconditions(self, F, M, n, ell):
        with pytest.raises(ValueError):
            surprise(F, M, n, ell)

    def test_toy_optimum_value(self):
        # partition {0,1,2,3},{4,5,6,7},{8},{9,10}: M=13, ell=13
        assert surprise(55, 13, 16, 13) == pytest.approx(
            surprise_exact(55, 13, 16, 13), rel=1e-9
        )

    @settings(max_examples=300)
    @given(surprise_inputs())
    def test_against_rational_oracle(self, args):
        F, M, n, ell = args
        expected = surprise_exact(F, M, n, ell)
        assert surprise(F, M, n, ell) == pytest.approx(expected, rel=1e-9, abs=1e-9)

    @given(surprise_inputs())
    def test_non_negative(self, args):
        assert surprise(*args) >= 0.0

    @given(surprise_inputs(max_F=40), st.data())
    def test_monotone_in_M(self, args, data):
        # with F, n, ell fixed, growing M cannot increase S
        F, M, n, ell = args
        M2 = data.draw(st.integers(M, F))
        if n - ell > F - M2:
            return
        assert surprise(F, M2, n, ell) <= surprise(F, M, n, ell) + 1e-9

    def test_large_instance_no_overflow(self):
        # K=1000 scale: F ~ 5e5 and a strongly modular partition
        F, M, n, ell = 499_500, 12_000, 5_000, 4_800
        s = surprise(F, M, n, ell)
        assert math.isfinite(s) and s > 1_000.0

    def test_extreme_value_representable(self):
        # surprise values in the thousands must come back finite
        s = surprise(499_500, 3_000, 3_200, 3_000)
        assert math.isfinite(s) and s > 5_000.0


class TestPartitionStats:
    def test_singletons(self, toy):
        M, ell, S = partition_stats(toy, Partition.singletons(toy.K))
        assert (M, ell, S) == (0, 0, 0.0)

    def test_all_in_one(self, toy):
        M, ell, S = partition_stats(toy, Partition([0] * 11))
        assert (M, ell) == (55, 16)

    def test_mismatch(self, toy):
        with pytest.raises(ValueError):
            partition_stats(toy, Partition.singletons(7))

    def test_relabeling_invariance(self, toy, truth):
        relabeled = Partition([[5, 9, 2][c] for c in truth.assign])
        assert partition_stats(toy, truth) == partition_stats(toy, relabeled)

    def test_modularity_partition_below_surprise_optimum(self, toy, truth, toy_surprise_oracle):
        # the 3-community split is not the surprise maximizer
        _, _, S3 = partition_stats(toy, truth)
        best, _ = toy_surprise_oracle
        assert S3 < best - 1e-6
