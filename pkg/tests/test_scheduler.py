"""Time-split and per-entity share arithmetic."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compnoma import TimeAllocation, airtime, beta_fractions, theta_split


class TestBetaFractions:
    def test_three_pairs_two_oma(self):
        assert beta_fractions(3, 2) == pytest.approx(0.2)

    def test_single_entity(self):
        assert beta_fractions(1, 0) == 1.0

    def test_empty_phase(self):
        assert beta_fractions(0, 0) == 0.0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            beta_fractions(-1, 0)


class TestThetaSplit:
    def test_no_comp_entities(self):
        assert theta_split(0, [3, 4]) == 0.0

    def test_balanced(self):
        assert theta_split(4, [4, 2, 1]) == pytest.approx(0.5)

    def test_all_bs_idle(self):
        assert theta_split(3, [0, 0]) == 1.0
        assert theta_split(3, []) == 1.0

    def test_strictly_increasing_in_comp_entities(self):
        values = [theta_split(e, [4, 2]) for e in range(1, 10)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            theta_split(-1, [2])
        with pytest.raises(ValueError):
            theta_split(1, [-2])


class TestAirtime:
    def make_alloc(self):
        return TimeAllocation(
            theta_c={0: 0.4},
            beta_comp={0: 0.25},
            beta_noncomp={3: 0.5},
            bs_cluster={3: 0},
        )

    def test_comp_product(self):
        assert airtime(self.make_alloc(), "comp", 0) == pytest.approx(0.1)

    def test_noncomp_product(self):
        assert airtime(self.make_alloc(), "noncomp", 3) == pytest.approx(0.3)

    def test_unscheduled_entity_rejected(self):
        alloc = self.make_alloc()
        with pytest.raises(ValueError):
            airtime(alloc, "comp", 99)
        with pytest.raises(ValueError):
            airtime(alloc, "noncomp", 99)
        with pytest.raises(ValueError):
            airtime(alloc, "uplink", 0)

    def test_noncomp_phase_budget(self):
        # betas sum to 1 inside the phase, so airtimes sum to (1 - theta)
        alloc = TimeAllocation(
            theta_c={0: 0.4},
            beta_comp={},
            beta_noncomp={1: 0.25},
            bs_cluster={1: 0},
        )
        total = 4 * airtime(alloc, "noncomp", 1)
        assert total == pytest.approx(1 - 0.4, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(pairs=st.integers(0, 50), oma=st.integers(0, 50))
def test_beta_normalization(pairs, oma):
    beta = beta_fractions(pairs, oma)
    n = pairs + oma
    if n:
        assert beta * n == pytest.approx(1.0, abs=1e-12)
    else:
        assert beta == 0.0


@settings(max_examples=100, deadline=None)
@given(
    e_c=st.integers(0, 50),
    counts=st.lists(st.integers(0, 50), min_size=0, max_size=10),
    extra=st.integers(1, 5),
)
def test_theta_monotone_in_comp_entities(e_c, counts, extra):
    assert theta_split(e_c + extra, counts) >= theta_split(e_c, counts)
    assert 0.0 <= theta_split(e_c, counts) <= 1.0
