"""MCS table loading, efficiency lookup and rate computation."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from compnoma import ConfigError, FrameParams, McsTable, efficiency, link_rate, user_throughput
from compnoma.radio import db_to_linear


@pytest.fixture(scope="module")
def table():
    return McsTable.default()


class TestTableLoading:
    def test_default_table_shape(self, table):
        assert len(table.min_sinr_db) == 15
        assert table.min_sinr_db[0] == pytest.approx(-6.7)
        assert table.efficiency[-1] == pytest.approx(5.5547)

    def test_comments_and_blanks_ignored(self):
        t = McsTable.from_text("# comment\n\n-5 0.2  # trailing\n0 1.0\n")
        assert len(t.min_sinr_db) == 2

    def test_non_increasing_thresholds_rejected(self):
        with pytest.raises(ConfigError):
            McsTable.from_text("0 0.5\n0 0.7\n")
        with pytest.raises(ConfigError):
            McsTable.from_text("1 0.5\n0 0.7\n")

    def test_non_increasing_efficiency_rejected(self):
        with pytest.raises(ConfigError):
            McsTable.from_text("-5 0.5\n0 0.5\n")

    def test_malformed_rows_rejected(self):
        with pytest.raises(ConfigError):
            McsTable.from_text("-5\n")
        with pytest.raises(ConfigError):
            McsTable.from_text("-5 abc\n")
        with pytest.raises(ConfigError):
            McsTable.from_text("")

    def test_load_from_file(self, tmp_path):
        p = tmp_path / "mcs.txt"
        p.write_text("-3 0.3\n5 1.5\n")
        t = McsTable.load(p)
        assert t.efficiency[1] == 1.5


class TestEfficiency:
    def test_below_floor_is_zero(self, table):
        assert efficiency(db_to_linear(-30.0), table) == 0.0
        assert efficiency(0.0, table) == 0.0  # -inf dB

    def test_exact_threshold_closed_boundary(self, table):
        for th, eta in zip(table.min_sinr_db, table.efficiency):
            assert efficiency(db_to_linear(th), table) == eta

    def test_top_row_at_25_db(self, table):
        # linear scan oracle agrees
        want = 0.0
        for th, eta in zip(table.min_sinr_db, table.efficiency):
            if 25.0 >= th:
                want = eta
        assert want == table.efficiency[-1]
        assert efficiency(db_to_linear(25.0), table) == want

    def test_lookup_matches_linear_scan_oracle(self, table):
        sinr_db = np.random.default_rng(0).uniform(-20, 40, size=100_000)
        got = efficiency(db_to_linear(sinr_db), table)
        # oracle: scan all rows
        want = np.zeros_like(sinr_db)
        for th, eta in zip(table.min_sinr_db, table.efficiency):
            want[sinr_db >= th] = eta
        assert np.array_equal(got, want)


class TestLinkRate:
    def test_reference_grid_rate(self):
        # eta=1, 12 subcarriers x 14 symbols x 100 subchannels / 1 ms -> 16.8 Mbit/s
        frame = FrameParams()
        t = McsTable.from_text("-100 1.0\n")
        assert link_rate(1.0, frame, t) == pytest.approx(16.8e6)

    def test_zero_efficiency_zero_rate(self, table):
        assert link_rate(0.0, FrameParams(), table) == 0.0

    def test_rate_linear_in_subchannels(self, table):
        sinr = db_to_linear(12.0)
        r1 = link_rate(sinr, FrameParams(num_subchannels=100), table)
        r2 = link_rate(sinr, FrameParams(num_subchannels=200), table)
        assert r2 == pytest.approx(2 * r1)

    def test_invalid_frame_rejected(self):
        with pytest.raises(ConfigError):
            FrameParams(subframe_s=0.0)


class TestUserThroughput:
    def test_products(self):
        assert user_throughput(16.8e6, 0.1) == pytest.approx(1.68e6)
        assert user_throughput(16.8e6, 0.0) == 0.0
        assert user_throughput(16.8e6, 1.0) == pytest.approx(16.8e6)

    def test_airtime_range_enforced(self):
        with pytest.raises(ValueError):
            user_throughput(1e6, -0.1)
        with pytest.raises(ValueError):
            user_throughput(1e6, 1.1)


@settings(max_examples=100, deadline=None)
@given(
    sinr_db_lo=st.floats(-30, 40),
    delta=st.floats(0, 30),
    airtime=st.floats(0, 1),
)
def test_throughput_monotone_in_sinr(sinr_db_lo, delta, airtime):
    table = McsTable.default()
    frame = FrameParams()
    lo = link_rate(db_to_linear(sinr_db_lo), frame, table) * airtime
    hi = link_rate(db_to_linear(sinr_db_lo + delta), frame, table) * airtime
    assert hi >= lo
