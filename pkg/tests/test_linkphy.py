import math

import pytest
from hypothesis import given, strategies as st

from ntnsim.linkphy import (
    MCS_TABLE_QAM64, CarrierConfig, LinkBudgetParams, McsEntry, NonPositiveInput,
    OverheadExceedsCapacity, bler, cn0_dbhz, fspl_db, mcs_threshold_db, select_mcs, snr_db,
    theoretical_throughput_bps, transport_block_bits,
)

C = 299_792_458.0
CARRIER = CarrierConfig()

# R x 1024 per index for the 64QAM PDSCH table
RATE_X1024 = [120, 157, 193, 251, 308, 379, 449, 526, 602, 679, 340, 378, 434, 490, 553, 616, 658,
              438, 466, 517, 567, 616, 666, 719, 772, 822, 873, 910, 948]


def test_mcs_table_data():
    assert len(MCS_TABLE_QAM64) == 29
    for i, e in enumerate(MCS_TABLE_QAM64):
        assert e.index == i
        assert e.modulation_order == (2 if i <= 9 else 4 if i <= 16 else 6)
        assert e.code_rate == RATE_X1024[i] / 1024
    se = [e.spectral_efficiency for e in MCS_TABLE_QAM64]
    dips = [i for i in range(len(se) - 1) if se[i + 1] < se[i]]
    assert dips == [16]  # 16QAM 658/1024 edges out 64QAM 438/1024 in the published table


def test_fspl_examples():
    oracle = 20 * math.log10(4 * math.pi * 38_000e3 * 14e9 / C)
    assert fspl_db(14e9, 38_000e3) == pytest.approx(oracle, abs=1e-9)
    assert abs(fspl_db(14e9, 38_000e3) - 206.97) < 0.05
    assert fspl_db(14e9, 76_000e3) - fspl_db(14e9, 38_000e3) == pytest.approx(20 * math.log10(2), abs=1e-9)
    assert fspl_db(28e9, 38_000e3) - fspl_db(14e9, 38_000e3) == pytest.approx(6.0206, abs=1e-4)
    with pytest.raises(NonPositiveInput):
        fspl_db(14e9, 0.0)


def test_cn0_and_snr():
    fspl = fspl_db(14e9, 38_000e3)
    p = LinkBudgetParams(54.0, 16.5, 14e9, 0.0, 5e6)
    cn0 = cn0_dbhz(p, 38_000e3)
    assert cn0 == pytest.approx(54.0 + 16.5 - fspl + 228.6, abs=1e-9)
    assert abs(cn0 - 92.13) < 0.05
    lossy = LinkBudgetParams(54.0, 16.5, 14e9, 3.0, 5e6)
    assert cn0_dbhz(lossy, 38_000e3) == pytest.approx(cn0 - 3.0, abs=1e-12)
    assert abs(snr_db(92.13, 5e6) - 25.14) < 0.01
    assert snr_db(92.13, 10e6) - snr_db(92.13, 5e6) == pytest.approx(-3.0103, abs=1e-4)
    assert snr_db(10 * math.log10(5e6), 5e6) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(NonPositiveInput):
        cn0_dbhz(p, 0.0)


def test_select_mcs_at_12db():
    m = select_mcs(12.0)
    assert m.index in (7, 8, 9)
    assert m.modulation_order == 2
    assert select_mcs(-20.0).index == 0
    assert select_mcs(40.0).index == MCS_TABLE_QAM64[-1].index


@given(st.floats(-30, 50), st.floats(-30, 50))
def test_select_mcs_monotone(a, b):
    lo, hi = sorted((a, b))
    assert select_mcs(lo).index <= select_mcs(hi).index


def test_threshold_formula():
    m = MCS_TABLE_QAM64[8]
    assert mcs_threshold_db(m) == pytest.approx(5.0 + 10 * math.log10(2 ** (2 * 602 / 1024) - 1), abs=1e-12)


def test_tbs_examples():
    qpsk54 = McsEntry(99, 2, 0.54)
    assert transport_block_bits(CARRIER, qpsk54) == 4212
    one = CarrierConfig(bandwidth_hz=180e3, prb_count=1, overhead_re_per_prb=0)
    assert transport_block_bits(one, McsEntry(0, 2, 1 - 1e-9)) <= 336
    with pytest.raises(OverheadExceedsCapacity):
        transport_block_bits(CarrierConfig(overhead_re_per_prb=168), MCS_TABLE_QAM64[0])


@given(st.integers(1, 100), st.integers(0, 167), st.sampled_from(MCS_TABLE_QAM64))
def test_tbs_capacity_bound(prb, overhead, mcs):
    cfg = CarrierConfig(bandwidth_hz=prb * 180e3, prb_count=prb, overhead_re_per_prb=overhead)
    tbs = transport_block_bits(cfg, mcs)
    assert 0 <= tbs <= prb * (168 - overhead) * mcs.modulation_order


def test_bler_shape():
    m = MCS_TABLE_QAM64[8]
    th = mcs_threshold_db(m)
    assert bler(th, m) == pytest.approx(0.5)
    assert bler(1e6, m) == 0.0 and bler(-1e6, m) == 1.0
    assert bler(th + 1.5, m) == pytest.approx(1 / (1 + math.exp(3)), rel=1e-12)
    assert bler(th + 1.5, m) < 0.05


@given(st.floats(-30, 40), st.floats(-30, 40), st.sampled_from(MCS_TABLE_QAM64))
def test_bler_monotone(a, b, m):
    lo, hi = sorted((a, b))
    assert 0.0 <= bler(hi, m) <= bler(lo, m) <= 1.0


def test_throughput_examples():
    assert theoretical_throughput_bps(CARRIER, McsEntry(99, 2, 0.54)) == 4.212e6
    first = next(m for m in MCS_TABLE_QAM64 if theoretical_throughput_bps(CARRIER, m) >= 5.3e6)
    assert first.modulation_order <= 4 and first.index <= 12
    assert theoretical_throughput_bps(CARRIER, McsEntry(99, 2, 1e-9)) == 0.0
    se = theoretical_throughput_bps(CARRIER, select_mcs(12.0)) / CARRIER.bandwidth_hz
    assert abs(se - 1.0) <= 0.25


@given(st.sampled_from(MCS_TABLE_QAM64), st.integers(1, 25))
def test_spectral_efficiency_bound(m, prb):
    cfg = CarrierConfig(prb_count=prb)
    assert theoretical_throughput_bps(cfg, m) <= cfg.bandwidth_hz * m.modulation_order * m.code_rate
