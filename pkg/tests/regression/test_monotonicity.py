"""
Monotonicity and Ordering Regression Tests

Qualitative behaviour of the measure curves for GHZ input: decay of
the witness and purity, growth of entropy, faster decay at larger g,
the coupling ordering on long horizons, and saturation times.
"""

import numpy as np
import pytest

from dephasim.experiments import build_table, get_table_preset, series_for, time_grid
from dephasim.model import NoiseParams, Partition
from utils.assertions import (
    assert_nondecreasing,
    assert_nonincreasing,
    assert_pointwise_ordered,
    assert_within_relative,
)
from utils.constants import PRESET_ORDER
from utils.logger import get_logger

logger = get_logger(__name__)

G_SWEEP = (1e-2, 1e-1, 1.0, 10.0)
GRID = time_grid(10.0, 400)


@pytest.fixture(scope="module")
def sweep():
    """{(preset, g): MeasureSeries} on the shared 400-point grid."""
    return {
        (name, g): series_for(Partition.preset(name), NoiseParams(g=g), GRID)
        for name in PRESET_ORDER
        for g in G_SWEEP
    }


@pytest.mark.regression
class TestMeasureMonotonicity:
    """Witness and purity decay, entropy grows"""

    @pytest.mark.parametrize("name", PRESET_ORDER)
    @pytest.mark.parametrize("g", G_SWEEP)
    def test_monotone_curves(self, sweep, name, g):
        """TEST 1: EW and P nonincreasing, H nondecreasing"""
        series = sweep[(name, g)]
        assert_nonincreasing(series.ew, atol=1e-12, label=f"EW {name} g={g}")
        assert_nonincreasing(series.purity, atol=1e-12, label=f"P {name} g={g}")
        assert_nondecreasing(series.entropy, atol=1e-12, label=f"H {name} g={g}")

    @pytest.mark.parametrize("name", PRESET_ORDER)
    def test_larger_g_decays_faster(self, sweep, name):
        """TEST 2: Purity curves are ordered by g"""
        for slow, fast in zip(G_SWEEP, G_SWEEP[1:]):
            assert_pointwise_ordered(
                sweep[(name, fast)].purity, sweep[(name, slow)].purity,
                atol=1e-12, label=f"P {name} g={fast} <= g={slow}",
            )

    @pytest.mark.parametrize("name", PRESET_ORDER)
    def test_initial_values(self, sweep, name):
        """TEST 3: Every curve starts at EW=0.5, P=1, H=0"""
        series = sweep[(name, 1.0)]
        assert series.ew[0] == pytest.approx(0.5, abs=1e-12)
        assert series.purity[0] == pytest.approx(1.0, abs=1e-12)
        assert series.entropy[0] == pytest.approx(0.0, abs=1e-10)

    def test_witness_crossing_by_coupling(self, sweep):
        """TEST 4: CSE never crosses zero, ISE does"""
        assert np.all(sweep[("cse", 10.0)].ew > 0.0)
        assert np.any(sweep[("ise", 10.0)].ew < 0.0)


@pytest.mark.regression
@pytest.mark.slow
class TestCouplingOrdering:
    """Long-horizon comparison of the four couplings"""

    @pytest.mark.parametrize("g", [1e-4, 5e-3])
    def test_entropy_and_purity_ordering(self, g):
        """TEST 1: H_CSE <= H_BSE <= H_TSE <= H_ISE and P reversed, pointwise on [0, 120]"""
        logger.info("=" * 60)
        logger.info(f"TEST: coupling ordering g={g}")
        logger.info("=" * 60)
        grid = time_grid(120.0, 1200)
        curves = [series_for(Partition.preset(name), NoiseParams(g=g), grid) for name in PRESET_ORDER]
        for (lo_name, lo), (hi_name, hi) in zip(zip(PRESET_ORDER, curves), zip(PRESET_ORDER[1:], curves[1:])):
            assert_pointwise_ordered(lo.entropy, hi.entropy, atol=1e-10, label=f"H_{lo_name} <= H_{hi_name}")
            assert_pointwise_ordered(hi.purity, lo.purity, atol=1e-10, label=f"P_{hi_name} <= P_{lo_name}")
        logger.info("✓ Ordering holds at every grid point")


@pytest.mark.regression
class TestSaturationTimes:
    """CSE purity saturation against the published readings"""

    @pytest.fixture(scope="class")
    def table1(self):
        return {row.g: row for row in build_table(get_table_preset("table1"))}

    @pytest.mark.parametrize("g,published", [(0.1, 3.0), (0.01, 9.0)])
    def test_cse_purity_within_thirty_percent(self, table1, g, published):
        """TEST 1: Computed saturation time within 30% of the table"""
        report = table1[g].purity
        assert not report.beyond_grid
        assert_within_relative(report.saturation_time, published, 0.30, label=f"P saturation g={g}")

    def test_faster_noise_saturates_earlier(self, table1):
        """TEST 2: Saturation time decreases with g"""
        times = [table1[g].purity.saturation_time for g in (0.01, 0.1, 10.0)]
        assert times == sorted(times, reverse=True)
