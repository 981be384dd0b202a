"""
Measure Tests

Witness, purity, entropy, series containers and saturation detection.
"""

import math

import numpy as np
import pytest

from dephasim import channel, linalg, measures
from dephasim.errors import DimensionError, InvalidStateError, ParameterError
from dephasim.measures import EntropyBase, MeasureSeries
from dephasim.model import InitialState, NoiseParams, Partition, initial_density
from utils.logger import get_logger

logger = get_logger(__name__)


@pytest.mark.smoke
class TestPointMeasures:
    """EW, purity, entropy of single states"""

    def test_ghz_values(self, ghz):
        """TEST 1: Pure GHZ: EW = 1/2, P = 1, H = 0"""
        assert measures.entanglement_witness(ghz, ghz) == pytest.approx(0.5, abs=1e-15)
        assert measures.purity(ghz) == pytest.approx(1.0, abs=1e-15)
        assert measures.shannon_entropy(ghz) == pytest.approx(0.0, abs=1e-12)

    def test_maximally_mixed_values(self, ghz, maximally_mixed):
        """TEST 2: I/16: EW = -7/16, P = 1/16, H = ln 16"""
        assert measures.entanglement_witness(maximally_mixed, ghz) == pytest.approx(1 / 16 - 0.5, abs=1e-15)
        assert measures.purity(maximally_mixed) == pytest.approx(1 / 16, abs=1e-15)
        assert measures.shannon_entropy(maximally_mixed) == pytest.approx(measures.max_entropy(16), abs=1e-12)

    def test_entropy_in_bits(self, maximally_mixed):
        """TEST 3: I/16 carries 4 bits"""
        assert measures.shannon_entropy(maximally_mixed, EntropyBase.TWO) == pytest.approx(4.0, abs=1e-12)

    def test_linear_entropy(self, maximally_mixed):
        """TEST 4: 1 - P"""
        assert measures.linear_entropy(maximally_mixed) == pytest.approx(15 / 16, abs=1e-15)

    def test_witness_dimension_mismatch(self, ghz):
        """TEST 5: Different sizes raise DimensionError"""
        with pytest.raises(DimensionError):
            measures.entanglement_witness(np.eye(8) / 8, ghz)

    def test_negative_eigenvalue_rejected(self):
        """TEST 6: Eigenvalue below the clamp floor raises InvalidStateError"""
        rho = np.diag([1.1, -0.1]).astype(complex)
        with pytest.raises(InvalidStateError):
            measures.shannon_entropy(rho)

    def test_rounding_negatives_clamped(self):
        """TEST 7: Eigenvalues in [floor, 0) count as zero"""
        rho = np.diag([1.0 + 1e-13, -1e-13]).astype(complex)
        spectrum = measures.clamped_spectrum(rho)
        assert spectrum.min() == 0.0
        assert measures.shannon_entropy(rho) == pytest.approx(0.0, abs=1e-11)

    @pytest.mark.parametrize("text,expected", [
        ("nats", EntropyBase.NATURAL), ("natural", EntropyBase.NATURAL),
        ("bits", EntropyBase.TWO), ("2", EntropyBase.TWO),
    ])
    def test_entropy_base_parse(self, text, expected):
        """TEST 8: Base aliases"""
        assert EntropyBase.parse(text) is expected

    def test_entropy_base_unknown(self):
        """TEST 9: Unknown base raises ParameterError"""
        with pytest.raises(ParameterError):
            EntropyBase.parse("dits")

    def test_purity_matches_spectrum(self, random_states):
        """TEST 10: Tr[rho^2] equals the sum of squared eigenvalues"""
        for rho in random_states[:20]:
            spectrum = linalg.hermitian_eigenvalues(rho)
            assert measures.purity(rho) == pytest.approx(float(np.sum(spectrum ** 2)), abs=1e-9)

    def test_witness_explicit_trace_form(self):
        """TEST 11: EW at p < 1 equals -Tr[(I/2 - rho0) rho] built explicitly"""
        rho0 = initial_density(InitialState(4, 0.6))
        rho = channel.evolve(rho0, Partition.preset("bse"), NoiseParams(g=1.0), 1.0)
        expected = -np.trace((0.5 * np.eye(16) - rho0) @ rho).real
        assert measures.entanglement_witness(rho, rho0) == pytest.approx(expected, abs=1e-12)


@pytest.mark.smoke
class TestMeasureSeries:
    """Series container"""

    def test_column_aliases(self):
        """TEST 1: t/p/h aliases resolve"""
        series = MeasureSeries(np.array([0.0, 1.0]), np.array([0.5, 0.4]), np.array([1.0, 0.9]), np.array([0.0, 0.1]))
        np.testing.assert_array_equal(series.column("t"), [0.0, 1.0])
        np.testing.assert_array_equal(series.column("p"), [1.0, 0.9])
        np.testing.assert_array_equal(series.column("entropy_nats"), [0.0, 0.1])
        assert len(series) == 2
        with pytest.raises(ParameterError):
            series.column("concurrence")

    def test_length_mismatch(self):
        """TEST 2: Columns must share the time grid length"""
        with pytest.raises(ParameterError):
            MeasureSeries(np.zeros(3), np.zeros(2), np.zeros(3), np.zeros(3))

    def test_measure_series_from_states(self, ghz, maximally_mixed):
        """TEST 3: One row per state"""
        series = measures.measure_series([ghz, maximally_mixed], ghz, [0.0, 1.0])
        np.testing.assert_allclose(series.ew, [0.5, 1 / 16 - 0.5], atol=1e-15)
        np.testing.assert_allclose(series.entropy, [0.0, math.log(16)], atol=1e-12)


@pytest.mark.smoke
class TestSaturation:
    """Band entry time"""

    def test_first_entry(self):
        """TEST 1: First time inside the relative band"""
        report = measures.saturation([0, 1, 2, 3], [1.0, 0.5, 0.2, 0.0], 0.0, rel_threshold=0.25)
        assert report.saturation_time == 2.0
        assert report.level == 0.0
        assert not report.beyond_grid
        assert report.format_time(3.0) == "2"

    def test_never_reached(self):
        """TEST 2: None and the '>t_max' sentinel"""
        report = measures.saturation([0, 5, 10], [1.0, 0.9, 0.8], 0.0, rel_threshold=0.05)
        assert report.saturation_time is None
        assert report.beyond_grid
        assert report.format_time(10.0) == ">10"

    def test_default_threshold_from_config(self):
        """TEST 3: Default band width comes from config"""
        report = measures.saturation([0, 1], [1.0, 0.0], 0.0)
        assert report.rel_threshold == pytest.approx(0.01)

    @pytest.mark.parametrize("threshold", [0.0, 1.0, -0.1])
    def test_invalid_threshold(self, threshold):
        """TEST 4: Threshold must lie in (0, 1)"""
        with pytest.raises(ParameterError):
            measures.saturation([0, 1], [1.0, 0.0], 0.0, rel_threshold=threshold)

    def test_empty_and_unsorted(self):
        """TEST 5: Empty series or unsorted grid raise ParameterError"""
        with pytest.raises(ParameterError):
            measures.saturation([], [], 0.0)
        with pytest.raises(ParameterError):
            measures.saturation([1, 0], [1.0, 0.0], 0.0)

    def test_witness_crossing(self):
        """TEST 6: First negative witness time, else None"""
        times = np.array([0.0, 1.0, 2.0])
        crossing = MeasureSeries(times, np.array([0.5, 0.1, -0.2]), np.ones(3), np.zeros(3))
        staying = MeasureSeries(times, np.array([0.5, 0.2, 0.1]), np.ones(3), np.zeros(3))
        assert measures.witness_crossing(crossing) == 2.0
        assert measures.witness_crossing(staying) is None
