"""
Closed-Form Regression Tests

CSE witness and purity formulas, asymptotic saturation levels of the
four couplings, and the beta-function against published closed forms
and direct quadrature.
"""

import math

import numpy as np
import pytest

from dephasim import channel, measures
from dephasim.experiments import asymptotic_levels, load_reference
from dephasim.model import NoiseParams, Partition, beta
from utils.logger import get_logger

logger = get_logger(__name__)

# Exact beta -> infinity levels for the four-qubit GHZ input.
EXACT_LEVELS = {
    "cse": (3 / 32, 19 / 32, 0.25 * math.log(8) + 0.75 * math.log(4 / 3)),
    "bse": (-3 / 16, 5 / 16, 0.5 * math.log(8) + 0.5 * math.log(2)),
    "tse": (-5 / 16, 3 / 16, 0.5 * math.log(8) + 0.5 * math.log(4)),
    "ise": (-3 / 8, 1 / 8, math.log(8)),
}


def cse_witness(b: float) -> float:
    return (3.0 + math.exp(-32.0 * b) + 12.0 * math.exp(-8.0 * b)) / 32.0


def cse_purity(b: float) -> float:
    return (19.0 + math.exp(-64.0 * b) + 12.0 * math.exp(-16.0 * b)) / 32.0


def trapezoid_beta(g: float, t: float, points: int = 4001) -> float:
    """Two-dimensional trapezoid rule for the double integral of (g/2) e^{-g|s - s'|} over [0, t]^2."""
    h = t / (points - 1)
    w = np.full(points, h)
    w[0] = w[-1] = h / 2
    # sum_ij w_i w_j K(|i - j| h) grouped by lag.
    lag_weights = np.correlate(w, w, mode="full")
    lags = np.abs(np.arange(-(points - 1), points))
    return float(np.sum(lag_weights * 0.5 * g * np.exp(-g * lags * h)))


@pytest.mark.regression
class TestCseClosedForms:
    """EW and purity of the collective coupling"""

    def test_fifty_settings(self, ghz):
        """TEST 1: EW and P match the closed forms to 1e-12 on 50 (g, t) pairs"""
        logger.info("=" * 60)
        logger.info("TEST: CSE closed forms")
        logger.info("=" * 60)
        rng = np.random.default_rng(50)
        cse = Partition.preset("cse")
        for g, t in zip(10 ** rng.uniform(-3, 1.5, 50), rng.uniform(0.0, 10.0, 50)):
            noise = NoiseParams(g=float(g))
            rho = channel.evolve(ghz, cse, noise, float(t))
            b = beta(noise, float(t))
            assert measures.entanglement_witness(rho, ghz) == pytest.approx(cse_witness(b), abs=1e-12)
            assert measures.purity(rho) == pytest.approx(cse_purity(b), abs=1e-12)
        logger.info("✓ 50 settings match")

    def test_coupling_scales_variance(self, ghz):
        """TEST 2: lambda enters only through lambda^2 beta"""
        cse = Partition.preset("cse")
        noise = NoiseParams(g=1.0, lambda_=0.5)
        rho = channel.evolve(ghz, cse, noise, 2.0)
        assert measures.purity(rho) == pytest.approx(cse_purity(0.25 * beta(noise, 2.0)), abs=1e-12)


@pytest.mark.regression
class TestSaturationLevels:
    """beta -> infinity limits of the four couplings"""

    @pytest.mark.parametrize("name", list(EXACT_LEVELS))
    def test_exact_levels(self, name):
        """TEST 1: Limit state measures equal the exact spectra to 1e-10"""
        levels = asymptotic_levels(Partition.preset(name))
        ew, purity, entropy = EXACT_LEVELS[name]
        assert levels["ew"] == pytest.approx(ew, abs=1e-10)
        assert levels["purity"] == pytest.approx(purity, abs=1e-10)
        assert levels["entropy"] == pytest.approx(entropy, abs=1e-10)

    @pytest.mark.parametrize("name", list(EXACT_LEVELS))
    def test_published_levels(self, name):
        """TEST 2: Within 0.05 of the printed table values"""
        published = load_reference()["levels"][name]
        levels = asymptotic_levels(Partition.preset(name))
        for key in ("ew", "purity", "entropy"):
            assert abs(levels[key] - published[key]) <= 0.05, f"{name} {key}"

    def test_long_time_limit(self, ghz, preset_partition):
        """TEST 3: Evolution at large beta converges to the limit state"""
        late = channel.evolve(ghz, preset_partition, NoiseParams(g=1.0), 200.0)
        limit = channel.asymptotic(ghz, preset_partition)
        np.testing.assert_allclose(late, limit, atol=1e-12)

    def test_ise_limit_diagonal_in_x_basis(self, ghz):
        """TEST 4: ISE limit is 1/8 on the even-parity X-basis states and nothing else"""
        limit_x = channel.hadamard_transform(channel.asymptotic(ghz, Partition.preset("ise")))
        even = [bin(i).count("1") % 2 == 0 for i in range(16)]
        np.testing.assert_allclose(limit_x, np.diag([0.125 if e else 0.0 for e in even]), atol=1e-14)


@pytest.mark.regression
class TestBetaValues:
    """Published closed forms and quadrature"""

    @pytest.mark.parametrize("g,t,expected", [
        (1e-4, 120.0, -9880.0 + 10000.0 * math.exp(-3.0 / 250.0)),
        (5e-3, 120.0, -80.0 + 200.0 * math.exp(-3.0 / 5.0)),
        (1e-2, 10.0, 100.0 * math.exp(-0.1) - 90.0),
        (1e-1, 10.0, 10.0 / math.e),
        (10.0, 10.0, 9.9 + math.exp(-100.0) / 10.0),
    ])
    def test_published_expressions(self, g, t, expected):
        """TEST 1: beta equals the published expressions to 1e-6"""
        assert beta(NoiseParams(g=g), t) == pytest.approx(expected, abs=1e-6)

    def test_reference_file_values(self):
        """TEST 2: Evaluated values stored with the reference tables"""
        for entry in load_reference()["beta_end"]:
            assert beta(NoiseParams(g=float(entry["g"])), float(entry["t"])) == pytest.approx(entry["value"], abs=1e-6)

    def test_quadrature(self):
        """TEST 3: Agrees with 2-D trapezoid quadrature on 10 random (g, t)"""
        rng = np.random.default_rng(10)
        for g, t in zip(rng.uniform(0.05, 1.0, 10), rng.uniform(0.1, 2.0, 10)):
            quad = trapezoid_beta(float(g), float(t))
            assert beta(NoiseParams(g=float(g)), float(t)) == pytest.approx(quad, abs=1e-6), f"g={g}, t={t}"
