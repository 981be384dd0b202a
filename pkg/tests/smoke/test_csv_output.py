"""
CSV Output Tests

Series and table encoding, parsing back, and atomic writes.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from dephasim import experiments
from dephasim.errors import OutputError
from dephasim.measures import EntropyBase, MeasureSeries, SaturationReport
from utils.logger import get_logger

logger = get_logger(__name__)

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False, allow_subnormal=False)


def make_series(rows, n_envs: int = 1, base=EntropyBase.NATURAL) -> MeasureSeries:
    data = np.array(rows, dtype=float).reshape(len(rows), 4 + n_envs) if rows else np.zeros((0, 4 + n_envs))
    return MeasureSeries(
        times=data[:, 0], ew=data[:, 1], purity=data[:, 2], entropy=data[:, 3],
        betas=data[:, 4:], base=base,
    )


@pytest.mark.smoke
class TestSeriesCsv:
    """Series schema"""

    def test_header_and_format(self):
        """TEST 1: Column order, 12 significant digits, \\n newlines"""
        series = make_series([[0.0, 0.5, 1.0, 0.0, 0.0], [1.0 / 3.0, 0.25, 0.75, 0.1, 0.2]])
        text = experiments.emit_csv(series).decode("utf-8")
        lines = text.split("\n")
        assert lines[0] == "t,ew,purity,entropy_nats,beta_env0"
        assert lines[2].startswith("0.333333333333,")
        assert "\r" not in text
        assert text.endswith("\n")

    def test_empty_series_header_only(self):
        """TEST 2: Empty series gives just the header"""
        series = MeasureSeries(np.zeros(0), np.zeros(0), np.zeros(0), np.zeros(0))
        assert experiments.emit_csv(series) == b"t,ew,purity,entropy_nats\n"

    def test_bits_column(self):
        """TEST 3: Base-2 entropy is written as entropy_bits"""
        series = make_series([[0.0, 0.5, 1.0, 0.0, 0.0]], base=EntropyBase.TWO)
        header = experiments.emit_csv(series).decode().split("\n")[0]
        assert "entropy_bits" in header
        assert experiments.parse_series_csv(experiments.emit_csv(series)).base is EntropyBase.TWO

    @pytest.mark.property
    @given(st.lists(st.lists(finite, min_size=6, max_size=6), min_size=0, max_size=20))
    def test_round_trip(self, rows):
        """TEST 4: parse(emit(x)) equals x to 12 significant digits"""
        series = make_series(rows, n_envs=2)
        parsed = experiments.parse_series_csv(experiments.emit_csv(series))
        for name in ("times", "ew", "purity", "entropy"):
            np.testing.assert_allclose(getattr(parsed, name), getattr(series, name), rtol=1e-11, atol=0)
        if rows:
            np.testing.assert_allclose(parsed.betas, series.betas, rtol=1e-11, atol=0)

    def test_write_to_file(self, output_dir):
        """TEST 5: Destination file holds exactly the returned bytes"""
        series = make_series([[0.0, 0.5, 1.0, 0.0, 0.0]])
        path = output_dir / "nested" / "series.csv"
        payload = experiments.emit_csv(series, path)
        assert path.read_bytes() == payload
        assert [p.name for p in path.parent.iterdir()] == ["series.csv"]


@pytest.mark.smoke
class TestTableCsv:
    """Table schema"""

    def _row(self, time):
        report = SaturationReport(level=0.09375, saturation_time=time, rel_threshold=0.01)
        return experiments.TableRow(
            config="cse", g=0.1, ew=report, purity=report, entropy=report, beta_end=3.67879441171, t_max=10.0,
        )

    def test_columns_and_sentinel(self):
        """TEST 1: Fixed column order; beyond-grid times print as '>10'"""
        text = experiments.emit_csv([self._row(2.5), self._row(None)]).decode()
        lines = text.strip().split("\n")
        assert lines[0] == "config,g,ew_level,ew_st,p_level,p_st,h_level,h_st,beta_end"
        assert lines[1] == "cse,0.1,0.09375,2.5,0.09375,2.5,0.09375,2.5,3.67879441171"
        assert lines[2].split(",")[3] == ">10"

    def test_parse_back(self):
        """TEST 2: Numeric columns parse to float, S.T stays text"""
        frame = experiments.parse_table_csv(experiments.emit_csv([self._row(None)]))
        assert frame.loc[0, "g"] == pytest.approx(0.1)
        assert frame.loc[0, "p_st"] == ">10"


@pytest.mark.smoke
class TestAtomicWrite:
    """Temp-file rename"""

    def test_replaces_existing(self, output_dir):
        """TEST 1: Existing file is replaced whole"""
        path = output_dir / "a.csv"
        path.write_bytes(b"old contents that are longer")
        experiments.write_atomic(b"new", path)
        assert path.read_bytes() == b"new"

    def test_failure_reports_path(self, output_dir):
        """TEST 2: Parent that is a file raises OutputError with the path"""
        blocker = output_dir / "blocker"
        blocker.write_text("x")
        target = blocker / "out.csv"
        with pytest.raises(OutputError) as info:
            experiments.write_atomic(b"data", target)
        assert info.value.path == target
