"""
Experiments

Named reproduction scenarios for the published figures and saturation
tables, plus CSV output.

Scenarios:
- fig2..fig5:  one coupling each (cse, bse, tse, ise), g=1, t in [0, 2]
- fig6..fig9:  one coupling each, g in {1e-2, 1e-1, 10}, t in [0, 10]
- fig10:       all couplings, g in {1e-4, 5e-3}, t in [0, 120]

Table presets:
- table1..table4: one coupling each, g in {1e-2, 1e-1, 10}, t_max=10
- comparative:    all couplings, g in {1e-4, 5e-3}, t_max=120

Usage:
    from dephasim.experiments import SCENARIOS, run_scenario, emit_csv

    results = run_scenario(SCENARIOS["fig2"])
    emit_csv(results[(1.0, "cse")], "fig2_cse.csv")
"""

import io
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import yaml

from config.settings import config
from dephasim import channel, measures
from dephasim.errors import OutputError, ParameterError, ScenarioError
from dephasim.measures import EntropyBase, MeasureSeries, SaturationReport
from dephasim.model import InitialState, NoiseParams, Partition, beta, initial_density
from utils.constants import CSV_FLOAT_FORMAT, CSV_NEWLINE, PRESET_ORDER, SERIES_COLUMNS, TABLE_COLUMNS
from utils.decorators import measure_performance
from utils.retry import retry_io
from utils.logger import get_logger

logger = get_logger(__name__)

REFERENCE_FILE = Path(__file__).parent.parent / "data" / "reference" / "published_tables.yaml"
MEASURE_NAMES = ("ew", "purity", "entropy")


# ==================== SCENARIOS ====================

def default_steps(t_max: float) -> int:
    """Grid size by horizon: short_steps up to long_threshold, long_steps beyond."""
    grids = config.grids
    return grids["short_steps"] if t_max <= grids["long_threshold"] else grids["long_steps"]


def time_grid(t_max: float, steps: int) -> np.ndarray:
    """steps uniform points on [0, t_max]; steps=1 gives [0]."""
    if steps < 1:
        raise ParameterError(f"steps must be >= 1, got {steps}")
    if not (t_max >= 0.0):
        raise ParameterError(f"t_max must be non-negative, got {t_max}")
    if steps == 1:
        return np.zeros(1)
    return np.linspace(0.0, t_max, steps)


@dataclass(frozen=True)
class Scenario:
    """
    One reproducible experiment.

    Attributes:
        name: Scenario id
        partitions: Preset names or explicit assignments ("0,0,1,1")
        g_values: Inverse correlation times to sweep
        t_max: Horizon
        steps: Grid points (None: default_steps(t_max))
        lambda_: Coupling
        p: GHZ weight of the initial state
        n_qubits: Register size
        base: Entropy base
        measures: Columns written by write_scenario
    """

    name: str
    partitions: Tuple[str, ...]
    g_values: Tuple[float, ...]
    t_max: float
    steps: Optional[int] = None
    lambda_: float = 1.0
    p: float = 1.0
    n_qubits: int = 4
    base: EntropyBase = EntropyBase.NATURAL
    measures: Tuple[str, ...] = ("ew", "purity", "entropy")

    def __post_init__(self):
        unknown = set(self.measures) - set(MEASURE_NAMES)
        if unknown:
            raise ParameterError(f"Unknown measures {sorted(unknown)}; choose from {list(MEASURE_NAMES)}")

    @property
    def grid(self) -> np.ndarray:
        steps = default_steps(self.t_max) if self.steps is None else self.steps
        return time_grid(self.t_max, steps)


def _figure_scenarios() -> Dict[str, Scenario]:
    scenarios = {}
    for offset, preset in enumerate(PRESET_ORDER):
        scenarios[f"fig{2 + offset}"] = Scenario(f"fig{2 + offset}", (preset,), (1.0,), 2.0)
        scenarios[f"fig{6 + offset}"] = Scenario(f"fig{6 + offset}", (preset,), (1e-2, 1e-1, 10.0), 10.0)
    scenarios["fig10"] = Scenario("fig10", PRESET_ORDER, (1e-4, 5e-3), 120.0)
    return scenarios


SCENARIOS: Dict[str, Scenario] = _figure_scenarios()

TABLE_PRESETS: Dict[str, Scenario] = {
    **{
        f"table{1 + i}": Scenario(f"table{1 + i}", (preset,), (1e-2, 1e-1, 10.0), 10.0)
        for i, preset in enumerate(PRESET_ORDER)
    },
    "comparative": Scenario("comparative", PRESET_ORDER, (1e-4, 5e-3), 120.0),
}


def get_scenario(name: str) -> Scenario:
    """Look up a figure scenario by name."""
    try:
        return SCENARIOS[name.lower()]
    except KeyError:
        raise ScenarioError(f"Unknown scenario {name!r}; choose from {sorted(SCENARIOS)}") from None


def get_table_preset(name: str) -> Scenario:
    """Look up a table preset by name."""
    try:
        return TABLE_PRESETS[name.lower()]
    except KeyError:
        raise ScenarioError(f"Unknown table preset {name!r}; choose from {sorted(TABLE_PRESETS)}") from None


def series_for(
    partition: Partition,
    noise: NoiseParams,
    times: Sequence[float],
    p: float = 1.0,
    base: EntropyBase = EntropyBase.NATURAL,
    threads: int = None,
) -> MeasureSeries:
    """Evolve the GHZ-mixture initial state and measure it on a grid."""
    rho0 = initial_density(InitialState(partition.n_qubits, p))
    states = channel.evolve_series(rho0, partition, noise, times, threads=threads)
    betas = np.array([[beta(noise, t)] * partition.n_envs for t in times], dtype=float)
    series = measures.measure_series(states, rho0, times, betas=betas, base=base)
    series.meta.update({"partition": partition.label, "g": noise.g, "lambda": noise.lambda_, "p": p})
    return series


@measure_performance
def run_scenario(scenario: Scenario, threads: int = None) -> Dict[Tuple[float, str], MeasureSeries]:
    """
    Compute every (g, partition) series of a scenario.

    Returns:
        {(g, partition label): MeasureSeries}, in g-major order
    """
    partitions = [Partition.parse(text, scenario.n_qubits) for text in scenario.partitions]
    grid = scenario.grid
    threads = config.threads if threads is None else threads
    logger.info(
        f"Scenario {scenario.name}: partitions={[p.label for p in partitions]}, "
        f"g={list(scenario.g_values)}, t_max={scenario.t_max}, points={len(grid)}"
    )

    jobs = [(g, part) for g in scenario.g_values for part in partitions]

    def run(job):
        g, part = job
        noise = NoiseParams(g=g, lambda_=scenario.lambda_)
        return series_for(part, noise, grid, scenario.p, scenario.base, threads=1)

    if threads <= 1 or len(jobs) == 1:
        results = [run(job) for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    return {(g, part.label): series for (g, part), series in zip(jobs, results)}


# ==================== TABLES ====================

@dataclass(frozen=True)
class TableRow:
    """Saturation levels and times for one (coupling, g) pair."""

    config: str
    g: float
    ew: SaturationReport
    purity: SaturationReport
    entropy: SaturationReport
    beta_end: float
    t_max: float
    witness_crossing: Optional[float] = None
    remark: str = ""

    def as_record(self) -> dict:
        """Row in the table CSV schema."""
        return {
            "config": self.config,
            "g": self.g,
            "ew_level": self.ew.level,
            "ew_st": self.ew.format_time(self.t_max),
            "p_level": self.purity.level,
            "p_st": self.purity.format_time(self.t_max),
            "h_level": self.entropy.level,
            "h_st": self.entropy.format_time(self.t_max),
            "beta_end": self.beta_end,
        }


def asymptotic_levels(partition: Partition, p: float = 1.0, base: EntropyBase = EntropyBase.NATURAL) -> Dict[str, float]:
    """EW, purity and entropy of the beta -> infinity state."""
    rho0 = initial_density(InitialState(partition.n_qubits, p))
    limit = channel.asymptotic(rho0, partition)
    return {
        "ew": measures.entanglement_witness(limit, rho0),
        "purity": measures.purity(limit),
        "entropy": measures.shannon_entropy(limit, base),
    }


@measure_performance
def build_table(preset: Scenario, rel_threshold: float = None, threads: int = None) -> List[TableRow]:
    """Saturation rows for every (coupling, g) of a table preset."""
    results = run_scenario(preset, threads=threads)
    partitions = [Partition.parse(text, preset.n_qubits) for text in preset.partitions]
    levels = {part.label: asymptotic_levels(part, preset.p, preset.base) for part in partitions}

    rows = []
    for part in partitions:
        for g in preset.g_values:
            series = results[(g, part.label)]
            lv = levels[part.label]
            rows.append(TableRow(
                config=part.label,
                g=g,
                ew=measures.saturation(series.times, series.ew, lv["ew"], rel_threshold),
                purity=measures.saturation(series.times, series.purity, lv["purity"], rel_threshold),
                entropy=measures.saturation(series.times, series.entropy, lv["entropy"], rel_threshold),
                beta_end=float(series.betas[-1, 0]),
                t_max=float(series.times[-1]),
                witness_crossing=measures.witness_crossing(series),
            ))
    return _rank_remarks(rows) if len(partitions) > 1 else rows


def _rank_remarks(rows: List[TableRow]) -> List[TableRow]:
    """Tag the couplings with the lowest and highest asymptotic entropy."""
    by_config = {}
    for row in rows:
        by_config.setdefault(row.config, row.entropy.level)
    ordered = sorted(by_config, key=by_config.get)
    least, most = ordered[0], ordered[-1]
    tagged = []
    for row in rows:
        remark = "least destructive" if row.config == least else "most destructive" if row.config == most else ""
        tagged.append(replace(row, remark=remark))
    return tagged


def load_reference(path: Union[str, Path] = REFERENCE_FILE) -> dict:
    """Published comparison values (never used as computation inputs)."""
    with open(path, "r", encoding="utf-8") as f:
        return yaml.safe_load(f)


LEVEL_TOLERANCE = 0.05


@dataclass(frozen=True)
class TableReport:
    """Computed rows plus side-by-side comparisons with published values."""

    rows: Dict[str, List[TableRow]]
    levels: pd.DataFrame
    saturation_times: pd.DataFrame


def _published_time(value) -> Optional[float]:
    if isinstance(value, str) and value.startswith(">"):
        return None
    return float(value)


def level_comparison(reference: dict = None, configs: Sequence[str] = PRESET_ORDER) -> pd.DataFrame:
    """Derived asymptotic levels against the published ones, with absolute differences."""
    reference = reference or load_reference()
    records = []
    for preset_name in configs:
        derived = asymptotic_levels(Partition.preset(preset_name))
        published = reference["levels"][preset_name]
        for key in MEASURE_NAMES:
            diff = abs(derived[key] - float(published[key]))
            records.append({
                "config": preset_name,
                "measure": key,
                "derived": derived[key],
                "published": float(published[key]),
                "abs_diff": diff,
                "within_tolerance": diff <= LEVEL_TOLERANCE,
                "source": published["source"],
            })
    return pd.DataFrame(records)


def saturation_comparison(table_name: str, rows: Sequence[TableRow], reference: dict = None) -> pd.DataFrame:
    """
    Computed saturation times of one table against the published readings.

    rel_diff is NaN when either side lies beyond its grid; witness_crossing is
    NaN when the witness never turns negative. Both columns are float.
    """
    reference = reference or load_reference()
    computed = {(row.config, row.g): row for row in rows}
    records = []
    for config_name, entries in reference["saturation_times"][table_name].items():
        for entry in entries:
            row = computed[(config_name, float(entry["g"]))]
            for key, report in (("ew", row.ew), ("purity", row.purity), ("entropy", row.entropy)):
                published = _published_time(entry[key])
                computed_time = report.saturation_time
                rel = math.nan
                if published is not None and computed_time is not None:
                    rel = abs(computed_time - published) / published
                records.append({
                    "table": table_name,
                    "config": config_name,
                    "g": float(entry["g"]),
                    "measure": key,
                    "computed": report.format_time(row.t_max),
                    "published": str(entry[key]),
                    "rel_diff": rel,
                    "witness_crossing": math.nan if row.witness_crossing is None else row.witness_crossing,
                    "remark": row.remark,
                })
    return pd.DataFrame(records).astype({"rel_diff": float, "witness_crossing": float})


@measure_performance
def reproduce_tables(rel_threshold: float = None, threads: int = None, reference: dict = None) -> TableReport:
    """
    Build every table preset and compare with the published values.

    Level comparisons carry the absolute difference; saturation-time
    comparisons carry the relative difference.
    """
    reference = reference or load_reference()
    rows = {name: build_table(preset, rel_threshold, threads) for name, preset in TABLE_PRESETS.items()}
    levels = level_comparison(reference)
    saturation_times = pd.concat(
        [saturation_comparison(name, table_rows, reference) for name, table_rows in rows.items()],
        ignore_index=True,
    )

    off = levels[~levels["within_tolerance"]]
    for _, rec in off.iterrows():
        logger.warning(f"{rec['config']} {rec['measure']}: derived {rec['derived']:.5f} vs published {rec['published']}")
    logger.info(f"Reproduced {sum(len(r) for r in rows.values())} table rows")
    return TableReport(rows=rows, levels=levels, saturation_times=saturation_times)


# ==================== CSV OUTPUT ====================

def series_frame(series: MeasureSeries) -> pd.DataFrame:
    """Series as a DataFrame in the CSV column order."""
    entropy_column = "entropy_nats" if series.base is EntropyBase.NATURAL else "entropy_bits"
    data = {
        SERIES_COLUMNS[0]: series.times,
        SERIES_COLUMNS[1]: series.ew,
        SERIES_COLUMNS[2]: series.purity,
        entropy_column: series.entropy,
    }
    if series.betas is not None and series.betas.size:
        for env in range(series.betas.shape[1]):
            data[f"beta_env{env}"] = series.betas[:, env]
    return pd.DataFrame(data)


def table_frame(rows: Sequence[TableRow]) -> pd.DataFrame:
    """Rows as a DataFrame in the table CSV schema; levels pre-formatted."""
    records = []
    for row in rows:
        record = row.as_record()
        for key in ("g", "ew_level", "p_level", "h_level", "beta_end"):
            record[key] = CSV_FLOAT_FORMAT % record[key]
        records.append(record)
    return pd.DataFrame(records, columns=list(TABLE_COLUMNS))


@retry_io()
def _replace(source: str, destination: Path) -> None:
    os.replace(source, destination)


def write_atomic(payload: bytes, destination: Union[str, Path]) -> Path:
    """
    Write bytes to a sibling temp file and rename it into place.

    Raises:
        OutputError: On any I/O failure, with the destination path.
    """
    destination = Path(destination)
    tmp_name = None
    try:
        destination.parent.mkdir(parents=True, exist_ok=True)
        with tempfile.NamedTemporaryFile(dir=destination.parent, prefix=f".{destination.name}.", delete=False) as tmp:
            tmp_name = tmp.name
            tmp.write(payload)
        _replace(tmp_name, destination)
    except OSError as exc:
        if tmp_name and os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise OutputError(destination, str(exc)) from exc
    logger.debug(f"Wrote {len(payload)} bytes to {destination}")
    return destination


def emit_csv(obj, destination: Union[str, Path, None] = None) -> bytes:
    """
    Encode a MeasureSeries, a list of TableRow, or a DataFrame as CSV.

    12 significant digits, '.' decimal separator, '\\n' newlines, UTF-8.

    Args:
        obj: What to encode
        destination: File path (written atomically); None only returns bytes

    Returns:
        The encoded bytes
    """
    if isinstance(obj, MeasureSeries):
        frame = series_frame(obj)
    elif isinstance(obj, pd.DataFrame):
        frame = obj
    else:
        frame = table_frame(list(obj))

    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator=CSV_NEWLINE)
    payload = buffer.getvalue().encode("utf-8")
    if destination is not None:
        write_atomic(payload, destination)
    return payload


def _read_frame(source: Union[bytes, str, Path]) -> pd.DataFrame:
    if isinstance(source, bytes):
        return pd.read_csv(io.BytesIO(source), dtype=str, keep_default_na=False)
    return pd.read_csv(source, dtype=str, keep_default_na=False)


def parse_series_csv(source: Union[bytes, str, Path]) -> MeasureSeries:
    """Inverse of emit_csv for a MeasureSeries."""
    frame = _read_frame(source)
    base = EntropyBase.TWO if "entropy_bits" in frame.columns else EntropyBase.NATURAL
    entropy_column = "entropy_bits" if base is EntropyBase.TWO else "entropy_nats"
    beta_columns = [c for c in frame.columns if c.startswith("beta_env")]

    def col(name: str) -> np.ndarray:
        # Columns left out by a scenario read back as NaN.
        if name not in frame.columns:
            return np.full(len(frame), np.nan)
        return frame[name].astype(float).to_numpy()

    betas = np.column_stack([col(c) for c in beta_columns]) if beta_columns and len(frame) else None
    return MeasureSeries(
        times=col("t"),
        ew=col("ew"),
        purity=col("purity"),
        entropy=col(entropy_column),
        betas=betas,
        base=base,
    )


def parse_table_csv(source: Union[bytes, str, Path]) -> pd.DataFrame:
    """Table CSV as a DataFrame; S.T columns stay strings (sentinel '>T')."""
    frame = _read_frame(source)
    for column in ("g", "ew_level", "p_level", "h_level", "beta_end"):
        frame[column] = frame[column].astype(float)
    return frame


def write_scenario(scenario: Scenario, out_dir: Union[str, Path], threads: int = None) -> List[Path]:
    """
    Run a scenario and write one CSV per (g, partition).

    Only the scenario's requested measures are written; t and the
    beta_env columns are always present.

    Returns:
        Written paths, named <scenario>_<partition>_g<g>.csv
    """
    results = run_scenario(scenario, threads=threads)
    out_dir = Path(out_dir)
    paths = []
    for (g, label), series in results.items():
        frame = series_frame(series)
        dropped = [_measure_column(frame, name) for name in MEASURE_NAMES if name not in scenario.measures]
        frame = frame.drop(columns=dropped)
        path = out_dir / f"{scenario.name}_{label.replace(',', '')}_g{g:g}.csv"
        emit_csv(frame, path)
        paths.append(path)
    logger.info(f"✓ Scenario {scenario.name}: wrote {len(paths)} files to {out_dir}")
    return paths


def _measure_column(frame: pd.DataFrame, name: str) -> str:
    if name == "entropy":
        return "entropy_bits" if "entropy_bits" in frame.columns else "entropy_nats"
    return name

