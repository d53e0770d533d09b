"""Per-year analysis across the log: time series, correlation, transitions.

Years where a metric is undefined (too small, disconnected, edgeless)
carry None rather than a silent zero; CSV output renders them as NA.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .communities import detect_communities
from .graphs import GraphSnapshot, build_snapshot, connected_components
from .grid_log import TemporalGridLog, line_count_series
from .metrics import (
    METRICS_CSV_COLUMNS,
    METRICS_CSV_HEADER,
    MetricsRecord,
    average_path_length,
    clustering_coefficient,
    diameter,
    random_baselines,
    small_world_sigma,
)

_RECORD_FIELDS = dict(
    zip(
        METRICS_CSV_COLUMNS,
        (
            "year",
            "num_nodes",
            "num_edges",
            "avg_degree",
            "diameter",
            "avg_path_length",
            "clustering",
            "random_path_length",
            "random_clustering",
            "sigma",
            "modularity_q",
            "component_count",
            "largest_component_size",
        ),
    )
)


@dataclass(frozen=True)
class MetricTimeSeries:
    years: tuple[int, ...]
    records: tuple[MetricsRecord, ...]

    def metric(self, name: str) -> list:
        """Column view by CSV column name; absent values stay None."""
        try:
            attr = _RECORD_FIELDS[name]
        except KeyError:
            raise ValueError(f"unknown metric {name!r}") from None
        return [getattr(record, attr) for record in self.records]

    def to_csv(self) -> str:
        lines = [METRICS_CSV_HEADER]
        lines.extend(record.to_csv_row() for record in self.records)
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SigmaCrossings:
    """First year with sigma > 1 (None if never) and every crossing."""

    first_year: int | None
    crossings: tuple[tuple[int, str], ...]  # (year, "up" or "down")


@dataclass(frozen=True)
class CorrelationReport:
    metric: str
    r: float
    years: tuple[int, ...]
    metric_values: tuple[float, ...]
    line_counts: tuple[int, ...]
    dropped_years: tuple[int, ...]


def compute_metrics_record(snapshot: GraphSnapshot, community_seed: int = 42) -> MetricsRecord:
    """Full metric row for one snapshot; undefined metrics become None."""
    if snapshot.year is None:
        raise ValueError("snapshot carries no year")
    n = snapshot.num_nodes
    e = snapshot.num_edges
    parts = connected_components(snapshot)
    lcc_size = len(parts.largest)

    avg_degree = 2 * e / n if n > 0 else None
    clustering = clustering_coefficient(snapshot)[0] if n > 0 else None
    path_length = diam = None
    if lcc_size >= 2:
        path_length = average_path_length(snapshot)
        diam = diameter(snapshot)
    random_l = random_c = None
    if n >= 2 and avg_degree is not None and avg_degree > 1:
        random_l, random_c = random_baselines(n, avg_degree)
    sigma = None
    if clustering is not None and path_length is not None and random_c is not None:
        sigma = small_world_sigma(clustering, random_c, path_length, random_l)[0]
    q = detect_communities(snapshot, community_seed).achieved_q if e >= 1 else None

    return MetricsRecord(
        year=snapshot.year,
        num_nodes=n,
        num_edges=e,
        avg_degree=avg_degree,
        diameter=diam,
        avg_path_length=path_length,
        clustering=clustering,
        random_path_length=random_l,
        random_clustering=random_c,
        sigma=sigma,
        modularity_q=q,
        component_count=parts.num_components,
        largest_component_size=lcc_size,
    )


def compute_timeseries(log: TemporalGridLog, years: Sequence[int], seed: int = 42) -> MetricTimeSeries:
    """One MetricsRecord per year, communities detected with a fixed seed."""
    years = list(years)
    if not years:
        raise ValueError("year range must not be empty")
    if any(b <= a for a, b in zip(years, years[1:])):
        raise ValueError("years must be strictly increasing")
    records = tuple(compute_metrics_record(build_snapshot(log, y), seed) for y in years)
    return MetricTimeSeries(tuple(years), records)


def pearson(series_a: Sequence[float], series_b: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient, clamped to [-1, 1]."""
    a = [float(x) for x in series_a]
    b = [float(x) for x in series_b]
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise ValueError("correlation needs at least 2 points")
    mean_a = sum(a) / len(a)
    mean_b = sum(b) / len(b)
    var_a = sum((x - mean_a) ** 2 for x in a)
    var_b = sum((y - mean_b) ** 2 for y in b)
    if var_a == 0.0 or var_b == 0.0:
        raise ValueError("undefined correlation: constant series")
    cov = sum((x - mean_a) * (y - mean_b) for x, y in zip(a, b))
    r = cov / math.sqrt(var_a * var_b)
    return max(-1.0, min(1.0, r))


def normalize_to_max(series: Sequence[float]) -> list[float]:
    """Scale a series so its maximum becomes 1."""
    values = [float(x) for x in series]
    if not values:
        raise ValueError("series must not be empty")
    peak = max(values)
    if peak <= 0.0:
        raise ValueError("series maximum must be positive")
    return [x / peak for x in values]


def small_world_transition(series: MetricTimeSeries) -> SigmaCrossings:
    """Scan the sigma column for threshold crossings of 1.

    Years with undefined sigma are skipped; the above/below state
    persists across such gaps.
    """
    above = False
    first_year = None
    crossings: list[tuple[int, str]] = []
    for year, record in zip(series.years, series.records):
        sigma = record.sigma
        if sigma is None:
            continue
        if sigma > 1 and not above:
            crossings.append((year, "up"))
            above = True
            if first_year is None:
                first_year = year
        elif sigma <= 1 and above:
            crossings.append((year, "down"))
            above = False
    return SigmaCrossings(first_year, tuple(crossings))


def correlate_with_line_count(
    log: TemporalGridLog,
    metric: str,
    voltages: Sequence[int],
    domestic_only: bool,
    years: Sequence[int],
    seed: int = 42,
) -> CorrelationReport:
    """Pearson r between a metric time series and active line counts.

    Years where the metric is undefined are dropped pairwise and
    reported, since correlation needs both sides.
    """
    years = list(years)
    series = compute_timeseries(log, years, seed)
    metric_values = series.metric(metric)
    counts = line_count_series(log, voltages, domestic_only, years)
    used_years, used_values, used_counts, dropped = [], [], [], []
    for year, value, count in zip(years, metric_values, counts):
        if value is None:
            dropped.append(year)
        else:
            used_years.append(year)
            used_values.append(float(value))
            used_counts.append(count)
    if len(used_years) < 2:
        raise ValueError("correlation needs at least 2 years with a defined metric")
    r = pearson(used_values, used_counts)
    return CorrelationReport(
        metric=metric,
        r=r,
        years=tuple(used_years),
        metric_values=tuple(used_values),
        line_counts=tuple(used_counts),
        dropped_years=tuple(dropped),
    )
