"""Region-by-region detection pipeline and its CSV report format.

The report CSV is deterministic for fixed inputs and flags: region rows come
out in partition order and carry no timing data unless explicitly requested,
so runs with different worker counts are byte-identical. Wall-times live on
the in-memory :class:`RegionReport` records and in the run summary.
"""

from __future__ import annotations

import io
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .classify import RegionLabel, classify, default_tau
from .errors import FormatError, ParameterError
from .lattice import build_graph, connected_components
from .partition import SubregionSpec, largest_divisible_side, partition_domain, select_facet
from .volume import BinaryVolume

__all__ = [
    "RegionReport",
    "DetectionRun",
    "detect_regions",
    "report_csv",
    "parse_report_csv",
]

REPORT_COLUMNS = ("qx", "qy", "qz", "facet", "label", "max_component", "components", "touches_boundary")
TIMING_COLUMNS = ("ms_facet", "ms_graph", "ms_classify")


@dataclass(frozen=True)
class RegionReport:
    """Classification record for one subregion."""

    q: tuple[int, int, int]
    facet: str
    label: RegionLabel
    max_component: int
    component_count: int
    touches_boundary: bool
    ms_facet: float
    ms_graph: float
    ms_classify: float


@dataclass(frozen=True)
class DetectionRun:
    """All per-region records plus the run parameters they were produced with."""

    reports: list[RegionReport]
    g: int
    delta: int
    tau: float
    side: int
    dims: tuple[int, int, int]
    cropped_from: tuple[int, int, int] | None = None

    def label_counts(self) -> dict[str, int]:
        counts = {label.code: 0 for label in RegionLabel}
        for report in self.reports:
            counts[report.label.code] += 1
        return counts

    def labels(self) -> list[RegionLabel]:
        return [report.label for report in self.reports]


def _process_region(
    vol: BinaryVolume,
    spec: SubregionSpec,
    delta: int,
    tau: float,
    boundary_rule_first: bool,
    include_foreground: bool,
) -> RegionReport:
    t0 = time.perf_counter()
    facet = select_facet(vol, spec)
    t1 = time.perf_counter()
    graph = build_graph(facet.data, delta, include_foreground=include_foreground)
    t2 = time.perf_counter()
    components = connected_components(graph)
    label = classify(components, tau, boundary_rule_first=boundary_rule_first)
    t3 = time.perf_counter()
    return RegionReport(
        q=spec.q,
        facet=facet.facet,
        label=label,
        max_component=max((c.size for c in components), default=0),
        component_count=len(components),
        touches_boundary=any(c.touches_boundary for c in components),
        ms_facet=(t1 - t0) * 1e3,
        ms_graph=(t2 - t1) * 1e3,
        ms_classify=(t3 - t2) * 1e3,
    )


def detect_regions(
    vol: BinaryVolume,
    g: int,
    delta: int,
    tau: float | None = None,
    threads: int = 1,
    boundary_rule_first: bool = True,
    include_foreground: bool = False,
    crop: bool = False,
) -> DetectionRun:
    """Partition, pick facets, build graphs, and label every subregion.

    ``tau=None`` uses the default side/delta + 1. ``crop=True`` trims the
    volume to the largest origin-anchored cube divisible by g instead of
    failing on awkward dims; the original dims are recorded on the run.
    Output is identical for every ``threads`` value.
    """
    cropped_from = None
    dims = vol.dims
    if crop:
        side_all = largest_divisible_side(dims, g)
        if (side_all,) * 3 != dims:
            cropped_from = dims
            vol = BinaryVolume(vol.data[:side_all, :side_all, :side_all])
            dims = vol.dims
    specs = partition_domain(dims, g)
    side = specs[0].side
    if tau is None:
        tau = default_tau(side, delta)

    def work(spec: SubregionSpec) -> RegionReport:
        return _process_region(vol, spec, delta, tau, boundary_rule_first, include_foreground)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(work, specs))
    else:
        reports = [work(spec) for spec in specs]

    return DetectionRun(
        reports=reports, g=g, delta=delta, tau=tau, side=side, dims=dims,
        cropped_from=cropped_from,
    )


def report_csv(run: DetectionRun, include_timings: bool = False) -> str:
    """Serialize a run: ``# key=value`` metadata, header row, one row per region.

    Timing columns are opt-in; without them the text depends only on inputs
    and flags, never on scheduling.
    """
    out = io.StringIO()
    nx, ny, nz = run.dims
    out.write(f"# dims={nx} {ny} {nz}\n")
    if run.cropped_from is not None:
        ox, oy, oz = run.cropped_from
        out.write(f"# cropped_from={ox} {oy} {oz}\n")
    out.write(f"# g={run.g}\n")
    out.write(f"# delta={run.delta}\n")
    out.write(f"# tau={run.tau!r}\n")
    columns = REPORT_COLUMNS + TIMING_COLUMNS if include_timings else REPORT_COLUMNS
    out.write(",".join(columns) + "\n")
    for r in run.reports:
        row = [
            str(r.q[0]), str(r.q[1]), str(r.q[2]), r.facet, r.label.code,
            str(r.max_component), str(r.component_count), str(int(r.touches_boundary)),
        ]
        if include_timings:
            row += [f"{r.ms_facet:.3f}", f"{r.ms_graph:.3f}", f"{r.ms_classify:.3f}"]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def parse_report_csv(source: str | os.PathLike, *, is_text: bool = False):
    """Read back a report: (metadata dict, list of per-region row dicts)."""
    if is_text:
        text = str(source)
    else:
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    meta: dict[str, str] = {}
    rows: list[dict[str, str]] = []
    header: list[str] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                meta[key.strip()] = value.strip()
            continue
        parts = line.split(",")
        if header is None:
            header = parts
            for column in REPORT_COLUMNS:
                if column not in header:
                    raise FormatError(f"report header is missing column {column!r}")
            continue
        if len(parts) != len(header):
            raise FormatError(f"report row has {len(parts)} fields, header has {len(header)}")
        rows.append(dict(zip(header, parts)))
    if header is None:
        raise FormatError("report contains no header row")
    return meta, rows


def report_labels(rows: list[dict[str, str]]) -> list[RegionLabel]:
    """Label column of parsed report rows, in file order."""
    try:
        return [RegionLabel.from_code(row["label"]) for row in rows]
    except KeyError:
        raise ParameterError("report rows lack a 'label' field")
