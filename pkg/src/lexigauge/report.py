"""End-to-end two-corpus comparison: configuration, pipeline orchestration,
report assembly, and artifact emission (JSON report, metric and density
CSVs, density SVGs, graph exports).

A run is deterministic: the same configuration and inputs produce
byte-identical artifacts, except for the ``generated_at`` provenance field
of the JSON report, which is isolated so determinism checks can exclude it.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import shutil
import tempfile
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .errors import ConfigError, ConsistencyError, DegenerateDataError, DomainError, LexigaugeError
from .ingest import (
    SAMPLING_RNG,
    BiblioSummary,
    bibliometric_descriptives,
    parse_bibliographic_csv,
    sample_corpus,
)
from .metrics import (
    METRIC_NAMES,
    LexicalRecord,
    lexical_records,
    metric_vectors,
    read_metrics_csv,
    write_metrics_csv,
)
from .semnet import (
    ClusterSummary,
    CentralityScores,
    CommunityPartition,
    CoWordGraph,
    GraphPolicy,
    betweenness,
    build_coword_graph,
    cluster_summary,
    export_graph,
    load_stopwords,
    louvain_communities,
)
from .stats import (
    QUARTILE_METHOD,
    DensitySeries,
    Descriptives,
    NormalityResult,
    RankSumResult,
    descriptives,
    kde,
    shapiro_wilk,
    wilcoxon_rank_sum,
)
from .textproc import (
    DEFAULT_TOKEN_POLICY,
    SEGMENTATION_RULES_VERSION,
    TokenPolicy,
)

__all__ = [
    "CorpusConfig",
    "AnalysisConfig",
    "OutputConfig",
    "RunConfig",
    "CorpusResult",
    "ComparisonReport",
    "load_run_config",
    "run_compare",
    "emit_density_svg",
    "report_json_bytes",
]

KNOWN_FORMATS = ("json", "csv", "svg", "gexf", "graphml")


@dataclass(frozen=True)
class CorpusConfig:
    csv_path: str
    label: str
    column_map: dict | None = None
    sample_size: int | None = None
    seed: int | None = None
    author_total: int | None = None


@dataclass(frozen=True)
class AnalysisConfig:
    min_title_frequency: int = 2
    stopwords_path: str | None = None
    kde_grid_points: int = 256
    network_seed: int = 0
    louvain_resolution: float = 1.0
    token_policy: TokenPolicy = DEFAULT_TOKEN_POLICY


@dataclass(frozen=True)
class OutputConfig:
    directory: str = "lexigauge-out"
    formats: tuple[str, ...] = ("json", "csv", "svg", "gexf")


@dataclass(frozen=True)
class RunConfig:
    """One comparison run: exactly two corpora plus analysis/output options."""

    corpora: tuple[CorpusConfig, CorpusConfig]
    analysis: AnalysisConfig = AnalysisConfig()
    output: OutputConfig = OutputConfig()

    def __post_init__(self):
        if len(self.corpora) != 2:
            raise ConfigError(
                f"a comparison needs exactly two corpora, got {len(self.corpora)}"
            )
        labels = [c.label for c in self.corpora]
        if labels[0] == labels[1]:
            raise ConfigError(f"corpus labels must differ, both are {labels[0]!r}")
        if _slug(labels[0]) == _slug(labels[1]):
            raise ConfigError(
                f"corpus labels {labels[0]!r} and {labels[1]!r} collide once "
                "normalized for artifact file names"
            )
        for corpus in self.corpora:
            if corpus.sample_size is not None:
                if corpus.seed is None:
                    raise ConfigError(
                        f"corpus {corpus.label!r}: a seed is required when "
                        "sample_size is set"
                    )
                if corpus.sample_size <= 0:
                    raise ConfigError(
                        f"corpus {corpus.label!r}: sample_size must be positive"
                    )
        for fmt in self.output.formats:
            if fmt not in KNOWN_FORMATS:
                raise ConfigError(
                    f"unknown output format {fmt!r}; known: {', '.join(KNOWN_FORMATS)}"
                )


def load_run_config(source) -> RunConfig:
    """Load a RunConfig from a JSON manifest (path, stream, or dict)."""
    if isinstance(source, (str, Path)):
        raw = json.loads(Path(source).read_text(encoding="utf-8"))
    elif hasattr(source, "read"):
        raw = json.load(source)
    else:
        raw = source
    if not isinstance(raw, dict):
        raise ConfigError("run config must be a JSON object")

    def take(mapping: dict, allowed: set[str], where: str) -> dict:
        unknown = set(mapping) - allowed
        if unknown:
            raise ConfigError(f"unknown {where} keys: {sorted(unknown)}")
        return mapping

    take(raw, {"corpora", "analysis", "output"}, "config")
    corpora_raw = raw.get("corpora")
    if not isinstance(corpora_raw, list):
        raise ConfigError("config must list corpora")
    corpora = []
    for entry in corpora_raw:
        take(
            entry,
            {"csv_path", "label", "column_map", "sample_size", "seed", "author_total"},
            "corpus",
        )
        if "csv_path" not in entry or "label" not in entry:
            raise ConfigError("each corpus needs csv_path and label")
        corpora.append(CorpusConfig(**entry))

    analysis_raw = take(
        raw.get("analysis", {}),
        {
            "min_title_frequency",
            "stopwords_path",
            "kde_grid_points",
            "network_seed",
            "louvain_resolution",
            "token_policy",
        },
        "analysis",
    )
    token_policy = DEFAULT_TOKEN_POLICY
    if "token_policy" in analysis_raw:
        take(
            analysis_raw["token_policy"],
            set(TokenPolicy.__dataclass_fields__),
            "token_policy",
        )
        token_policy = TokenPolicy(**analysis_raw["token_policy"])
    analysis = AnalysisConfig(
        **{k: v for k, v in analysis_raw.items() if k != "token_policy"},
        token_policy=token_policy,
    )

    output_raw = take(raw.get("output", {}), {"directory", "formats"}, "output")
    output = OutputConfig(
        directory=output_raw.get("directory", OutputConfig.directory),
        formats=tuple(output_raw.get("formats", OutputConfig.formats)),
    )
    if len(corpora) != 2:
        raise ConfigError(f"a comparison needs exactly two corpora, got {len(corpora)}")
    return RunConfig(corpora=(corpora[0], corpora[1]), analysis=analysis, output=output)


# ---------------------------------------------------------------------------
# Results
# ---------------------------------------------------------------------------


@dataclass
class CorpusResult:
    """Everything computed for one corpus in a run."""

    label: str
    source_csv: str
    parsed_documents: int
    skipped_rows: int
    sample_size: int | None
    sample_seed: int | None
    bibliometrics: BiblioSummary
    records: list[LexicalRecord]
    missing_abstract_count: int
    descriptives: dict[str, Descriptives]
    normality: dict[str, NormalityResult | None]
    densities: dict[str, DensitySeries]
    graph: CoWordGraph
    partition: CommunityPartition
    centrality: CentralityScores
    clusters: ClusterSummary


@dataclass
class ComparisonReport:
    """The aggregate artifact of one two-corpus comparison run."""

    corpora: tuple[CorpusResult, CorpusResult]
    comparisons: dict[str, RankSumResult]
    provenance: dict

    def to_json_dict(self) -> dict:
        return {
            "schema_version": "1",
            "corpora": [_corpus_json(c) for c in self.corpora],
            "comparisons": {
                metric: {
                    "u_statistic": r.u_statistic,
                    "z_score": r.z_score,
                    "p_value": r.p_value,
                    "effect_size_r": r.effect_size_r,
                    "n_x": r.n_x,
                    "n_y": r.n_y,
                }
                for metric, r in self.comparisons.items()
            },
            "provenance": self.provenance,
        }


def _corpus_json(c: CorpusResult) -> dict:
    return {
        "label": c.label,
        "source_csv": c.source_csv,
        "parsed_documents": c.parsed_documents,
        "skipped_rows": c.skipped_rows,
        "sample_size": c.sample_size,
        "analyzed_documents": len(c.records),
        "missing_abstract_count": c.missing_abstract_count,
        "bibliometrics": {
            "document_count": c.bibliometrics.document_count,
            "author_total": c.bibliometrics.author_total,
            "authors_per_document": c.bibliometrics.authors_per_document,
            "citations_per_document": c.bibliometrics.citations_per_document,
            "annual_growth_pct": c.bibliometrics.annual_growth_pct,
            "timespan": list(c.bibliometrics.timespan) if c.bibliometrics.timespan else None,
        },
        "metric_counts": {
            "title_length": len(c.records),
            "fkgl": len(c.records) - c.missing_abstract_count,
            "yules_k": len(c.records) - c.missing_abstract_count,
        },
        "descriptives": {
            metric: {
                "min": d.minimum,
                "q1": d.q1,
                "median": d.median,
                "mean": d.mean,
                "q3": d.q3,
                "max": d.maximum,
            }
            for metric, d in c.descriptives.items()
        },
        "normality": {
            metric: (
                None
                if r is None
                else {"w_statistic": r.w_statistic, "p_value": r.p_value, "n": r.n}
            )
            for metric, r in c.normality.items()
        },
        "network": {
            "node_count": c.graph.node_count(),
            "edge_count": c.graph.edge_count(),
            "modularity_q": c.partition.modularity_q,
            "community_count": c.partition.community_count(),
            "top_betweenness_token": c.clusters.top_betweenness_token,
            "clusters": [
                {
                    "community_id": info.community_id,
                    "size": info.size,
                    "node_share_pct": info.node_share_pct,
                    "label_tokens": list(info.label_tokens),
                    "top_betweenness_token": info.top_betweenness_token,
                }
                for info in c.clusters.clusters
            ],
        },
    }


def report_json_bytes(report: ComparisonReport) -> bytes:
    """Deterministic JSON rendering of a report (sorted keys, full-precision
    floats, trailing newline)."""
    return (
        json.dumps(report.to_json_dict(), sort_keys=True, indent=2, allow_nan=False)
        + "\n"
    ).encode("utf-8")


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------


def _analyze_corpus(config: CorpusConfig, analysis: AnalysisConfig, policy: GraphPolicy) -> CorpusResult:
    label = config.label
    try:
        full = parse_bibliographic_csv(
            config.csv_path, column_map=config.column_map, label=label
        )
    except LexigaugeError as exc:
        raise type(exc)(f"corpus {label!r}: {exc}") from exc
    if len(full) == 0:
        raise DomainError(f"corpus {label!r}: no usable records in {config.csv_path}")

    biblio = bibliometric_descriptives(full, distinct_author_total=config.author_total)

    analyzed = full
    if config.sample_size is not None:
        analyzed = sample_corpus(full, config.sample_size, config.seed)

    records = lexical_records(analyzed, policy=analysis.token_policy)
    missing = sum(1 for r in records if r.fkgl is None)
    vectors = metric_vectors(records)

    desc: dict[str, Descriptives] = {}
    normality: dict[str, NormalityResult | None] = {}
    densities: dict[str, DensitySeries] = {}
    for metric in METRIC_NAMES:
        values = vectors[metric]
        if not values:
            raise DomainError(
                f"corpus {label!r}: no values for metric {metric!r} "
                "(every document lacks an abstract?)"
            )
        desc[metric] = descriptives(values)
        try:
            normality[metric] = shapiro_wilk(values)
        except (DomainError, DegenerateDataError):
            normality[metric] = None
        try:
            densities[metric] = kde(values, grid_points=analysis.kde_grid_points)
        except DegenerateDataError as exc:
            raise DegenerateDataError(
                f"corpus {label!r}: cannot build a density for {metric!r}: {exc}"
            ) from exc

    graph = build_coword_graph(analyzed.titles(), policy)
    partition = louvain_communities(
        graph, resolution=analysis.louvain_resolution, seed=analysis.network_seed
    )
    centrality = betweenness(graph)
    clusters = cluster_summary(graph, partition, centrality)

    return CorpusResult(
        label=label,
        source_csv=str(config.csv_path),
        parsed_documents=len(full),
        skipped_rows=full.skipped_rows,
        sample_size=config.sample_size,
        sample_seed=config.seed,
        bibliometrics=biblio,
        records=records,
        missing_abstract_count=missing,
        descriptives=desc,
        normality=normality,
        densities=densities,
        graph=graph,
        partition=partition,
        centrality=centrality,
        clusters=clusters,
    )


def run_compare(config: RunConfig) -> ComparisonReport:
    """Execute the full comparison pipeline and write the artifact bundle.

    Pipeline per corpus: parse -> bibliometrics -> optional seeded sample ->
    per-document metrics -> descriptives/normality/density -> co-word
    network.  Cross-corpus: a rank-sum comparison per metric.  Artifacts are
    written to a temporary directory and moved into place only on success,
    so a failing run leaves no partial outputs.
    """
    policy = GraphPolicy(
        min_title_frequency=config.analysis.min_title_frequency,
        token_policy=config.analysis.token_policy,
        stopwords=(
            load_stopwords(config.analysis.stopwords_path)
            if config.analysis.stopwords_path
            else None
        ),
    )
    results = tuple(
        _analyze_corpus(c, config.analysis, policy) for c in config.corpora
    )

    comparisons: dict[str, RankSumResult] = {}
    vectors_a = metric_vectors(results[0].records)
    vectors_b = metric_vectors(results[1].records)
    for metric in METRIC_NAMES:
        comparisons[metric] = wilcoxon_rank_sum(vectors_a[metric], vectors_b[metric])

    provenance = {
        "tool": "lexigauge",
        "tool_version": __version__,
        "rng_algorithm": SAMPLING_RNG,
        "numpy_version": np.__version__,
        "segmentation_rules_version": SEGMENTATION_RULES_VERSION,
        "quartile_method": QUARTILE_METHOD,
        "p_value_display": "scientific, 3 significant digits (full precision in JSON)",
        "seeds": {
            "samples": {
                c.label: c.seed for c in config.corpora
            },
            "network": config.analysis.network_seed,
        },
        "policies": {
            "token_policy": {
                "keep_numbers": config.analysis.token_policy.keep_numbers,
                "bind_hyphens": config.analysis.token_policy.bind_hyphens,
                "bind_apostrophes": config.analysis.token_policy.bind_apostrophes,
            },
            "graph_policy": {
                "min_title_frequency": policy.min_title_frequency,
                "stopwords": (
                    str(config.analysis.stopwords_path)
                    if config.analysis.stopwords_path
                    else "bundled-default"
                ),
                "unweighted_paths": policy.unweighted_paths,
            },
            "louvain_resolution": config.analysis.louvain_resolution,
            "kde_grid_points": config.analysis.kde_grid_points,
            "syllables": "vowel-run heuristic with silent-e rules; acronyms and numerals count 1",
        },
        "generated_at": datetime.now(timezone.utc).isoformat(),
    }

    report = ComparisonReport(
        corpora=results, comparisons=comparisons, provenance=provenance
    )
    _self_audit(report)
    _write_artifacts(report, config)
    return report


def _self_audit(report: ComparisonReport) -> None:
    """Recompute each corpus's descriptives from a serialization round-trip
    of its metric table; any drift is an internal error."""
    for corpus in report.corpora:
        buffer = io.StringIO()
        write_metrics_csv(corpus.records, buffer)
        buffer.seek(0)
        recovered = metric_vectors(read_metrics_csv(buffer))
        for metric in METRIC_NAMES:
            if descriptives(recovered[metric]) != corpus.descriptives[metric]:
                raise ConsistencyError(
                    f"corpus {corpus.label!r}: metric table round-trip changed "
                    f"the {metric!r} descriptives"
                )


def _slug(label: str) -> str:
    slug = "".join(c.lower() if c.isalnum() else "_" for c in label)
    while "__" in slug:
        slug = slug.replace("__", "_")
    return slug.strip("_") or "corpus"


def _write_artifacts(report: ComparisonReport, config: RunConfig) -> None:
    formats = set(config.output.formats)
    out_dir = Path(config.output.directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    tmp_dir = Path(tempfile.mkdtemp(prefix=".lexigauge-", dir=out_dir))
    try:
        files: list[str] = []

        if "json" in formats:
            (tmp_dir / "report.json").write_bytes(report_json_bytes(report))
            files.append("report.json")

        for corpus in report.corpora:
            slug = _slug(corpus.label)
            if "csv" in formats:
                name = f"metrics_{slug}.csv"
                write_metrics_csv(corpus.records, tmp_dir / name)
                files.append(name)
                for metric, series in corpus.densities.items():
                    name = f"density_{metric}_{slug}.csv"
                    _write_density_csv(series, tmp_dir / name)
                    files.append(name)
            for fmt in ("gexf", "graphml"):
                if fmt in formats:
                    name = f"network_{slug}.{fmt}"
                    (tmp_dir / name).write_bytes(
                        export_graph(
                            corpus.graph, corpus.partition, corpus.centrality, fmt
                        )
                    )
                    files.append(name)

        if "svg" in formats:
            a, b = report.corpora
            for metric in METRIC_NAMES:
                name = f"density_{metric}.svg"
                (tmp_dir / name).write_bytes(
                    emit_density_svg(
                        a.densities[metric],
                        b.densities[metric],
                        labels=(a.label, b.label),
                        title=metric.replace("_", " "),
                    )
                )
                files.append(name)

        for name in files:
            os.replace(tmp_dir / name, out_dir / name)
    finally:
        shutil.rmtree(tmp_dir, ignore_errors=True)


def _write_density_csv(series: DensitySeries, path: Path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["x", "density"])
        for x, d in zip(series.grid, series.density):
            writer.writerow([repr(x), repr(d)])


# ---------------------------------------------------------------------------
# Density SVG
# ---------------------------------------------------------------------------

_SVG_COLORS = ("#1f77b4", "#d62728")
_SVG_W, _SVG_H = 720, 420
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 70, 24, 42, 52


def emit_density_svg(
    series_a: DensitySeries,
    series_b: DensitySeries,
    labels: tuple[str, str],
    title: str = "",
) -> bytes:
    """Render two density series as one self-contained SVG: two labeled
    curves (the only ``path`` elements), ticked axes, no external assets.
    Deterministic byte output for identical inputs."""
    for series in (series_a, series_b):
        if len(series.grid) == 0:
            raise DomainError("cannot plot an empty density series")
        if len(series.grid) != len(series.density):
            raise DomainError("density series grid/density lengths differ")
        if not all(math.isfinite(v) for v in series.grid) or not all(
            math.isfinite(v) for v in series.density
        ):
            raise DomainError("density series contains non-finite values")

    x_min = min(series_a.grid[0], series_b.grid[0])
    x_max = max(series_a.grid[-1], series_b.grid[-1])
    y_max_raw = max(max(series_a.density), max(series_b.density))
    y_max = _nice_ceil(y_max_raw)
    if x_max == x_min or y_max <= 0:
        raise DomainError("degenerate plot ranges")

    plot_w = _SVG_W - _MARGIN_L - _MARGIN_R
    plot_h = _SVG_H - _MARGIN_T - _MARGIN_B

    def sx(x: float) -> float:
        return _MARGIN_L + (x - x_min) / (x_max - x_min) * plot_w

    def sy(y: float) -> float:
        return _MARGIN_T + plot_h - y / y_max * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" height="{_SVG_H}" '
        f'viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{_SVG_W / 2:.1f}" y="24" text-anchor="middle" '
            f'font-family="sans-serif" font-size="16">{_xml_escape(title)}</text>'
        )

    x0, y0 = _MARGIN_L, _MARGIN_T + plot_h
    parts.append(
        f'<line x1="{x0}" y1="{y0}" x2="{x0 + plot_w}" y2="{y0}" stroke="black"/>'
    )
    parts.append(f'<line x1="{x0}" y1="{_MARGIN_T}" x2="{x0}" y2="{y0}" stroke="black"/>')

    for i in range(5):
        xt = x_min + (x_max - x_min) * i / 4
        px = sx(xt)
        parts.append(f'<line x1="{px:.2f}" y1="{y0}" x2="{px:.2f}" y2="{y0 + 5}" stroke="black"/>')
        parts.append(
            f'<text x="{px:.2f}" y="{y0 + 20}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{xt:.4g}</text>'
        )
        yt = y_max * i / 4
        py = sy(yt)
        parts.append(f'<line x1="{x0 - 5}" y1="{py:.2f}" x2="{x0}" y2="{py:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{x0 - 8}" y="{py + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yt:.4g}</text>'
        )
    parts.append(
        f'<text x="{x0 + plot_w / 2:.1f}" y="{_SVG_H - 14}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">value</text>'
    )
    parts.append(
        f'<text x="18" y="{_MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 18 {_MARGIN_T + plot_h / 2:.1f})">density</text>'
    )

    for series, color in zip((series_a, series_b), _SVG_COLORS):
        points = " L".join(
            f"{sx(x):.2f},{sy(d):.2f}" for x, d in zip(series.grid, series.density)
        )
        parts.append(f'<path d="M{points}" fill="none" stroke="{color}" stroke-width="1.5"/>')

    legend_x = x0 + plot_w - 160
    for i, (label, color) in enumerate(zip(labels, _SVG_COLORS)):
        ly = _MARGIN_T + 14 + i * 18
        parts.append(
            f'<rect x="{legend_x}" y="{ly - 9}" width="12" height="12" fill="{color}"/>'
        )
        parts.append(
            f'<text x="{legend_x + 18}" y="{ly + 2}" font-family="sans-serif" '
            f'font-size="12">{_xml_escape(label)}</text>'
        )

    parts.append("</svg>")
    return ("\n".join(parts) + "\n").encode("utf-8")


def _nice_ceil(value: float) -> float:
    """Round up to two significant figures (upper bound for the y-axis)."""
    if value <= 0:
        return 1.0
    exponent = math.floor(math.log10(value))
    scale = 10.0 ** (exponent - 1)
    return math.ceil(value / scale) * scale


def _xml_escape(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
    )
