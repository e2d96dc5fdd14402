"""Command-line interface.

Subcommands:
  compare  full two-corpus comparison run (report bundle)
  metrics  per-document metric table for one CSV
  semnet   co-word network export for one CSV
  stats    normality + rank-sum tests over two metric tables

Exit codes: 0 success, 1 input/configuration error, 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import traceback
from pathlib import Path

from .errors import DegenerateDataError, DomainError, LexigaugeError
from .ingest import parse_bibliographic_csv
from .metrics import METRIC_NAMES, lexical_records, metric_vectors, read_metrics_csv, write_metrics_csv
from .report import (
    AnalysisConfig,
    CorpusConfig,
    OutputConfig,
    RunConfig,
    load_run_config,
    run_compare,
)
from .semnet import (
    GraphPolicy,
    betweenness,
    build_coword_graph,
    cluster_summary,
    export_graph,
    load_stopwords,
    louvain_communities,
)
from .stats import shapiro_wilk, wilcoxon_rank_sum

STOPWORDS_ENV = "LEXIGAUGE_STOPWORDS"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexigauge",
        description="Lexical-structure comparison of bibliographic corpora",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compare = sub.add_parser("compare", help="run the full two-corpus comparison")
    compare.add_argument("--config", help="JSON run manifest")
    compare.add_argument("--corpus-a", help="CSV path of the first corpus")
    compare.add_argument("--label-a", help="label of the first corpus")
    compare.add_argument("--corpus-b", help="CSV path of the second corpus")
    compare.add_argument("--label-b", help="label of the second corpus")
    compare.add_argument("--sample-size", type=int, help="sample size for both corpora")
    compare.add_argument("--seed", type=int, help="sampling seed for both corpora")
    compare.add_argument("--stopwords", help="stopword list path")
    compare.add_argument("--out", help="output directory")
    compare.add_argument(
        "--formats", help="comma-separated subset of json,csv,svg,gexf,graphml"
    )

    metrics = sub.add_parser("metrics", help="emit the per-document metric table")
    metrics.add_argument("csv", help="bibliographic CSV export")
    metrics.add_argument("--out", help="output CSV path (default: stdout)")

    semnet = sub.add_parser("semnet", help="build and export the title co-word network")
    semnet.add_argument("csv", help="bibliographic CSV export")
    semnet.add_argument("--out", help="output path (default: <csv>_network.<format>)")
    semnet.add_argument("--format", choices=("gexf", "graphml"), default="gexf")
    semnet.add_argument("--min-title-frequency", type=int, default=2)
    semnet.add_argument("--stopwords", help="stopword list path")
    semnet.add_argument("--seed", type=int, default=0, help="community detection seed")
    semnet.add_argument("--resolution", type=float, default=1.0)

    stats = sub.add_parser("stats", help="compare two per-document metric tables")
    stats.add_argument("metrics_a", help="metric CSV of the first corpus")
    stats.add_argument("metrics_b", help="metric CSV of the second corpus")
    stats.add_argument("--out", help="output JSON path (default: stdout)")
    return parser


def _stopwords_path(flag_value: str | None, config_value: str | None = None) -> str | None:
    if flag_value:
        return flag_value
    if config_value:
        return config_value
    return os.environ.get(STOPWORDS_ENV) or None


def _cmd_compare(args) -> int:
    if args.config:
        config = load_run_config(args.config)
    else:
        if not (args.corpus_a and args.corpus_b):
            raise LexigaugeError(
                "compare needs either --config or both --corpus-a and --corpus-b"
            )
        config = None

    def corpus_config(base: CorpusConfig | None, csv_path, label, default_label):
        if base is None:
            base_kwargs = {}
        else:
            base_kwargs = {
                "csv_path": base.csv_path,
                "label": base.label,
                "column_map": base.column_map,
                "sample_size": base.sample_size,
                "seed": base.seed,
                "author_total": base.author_total,
            }
        if csv_path:
            base_kwargs["csv_path"] = csv_path
            base_kwargs.setdefault("label", label or Path(csv_path).stem)
        if label:
            base_kwargs["label"] = label
        if args.sample_size is not None:
            base_kwargs["sample_size"] = args.sample_size
        if args.seed is not None:
            base_kwargs["seed"] = args.seed
        base_kwargs.setdefault("label", default_label)
        return CorpusConfig(**base_kwargs)

    corpora = (
        corpus_config(config.corpora[0] if config else None, args.corpus_a, args.label_a, "corpus-a"),
        corpus_config(config.corpora[1] if config else None, args.corpus_b, args.label_b, "corpus-b"),
    )
    analysis = config.analysis if config else AnalysisConfig()
    stopwords = _stopwords_path(args.stopwords, analysis.stopwords_path)
    if stopwords != analysis.stopwords_path:
        analysis = AnalysisConfig(
            min_title_frequency=analysis.min_title_frequency,
            stopwords_path=stopwords,
            kde_grid_points=analysis.kde_grid_points,
            network_seed=analysis.network_seed,
            louvain_resolution=analysis.louvain_resolution,
            token_policy=analysis.token_policy,
        )
    output = config.output if config else OutputConfig()
    if args.out:
        output = OutputConfig(directory=args.out, formats=output.formats)
    if args.formats:
        output = OutputConfig(
            directory=output.directory,
            formats=tuple(f.strip() for f in args.formats.split(",") if f.strip()),
        )

    run = RunConfig(corpora=corpora, analysis=analysis, output=output)
    report = run_compare(run)

    for corpus in report.corpora:
        print(
            f"{corpus.label}: {corpus.parsed_documents} parsed "
            f"({corpus.skipped_rows} skipped), {len(corpus.records)} analyzed, "
            f"{corpus.missing_abstract_count} without abstract"
        )
    for metric, result in report.comparisons.items():
        print(
            f"{metric}: U={result.u_statistic:.1f} p={result.p_value:.2e} "
            f"r={result.effect_size_r:.3f}"
        )
    print(f"artifacts written to {output.directory}")
    return 0


def _cmd_metrics(args) -> int:
    corpus = parse_bibliographic_csv(args.csv, label=Path(args.csv).stem)
    records = lexical_records(corpus)
    if args.out:
        write_metrics_csv(records, args.out)
        print(f"wrote {args.out} ({len(records)} documents)")
    else:
        write_metrics_csv(records, sys.stdout)
    return 0


def _cmd_semnet(args) -> int:
    corpus = parse_bibliographic_csv(args.csv, label=Path(args.csv).stem)
    stopwords_path = _stopwords_path(args.stopwords)
    policy = GraphPolicy(
        min_title_frequency=args.min_title_frequency,
        stopwords=load_stopwords(stopwords_path) if stopwords_path else None,
    )
    graph = build_coword_graph(corpus.titles(), policy)
    partition = louvain_communities(graph, resolution=args.resolution, seed=args.seed)
    scores = betweenness(graph)
    payload = export_graph(graph, partition, scores, args.format)
    out = args.out or f"{Path(args.csv).with_suffix('')}_network.{args.format}"
    Path(out).write_bytes(payload)
    summary = cluster_summary(graph, partition, scores)
    print(
        f"wrote {out}: {graph.node_count()} nodes, {graph.edge_count()} edges, "
        f"{partition.community_count()} communities (Q={partition.modularity_q:.3f}), "
        f"top betweenness: {summary.top_betweenness_token}"
    )
    return 0


def _cmd_stats(args) -> int:
    vectors_a = metric_vectors(read_metrics_csv(args.metrics_a))
    vectors_b = metric_vectors(read_metrics_csv(args.metrics_b))
    payload = {}
    for metric in METRIC_NAMES:
        x, y = vectors_a[metric], vectors_b[metric]
        entry = {}
        for side, values in (("a", x), ("b", y)):
            try:
                result = shapiro_wilk(values)
                entry[f"normality_{side}"] = {
                    "w_statistic": result.w_statistic,
                    "p_value": result.p_value,
                    "n": result.n,
                }
            except (DomainError, DegenerateDataError):
                entry[f"normality_{side}"] = None
        rank = wilcoxon_rank_sum(x, y)
        entry["rank_sum"] = {
            "u_statistic": rank.u_statistic,
            "z_score": rank.z_score,
            "p_value": rank.p_value,
            "effect_size_r": rank.effect_size_r,
            "n_x": rank.n_x,
            "n_y": rank.n_y,
        }
        payload[metric] = entry
        print(f"{metric}: p={rank.p_value:.2e} r={rank.effect_size_r:.3f}")
    rendered = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(rendered, encoding="utf-8")
    else:
        sys.stdout.write(rendered)
    return 0


_COMMANDS = {
    "compare": _cmd_compare,
    "metrics": _cmd_metrics,
    "semnet": _cmd_semnet,
    "stats": _cmd_stats,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (LexigaugeError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception:
        traceback.print_exc()
        return 2


if __name__ == "__main__":
    sys.exit(main())
