"""Two-corpus comparison run
=============================

Runs the complete pipeline on the bundled toy corpora: parse, per-document
metrics, six-number summaries, Shapiro-Wilk screening, Wilcoxon rank-sum
comparisons with effect sizes, co-word networks, and the artifact bundle
(report JSON, metric/density CSVs, density SVGs, GEXF graphs).

Run:  python demos/02_corpus_comparison.py
"""

import tempfile
from pathlib import Path

from lexigauge import AnalysisConfig, CorpusConfig, OutputConfig, RunConfig, run_compare

DATA = Path(__file__).parent.parent / "tests" / "data"
out_dir = Path(tempfile.mkdtemp(prefix="lexigauge-demo-"))

config = RunConfig(
    corpora=(
        CorpusConfig(csv_path=str(DATA / "corpus_process.csv"), label="Process Review"),
        CorpusConfig(csv_path=str(DATA / "corpus_leadership.csv"), label="Leadership Studies"),
    ),
    analysis=AnalysisConfig(kde_grid_points=128, network_seed=7),
    output=OutputConfig(directory=str(out_dir), formats=("json", "csv", "svg", "gexf")),
)
report = run_compare(config)

for corpus in report.corpora:
    print(f"\n=== {corpus.label} ===")
    print(f"documents: {corpus.parsed_documents} parsed, "
          f"{corpus.skipped_rows} skipped, "
          f"{corpus.missing_abstract_count} without abstract")
    biblio = corpus.bibliometrics
    print(f"authors/document: {biblio.authors_per_document:.2f}, "
          f"citations/document: {biblio.citations_per_document:.1f}, "
          f"annual growth: {biblio.annual_growth_pct:.1f}%")
    for metric, d in corpus.descriptives.items():
        print(f"{metric:>13}: min {d.minimum:7.2f}  q1 {d.q1:7.2f}  "
              f"median {d.median:7.2f}  mean {d.mean:7.2f}  "
              f"q3 {d.q3:7.2f}  max {d.maximum:7.2f}")

print("\n=== comparisons (two-sided rank-sum) ===")
for metric, result in report.comparisons.items():
    print(f"{metric:>13}: U={result.u_statistic:6.1f}  p={result.p_value:.2e}  "
          f"r={result.effect_size_r:.3f}")

print(f"\nartifacts in {out_dir}:")
for path in sorted(out_dir.iterdir()):
    print("  ", path.name)
