"""Regenerate the committed golden artifacts for the report tests.

Runs the bundled toy corpora through the full pipeline with a pinned
configuration and freezes (a) the report JSON with the timestamp field
removed and (b) one density SVG.  The outputs were reviewed by hand when
first generated; rerun only when an intentional behaviour change is made:

    python tests/make_goldens.py
"""

import json
import tempfile
from pathlib import Path

from lexigauge.report import (
    AnalysisConfig,
    CorpusConfig,
    OutputConfig,
    RunConfig,
    emit_density_svg,
    run_compare,
)

DATA = Path(__file__).parent / "data"


def golden_config(out_dir: str) -> RunConfig:
    return RunConfig(
        corpora=(
            CorpusConfig(csv_path=str(DATA / "corpus_process.csv"), label="Process Review"),
            CorpusConfig(
                csv_path=str(DATA / "corpus_leadership.csv"), label="Leadership Studies"
            ),
        ),
        analysis=AnalysisConfig(kde_grid_points=64, network_seed=7),
        output=OutputConfig(directory=out_dir, formats=("json", "csv", "svg", "gexf")),
    )


def main() -> None:
    with tempfile.TemporaryDirectory() as tmp:
        report = run_compare(golden_config(tmp))

    doc = report.to_json_dict()
    # environment- and location-dependent fields are excluded from the
    # golden (their stability is covered by the rerun-determinism test)
    doc.pop("provenance")
    for corpus in doc["corpora"]:
        corpus.pop("source_csv")
    (DATA / "golden_report.json").write_text(
        json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )

    a, b = report.corpora
    svg = emit_density_svg(
        a.densities["fkgl"],
        b.densities["fkgl"],
        labels=(a.label, b.label),
        title="fkgl",
    )
    (DATA / "golden_density.svg").write_bytes(svg)
    print("wrote golden_report.json and golden_density.svg")


if __name__ == "__main__":
    main()
