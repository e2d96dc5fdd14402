import csv
import json
import re
from pathlib import Path
from xml.etree import ElementTree as ET

import pytest

from lexigauge import cli
from lexigauge.errors import ConfigError, DomainError, LexigaugeError
from lexigauge.metrics import read_metrics_csv
from lexigauge.report import (
    AnalysisConfig,
    CorpusConfig,
    OutputConfig,
    RunConfig,
    emit_density_svg,
    load_run_config,
    report_json_bytes,
    run_compare,
)
from lexigauge.stats import DensitySeries, kde


def make_config(data_dir, out_dir, *, formats=("json", "csv", "svg", "gexf"), **analysis):
    return RunConfig(
        corpora=(
            CorpusConfig(csv_path=str(data_dir / "corpus_process.csv"), label="Process Review"),
            CorpusConfig(
                csv_path=str(data_dir / "corpus_leadership.csv"), label="Leadership Studies"
            ),
        ),
        analysis=AnalysisConfig(kde_grid_points=64, network_seed=7, **analysis),
        output=OutputConfig(directory=str(out_dir), formats=formats),
    )


# ---------------------------------------------------------------------------
# Config validation and loading
# ---------------------------------------------------------------------------


def test_config_requires_seed_with_sample_size(data_dir, tmp_path):
    with pytest.raises(ConfigError):
        RunConfig(
            corpora=(
                CorpusConfig(csv_path="a.csv", label="A", sample_size=5),
                CorpusConfig(csv_path="b.csv", label="B"),
            )
        )


def test_config_rejects_identical_labels():
    with pytest.raises(ConfigError):
        RunConfig(
            corpora=(
                CorpusConfig(csv_path="a.csv", label="same"),
                CorpusConfig(csv_path="b.csv", label="same"),
            )
        )


def test_config_rejects_labels_colliding_as_filenames():
    with pytest.raises(ConfigError):
        RunConfig(
            corpora=(
                CorpusConfig(csv_path="a.csv", label="Corpus A"),
                CorpusConfig(csv_path="b.csv", label="corpus-a"),
            )
        )


def test_config_rejects_unknown_format():
    with pytest.raises(ConfigError):
        RunConfig(
            corpora=(
                CorpusConfig(csv_path="a.csv", label="A"),
                CorpusConfig(csv_path="b.csv", label="B"),
            ),
            output=OutputConfig(formats=("json", "pdf")),
        )


def test_load_run_config_happy_path(tmp_path, data_dir):
    manifest = {
        "corpora": [
            {"csv_path": str(data_dir / "corpus_process.csv"), "label": "A", "sample_size": 10, "seed": 1},
            {"csv_path": str(data_dir / "corpus_leadership.csv"), "label": "B"},
        ],
        "analysis": {"min_title_frequency": 1, "kde_grid_points": 32},
        "output": {"directory": str(tmp_path / "out"), "formats": ["json"]},
    }
    path = tmp_path / "run.json"
    path.write_text(json.dumps(manifest))
    config = load_run_config(path)
    assert config.corpora[0].sample_size == 10
    assert config.analysis.min_title_frequency == 1
    assert config.output.formats == ("json",)


def test_load_run_config_rejects_one_corpus(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"corpora": [{"csv_path": "a.csv", "label": "A"}]}))
    with pytest.raises(ConfigError):
        load_run_config(path)


def test_load_run_config_rejects_unknown_keys(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(
        json.dumps(
            {
                "corpora": [
                    {"csv_path": "a.csv", "label": "A"},
                    {"csv_path": "b.csv", "label": "B"},
                ],
                "analysis": {"made_up_knob": 3},
            }
        )
    )
    with pytest.raises(ConfigError):
        load_run_config(path)


# ---------------------------------------------------------------------------
# run_compare
# ---------------------------------------------------------------------------


def test_run_compare_report_structure(data_dir, tmp_path):
    report = run_compare(make_config(data_dir, tmp_path / "out"))
    assert len(report.corpora) == 2
    for corpus in report.corpora:
        assert set(corpus.descriptives) == {"title_length", "fkgl", "yules_k"}
        assert corpus.clusters.total_nodes == corpus.graph.node_count()
    assert set(report.comparisons) == {"title_length", "fkgl", "yules_k"}
    # toy corpora: A has one abstract-less document, B none
    assert report.corpora[0].missing_abstract_count == 1
    assert report.corpora[1].missing_abstract_count == 0
    assert report.corpora[0].skipped_rows == 1


def test_run_compare_matches_golden_snapshot(data_dir, tmp_path):
    report = run_compare(make_config(data_dir, tmp_path / "out"))
    doc = report.to_json_dict()
    doc.pop("provenance")
    for corpus in doc["corpora"]:
        corpus.pop("source_csv")
    rendered = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    golden = (data_dir / "golden_report.json").read_text(encoding="utf-8")
    assert rendered == golden


def test_run_compare_writes_expected_files(data_dir, tmp_path):
    out = tmp_path / "out"
    run_compare(make_config(data_dir, out, formats=("json", "csv", "svg", "gexf", "graphml")))
    names = {p.name for p in out.iterdir()}
    assert "report.json" in names
    for slug in ("process_review", "leadership_studies"):
        assert f"metrics_{slug}.csv" in names
        assert f"network_{slug}.gexf" in names
        assert f"network_{slug}.graphml" in names
        for metric in ("title_length", "fkgl", "yules_k"):
            assert f"density_{metric}_{slug}.csv" in names
    for metric in ("title_length", "fkgl", "yules_k"):
        assert f"density_{metric}.svg" in names
    assert not [n for n in names if n.startswith(".lexigauge-")]


def test_run_compare_deterministic_across_runs(data_dir, tmp_path):
    config_a = make_config(data_dir, tmp_path / "one")
    config_b = make_config(data_dir, tmp_path / "two")
    run_compare(config_a)
    run_compare(config_b)

    def normalized_report(path: Path) -> str:
        doc = json.loads(path.read_text())
        doc["provenance"].pop("generated_at")
        return json.dumps(doc, sort_keys=True)

    assert normalized_report(tmp_path / "one" / "report.json") == normalized_report(
        tmp_path / "two" / "report.json"
    )
    for name in [
        "metrics_process_review.csv",
        "density_fkgl.svg",
        "network_process_review.gexf",
    ]:
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_run_compare_sampling_is_seeded(data_dir, tmp_path):
    config = RunConfig(
        corpora=(
            CorpusConfig(
                csv_path=str(data_dir / "corpus_process.csv"),
                label="A",
                sample_size=12,
                seed=5,
            ),
            CorpusConfig(
                csv_path=str(data_dir / "corpus_leadership.csv"),
                label="B",
                sample_size=12,
                seed=6,
            ),
        ),
        analysis=AnalysisConfig(kde_grid_points=64),
        output=OutputConfig(directory=str(tmp_path / "out"), formats=("json", "csv")),
    )
    report = run_compare(config)
    assert all(len(c.records) == 12 for c in report.corpora)
    table = read_metrics_csv(tmp_path / "out" / "metrics_a.csv")
    assert len(table) == 12
    assert len({r.doc_id for r in table}) == 12


def test_run_compare_sample_error_names_corpus_and_leaves_no_outputs(data_dir, tmp_path):
    out = tmp_path / "out"
    config = RunConfig(
        corpora=(
            CorpusConfig(
                csv_path=str(data_dir / "corpus_process.csv"),
                label="tiny-one",
                sample_size=9999,
                seed=1,
            ),
            CorpusConfig(csv_path=str(data_dir / "corpus_leadership.csv"), label="B"),
        ),
        output=OutputConfig(directory=str(out)),
    )
    with pytest.raises(DomainError) as err:
        run_compare(config)
    assert "tiny-one" in str(err.value)
    assert not out.exists() or not any(out.iterdir())


def test_run_compare_missing_file_names_corpus(data_dir, tmp_path):
    config = RunConfig(
        corpora=(
            CorpusConfig(csv_path=str(tmp_path / "nope.csv"), label="ghost"),
            CorpusConfig(csv_path=str(data_dir / "corpus_leadership.csv"), label="B"),
        ),
        output=OutputConfig(directory=str(tmp_path / "out")),
    )
    with pytest.raises((LexigaugeError, OSError)):
        run_compare(config)


def test_metric_csv_lists_every_sampled_document_once(data_dir, tmp_path):
    out = tmp_path / "out"
    run_compare(make_config(data_dir, out, formats=("csv",)))
    for slug, expected in (("process_review", 20), ("leadership_studies", 20)):
        rows = read_metrics_csv(out / f"metrics_{slug}.csv")
        assert len(rows) == expected
        assert len({r.doc_id for r in rows}) == expected


def test_report_json_bytes_is_order_stable(data_dir, tmp_path):
    report = run_compare(make_config(data_dir, tmp_path / "out", formats=("json",)))
    assert report_json_bytes(report) == report_json_bytes(report)


def test_run_compare_honors_per_corpus_column_map(data_dir, tmp_path):
    renamed = tmp_path / "renamed.csv"
    original = (data_dir / "corpus_process.csv").read_text(encoding="utf-8")
    header, rest = original.split("\n", 1)
    assert header == "Title,Abstract,Year,Source title,Cited by,Author count"
    renamed.write_text("T,Summary,Y,Venue,Cites,Authors\n" + rest, encoding="utf-8")
    config = RunConfig(
        corpora=(
            CorpusConfig(
                csv_path=str(renamed),
                label="Renamed",
                column_map={"title": "T", "abstract": "Summary", "year": "Y"},
            ),
            CorpusConfig(csv_path=str(data_dir / "corpus_leadership.csv"), label="B"),
        ),
        analysis=AnalysisConfig(kde_grid_points=64),
        output=OutputConfig(directory=str(tmp_path / "out"), formats=("json",)),
    )
    report = run_compare(config)
    assert report.corpora[0].parsed_documents == 20


# ---------------------------------------------------------------------------
# Density SVG
# ---------------------------------------------------------------------------


def _two_series():
    values_a = [float(v) for v in [1, 2, 2, 3, 3, 3, 4, 4, 5, 6]]
    values_b = [float(v) for v in [4, 5, 5, 6, 6, 6, 7, 8, 8, 9]]
    return kde(values_a, 64), kde(values_b, 64)


def test_svg_contains_exactly_two_paths():
    a, b = _two_series()
    svg = emit_density_svg(a, b, labels=("one", "two")).decode()
    assert svg.count("<path ") == 2
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")


def test_svg_y_axis_upper_bound_covers_max_density():
    a, b = _two_series()
    svg = emit_density_svg(a, b, labels=("one", "two")).decode()
    peak = max(max(a.density), max(b.density))
    tick_values = [
        float(m)
        for m in re.findall(r'font-size="11">([-0-9.e]+)</text>', svg)
    ]
    assert max(tick_values) >= peak


def test_svg_matches_golden(data_dir, tmp_path):
    report = run_compare(make_config(data_dir, tmp_path / "out", formats=("json",)))
    a, b = report.corpora
    svg = emit_density_svg(
        a.densities["fkgl"], b.densities["fkgl"], labels=(a.label, b.label), title="fkgl"
    )
    assert svg == (data_dir / "golden_density.svg").read_bytes()


def test_svg_rejects_mismatched_series():
    a, _ = _two_series()
    broken = DensitySeries(grid=a.grid, density=a.density[:-1], bandwidth=a.bandwidth)
    with pytest.raises(DomainError):
        emit_density_svg(a, broken, labels=("x", "y"))


def test_svg_rejects_empty_series():
    a, _ = _two_series()
    empty = DensitySeries(grid=(), density=(), bandwidth=1.0)
    with pytest.raises(DomainError):
        emit_density_svg(a, empty, labels=("x", "y"))


def test_svg_escapes_labels():
    a, b = _two_series()
    svg = emit_density_svg(a, b, labels=("a<b", "c&d")).decode()
    assert "a&lt;b" in svg and "c&amp;d" in svg


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_compare_with_flags(data_dir, tmp_path, capsys):
    out = tmp_path / "out"
    code = cli.main(
        [
            "compare",
            "--corpus-a", str(data_dir / "corpus_process.csv"),
            "--label-a", "A",
            "--corpus-b", str(data_dir / "corpus_leadership.csv"),
            "--label-b", "B",
            "--out", str(out),
            "--formats", "json,csv",
        ]
    )
    assert code == 0
    assert (out / "report.json").exists()
    printed = capsys.readouterr().out
    assert re.search(r"fkgl: U=\S+ p=\d\.\d{2}e[+-]\d+ r=", printed)


def test_cli_compare_with_config_and_overrides(data_dir, tmp_path):
    manifest = {
        "corpora": [
            {"csv_path": str(data_dir / "corpus_process.csv"), "label": "A"},
            {"csv_path": str(data_dir / "corpus_leadership.csv"), "label": "B"},
        ],
        "analysis": {"kde_grid_points": 32},
        "output": {"directory": str(tmp_path / "ignored"), "formats": ["json", "gexf"]},
    }
    config_path = tmp_path / "run.json"
    config_path.write_text(json.dumps(manifest))
    out = tmp_path / "real"
    code = cli.main(["compare", "--config", str(config_path), "--out", str(out)])
    assert code == 0
    assert (out / "report.json").exists()
    assert (out / "network_a.gexf").exists()
    assert not (tmp_path / "ignored").exists()


def test_cli_compare_without_corpora_is_input_error(capsys):
    assert cli.main(["compare"]) == 1
    assert "error:" in capsys.readouterr().err


def test_cli_compare_missing_file_is_input_error(tmp_path, capsys):
    code = cli.main(
        [
            "compare",
            "--corpus-a", str(tmp_path / "missing_a.csv"),
            "--corpus-b", str(tmp_path / "missing_b.csv"),
            "--out", str(tmp_path / "out"),
        ]
    )
    assert code == 1


def test_cli_compare_oversized_sample_is_input_error(data_dir, tmp_path, capsys):
    code = cli.main(
        [
            "compare",
            "--corpus-a", str(data_dir / "corpus_process.csv"),
            "--corpus-b", str(data_dir / "corpus_leadership.csv"),
            "--sample-size", "9999",
            "--seed", "1",
            "--out", str(tmp_path / "out"),
        ]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err


def test_cli_internal_error_maps_to_2(data_dir, tmp_path, monkeypatch, capsys):
    def boom(config):
        raise RuntimeError("unexpected")

    monkeypatch.setattr(cli, "run_compare", boom)
    code = cli.main(
        [
            "compare",
            "--corpus-a", str(data_dir / "corpus_process.csv"),
            "--corpus-b", str(data_dir / "corpus_leadership.csv"),
            "--out", str(tmp_path / "out"),
        ]
    )
    assert code == 2


def test_cli_metrics_to_stdout(data_dir, capsys):
    code = cli.main(["metrics", str(data_dir / "corpus_process.csv")])
    assert code == 0
    out = capsys.readouterr().out
    assert out.splitlines()[0] == "doc_id,title_length_chars,fkgl,yules_k"
    assert len(out.splitlines()) == 21


def test_cli_metrics_to_file(data_dir, tmp_path):
    target = tmp_path / "table.csv"
    code = cli.main(["metrics", str(data_dir / "corpus_process.csv"), "--out", str(target)])
    assert code == 0
    assert len(read_metrics_csv(target)) == 20


def test_cli_semnet_writes_gexf(data_dir, tmp_path, capsys):
    target = tmp_path / "net.gexf"
    code = cli.main(
        ["semnet", str(data_dir / "corpus_leadership.csv"), "--out", str(target)]
    )
    assert code == 0
    root = ET.parse(target).getroot()
    assert root.tag == "{http://www.gexf.net/1.2draft}gexf"
    assert "top betweenness" in capsys.readouterr().out


def test_cli_semnet_respects_stopwords_env(data_dir, tmp_path, monkeypatch):
    stopfile = tmp_path / "stops.txt"
    stopfile.write_text("leadership\n")
    monkeypatch.setenv(cli.STOPWORDS_ENV, str(stopfile))
    target = tmp_path / "net.gexf"
    code = cli.main(
        ["semnet", str(data_dir / "corpus_leadership.csv"), "--out", str(target)]
    )
    assert code == 0
    payload = target.read_text()
    assert 'id="leadership"' not in payload
    # with the env var cleared the node reappears
    monkeypatch.delenv(cli.STOPWORDS_ENV)
    target2 = tmp_path / "net2.gexf"
    assert cli.main(
        ["semnet", str(data_dir / "corpus_leadership.csv"), "--out", str(target2)]
    ) == 0
    assert 'id="leadership"' in target2.read_text()


def test_cli_stats_over_metric_tables(data_dir, tmp_path, capsys):
    table_a = tmp_path / "a.csv"
    table_b = tmp_path / "b.csv"
    assert cli.main(["metrics", str(data_dir / "corpus_process.csv"), "--out", str(table_a)]) == 0
    assert cli.main(["metrics", str(data_dir / "corpus_leadership.csv"), "--out", str(table_b)]) == 0
    capsys.readouterr()
    result = tmp_path / "stats.json"
    code = cli.main(["stats", str(table_a), str(table_b), "--out", str(result)])
    assert code == 0
    doc = json.loads(result.read_text())
    assert set(doc) == {"title_length", "fkgl", "yules_k"}
    for entry in doc.values():
        assert set(entry) == {"normality_a", "normality_b", "rank_sum"}
        assert 0.0 <= entry["rank_sum"]["p_value"] <= 1.0
    printed = capsys.readouterr().out
    assert re.search(r"p=\d\.\d{2}e[+-]\d+", printed)
