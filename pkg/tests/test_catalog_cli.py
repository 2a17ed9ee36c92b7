"""File formats, catalog persistence, and the command-line surface."""

import io
import json

import pytest

from semirings import __version__
from semirings.catalog import (
    build_catalog,
    family_report,
    load_catalog,
    parse_record,
    query_catalog,
    record_text,
)
from semirings.cli import main
from semirings.endo import end_semiring
from semirings.errors import CatalogMissing, StaleVersion
from semirings.fixtures import load_fixture
from semirings.semiring import serialize_sr


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_lattice_file(tmp_path):
    code, text = run_cli("check", str(tmp_path / "missing.lat"))
    assert code == 2
    path = tmp_path / "chain3.lat"
    path.write_text("n 3\nname chain3\n0 1 2\n1 1 2\n2 2 2\n")
    code, text = run_cli("check", str(path))
    assert code == 0
    assert "distributive: True" in text


def test_check_semiring_file(tmp_path):
    from semirings.fixtures import boolean_semiring

    path = tmp_path / "r2b.sr"
    path.write_text(serialize_sr(boolean_semiring()))
    code, text = run_cli("check", str(path))
    assert code == 0
    assert "congruence-simple" in text and "not a ring" in text and "|R| = 2" in text


def test_check_semiring_witness(tmp_path):
    r, _ = end_semiring(load_fixture("chain4"))
    r.name = "end_chain4"
    path = tmp_path / "end_chain4.sr"
    path.write_text(serialize_sr(r))
    code, text = run_cli("check", str(path))
    assert code == 0
    assert "dense representation witness" in text
    assert "recovered lattice of size 4" in text
    assert "faithful=True" in text and "dense=True" in text


def test_check_malformed_file(tmp_path):
    path = tmp_path / "bad.sr"
    path.write_text("n x\n")
    code, text = run_cli("check", str(path))
    assert code == 2
    assert "parse error" in text


def test_check_invalid_semiring_exits_one(tmp_path):
    path = tmp_path / "bad.sr"
    path.write_text("n 2\nzero 0\n0 1\n0 1\n\n0 0\n0 0\n")
    code, text = run_cli("check", str(path))
    assert code == 1
    assert "validation failed" in text


def test_check_srs_file(tmp_path, sr_families):
    from semirings.endo import serialize_srs

    sub = sr_families["n5"][0]
    path = tmp_path / "n5_least.srs"
    path.write_text(serialize_srs(sub))
    code, text = run_cli("check", str(path))
    assert code == 0
    assert "42 members, dense=True" in text
    assert "congruence-simple" in text and "|R| = 42" in text
    assert "dense representation witness" in text


def test_min_order_below_six_is_empty():
    code, text = run_cli("min-order", "--max-size", "5")
    assert code == 0
    assert "empty result" in text


def test_min_order_json_shape():
    code, text = run_cli("--format", "json", "min-order", "--max-size", "5")
    assert code == 0
    payload = json.loads(text)
    assert payload["minimum"] is None and payload["rows"] == []


def test_catalog_build_query_cycle(tmp_path):
    out_dir = tmp_path / "cat"
    code, _ = run_cli("catalog", "build", "--max-size", "4", "--out", str(out_dir))
    assert code == 0
    rows = query_catalog(out_dir, max_order=70)
    orders = sorted(m.order for _, _, m in rows)
    assert orders == [2, 6, 16, 20]
    assert query_catalog(out_dir, lattice_size=4, min_order=17)[0][2].order == 20
    code, text = run_cli("catalog", "query", "--out", str(out_dir), "--max-order", "10")
    assert code == 0 and "2 rows" in text


def test_catalog_rebuild_is_bit_identical(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    build_catalog(a, max_size=4)
    build_catalog(b, max_size=4)
    files_a = sorted(p.relative_to(a) for p in a.rglob("*") if p.is_file())
    files_b = sorted(p.relative_to(b) for p in b.rglob("*") if p.is_file())
    assert files_a == files_b
    for rel in files_a:
        assert (a / rel).read_bytes() == (b / rel).read_bytes()


def test_catalog_missing_and_stale(tmp_path):
    with pytest.raises(CatalogMissing):
        query_catalog(tmp_path / "nothing")
    out_dir = tmp_path / "cat"
    build_catalog(out_dir, max_size=3)
    (out_dir / "version.txt").write_text("0.0.0\n")
    with pytest.raises(StaleVersion):
        load_catalog(out_dir)


def test_catalog_record_round_trip():
    report = family_report(load_fixture("n5"))
    text = record_text(report)
    back, version = parse_record(text)
    assert version == __version__
    assert back == report and record_text(back) == text


def test_family_report_descending_orders():
    report = family_report(load_fixture("m3"))
    assert report.sr_orders == [50, 47, 46, 46, 46, 45, 44]
    assert report.end_order == report.sr_orders[0]
    assert [m.iso_class for m in report.members] == [0, 1, 2, 2, 2, 3, 4]


def test_jobs_flag_is_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    code, _ = run_cli("catalog", "build", "--max-size", "4", "--out", str(a))
    assert code == 0
    code, _ = run_cli("--jobs", "2", "catalog", "build", "--max-size", "4", "--out", str(b))
    assert code == 0
    assert (a / "index.txt").read_bytes() == (b / "index.txt").read_bytes()


def test_usage_errors_exit_two(capsys):
    assert main(["min-order"]) == 2  # missing --max-size
    assert main(["unknown-command"]) == 2


def test_table1_matches_expected_data():
    code, text = run_cli("--format", "json", "table1")
    assert code == 0
    payload = json.loads(text)
    assert payload["ok"] and payload["mismatches"] == []
    orders = {row["name"]: [m["order"] for m in row["members"]]
              for row in payload["rows"]}
    assert orders["m3"] == [50, 47, 46, 46, 46, 45, 44]


def test_compare_reports_mismatches():
    from dataclasses import replace

    from semirings.catalog import compare_with_expected, family_report

    reports = [family_report(load_fixture(name))
               for name in ("l2", "chain3", "chain4", "diamond")]
    # partial report lists only flag the missing fixtures, wrong values diff
    diffs = compare_with_expected(reports)
    assert all("no report computed" in d for d in diffs)
    broken = [replace(r, end_order=99) if r.name == "chain3" else r
              for r in reports]
    diffs = compare_with_expected(broken)
    assert any("chain3" in d and "99" in d for d in diffs)
