"""Census records, JSON round trips, CLI surface, and exit codes."""

import io
import json
import subprocess
import sys

import pytest

from murai.census import CensusRecord, compute_record, run_census, write_jsonl
from murai.cli import EXIT_INVARIANT, EXIT_OK, EXIT_SIZE_CAP, main
from murai.multicomplex import CompositionVector, Multicomplex


def run_cli(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


class TestRecords:
    def test_round_trip_is_byte_stable(self):
        c = CompositionVector((2, 1))
        rec = compute_record(Multicomplex.parse(c, "1 0; 0 1"))
        rec.iso_class = 2
        line = rec.to_json()
        again = CensusRecord.from_json(line).to_json()
        assert line == again
        doc = json.loads(line)
        assert doc["v"] == 1

    def test_basic_invariants_marked_inconclusive(self):
        c = CompositionVector((2, 1))
        rec = compute_record(Multicomplex.parse(c, "1 0"), invariants="basic")
        assert rec.buchstaber["s_status"] == "inconclusive"
        assert rec.buchstaber["canonical_lower"] is not None
        assert rec.chromatic is not None

    def test_full_census_summary(self):
        summary = run_census(CompositionVector((2, 1)), invariants="basic")
        assert len(summary.records) == 8
        assert sorted(summary.class_names) == ["Z_3", "Z_4", "Z_5"]
        assert sorted(summary.class_counts) == [1, 3, 4]
        # records carry consistent class ids
        for rec in summary.records:
            assert rec.iso_class is not None

    def test_write_jsonl(self, tmp_path):
        summary = run_census(CompositionVector((3,)), invariants="basic")
        path = tmp_path / "census.jsonl"
        assert write_jsonl(summary.records, str(path)) == 3
        lines = path.read_text().splitlines()
        assert [CensusRecord.from_json(l).gens for l in lines] == \
               [r.gens for r in summary.records]

    def test_worker_pool_matches_serial(self):
        serial = run_census(CompositionVector((2, 1)), invariants="basic", jobs=1)
        parallel = run_census(CompositionVector((2, 1)), invariants="basic", jobs=2)
        assert [r.to_json() for r in serial.records] == \
               [r.to_json() for r in parallel.records]


class TestCli:
    def test_dual(self):
        code, out = run_cli(["dual", "--c", "2,2", "--gens", "1 0; 0 2"])
        assert code == EXIT_OK and out.strip() == "1 1; 0 2"

    def test_dual_item_two(self):
        code, out = run_cli(["dual", "--c", "2,1", "--gens", "1 0"])
        assert code == EXIT_OK and out.strip() == "2 0; 0 1"

    def test_facets_m1(self):
        code, out = run_cli(["facets", "--c", "3", "--gens", "1"])
        assert code == EXIT_OK
        assert "4 facets" in out

    def test_check_all(self):
        code, out = run_cli(["check", "--c", "2,1,1",
                             "--gens", "2 0 0; 0 1 0; 0 0 1", "--all"])
        assert code == EXIT_OK
        assert "sphere: ok" in out and "stacked: yes, k=3" in out and "chordal" in out

    def test_buchstaber_json(self):
        code, out = run_cli(["buchstaber", "--c", "2,1", "--gens", "1 0; 0 1",
                             "--json"])
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["buchstaber"]["s2"] == 3

    def test_cyclic_compare(self):
        code, out = run_cli(["cyclic-compare", "--c", "2,1", "--gens", "1 0",
                             "--p", "4", "--q", "2"])
        assert code == EXIT_OK and out.startswith("isomorphic to Delta(4,2)")

    def test_census_text_and_jsonl(self, tmp_path):
        path = tmp_path / "out.jsonl"
        code, out = run_cli(["census", "--c", "2,1", "--invariants", "basic",
                             "--out", str(path)])
        assert code == EXIT_OK
        assert "8 multicomplexes, 3 iso classes" in out
        assert len(path.read_text().splitlines()) == 8

    def test_usage_error_exit_code(self):
        with pytest.raises(SystemExit) as exc:
            main(["dual", "--c", "2,1"])  # missing --gens
        assert exc.value.code == 2

    def test_size_cap_exit_code(self):
        code, _ = run_cli(["census", "--c", "3,3", "--max-grid", "10"])
        assert code == EXIT_SIZE_CAP

    def test_invariant_violation_exit_code(self, monkeypatch):
        from murai import cli
        from murai.errors import InvariantViolation

        def boom(args, out):
            raise InvariantViolation("forced")

        monkeypatch.setitem(cli._COMMANDS, "dual", boom)
        code, _ = run_cli(["dual", "--c", "2,1", "--gens", "1 0"])
        assert code == EXIT_INVARIANT

    def test_console_entry_point(self):
        proc = subprocess.run([sys.executable, "-m", "murai", "dual",
                               "--c", "2,1", "--gens", "0 1"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert proc.stdout.strip() == "1 1"
