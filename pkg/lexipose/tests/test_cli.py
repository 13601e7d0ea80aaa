import sys
import os
sys.path.append(os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

import contextlib
import io
import json
import tempfile
import unittest

from core.schemas import DistanceTable, LfsLine, RunReport
from main import main
from services.reference_service import ReferenceService
from models.vocabulary import MODAL
from test_posture import make_skeleton

UP_OPEN = ((0, 0, 0.3), (0, 0, 0.25))
FRONT_FOLDED = ((0, 0.3, 0), (0, -0.25, 0))
DOWN_OPEN = ((0, 0, -0.3), (0, 0, -0.25))
OUTSIDE_UP = ((0.3, 0, 0), (0, 0, 0.25))


def frame_line(frame, arm, forearm, drop=None):
    joints = {name: list(p) for name, p in make_skeleton(arm, forearm).joints.items()}
    if drop:
        joints.pop(drop)
    return json.dumps({"frame": frame, "joints": joints})


class CliTestCase(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def path(self, name):
        return os.path.join(self.tmp, name)

    def write_frames(self, name, lines):
        path = self.path(name)
        with open(path, "w") as f:
            f.write("\n".join(lines) + "\n")
        return path

    def run_cli(self, *argv):
        out, err = io.StringIO(), io.StringIO()
        with contextlib.redirect_stderr(err):
            code = main(list(argv) + ["--workers", "2"], out=out)
        return code, out.getvalue(), err.getvalue()

    def write_store(self, name, entries):
        path = self.path(name)
        with open(path, "w") as f:
            json.dump(entries, f)
        return path


def singleton_masses(term):
    return [1.0 if t == term else 0.0 for t in MODAL.terms]


class TestFuzzifyCommand(CliTestCase):
    def test_three_frames_three_lines(self):
        frames = self.write_frames("rec.jsonl", [
            frame_line(0, *UP_OPEN),
            frame_line(1, *FRONT_FOLDED),
            frame_line(2, *OUTSIDE_UP),
        ])
        code, out, _ = self.run_cli("fuzzify", frames)
        self.assertEqual(code, 0)
        lines = [LfsLine.model_validate_json(line) for line in out.splitlines()]
        self.assertEqual([line.frame for line in lines], [0, 1, 2])
        self.assertEqual(lines[0].lfs, {"up": 1.0})
        self.assertEqual(lines[1].lfs, {"frontfolded": 1.0})
        self.assertEqual(lines[2].lfs, {"outsidevmiddle": 1.0})
        self.assertEqual(lines[2].arm, {"outside": 1.0})

    def test_missing_joint_fails_with_frame(self):
        frames = self.write_frames("rec.jsonl", [
            frame_line(0, *UP_OPEN),
            frame_line(7, *UP_OPEN, drop="right_wrist"),
            frame_line(8, *DOWN_OPEN),
        ])
        code, out, err = self.run_cli("fuzzify", frames)
        self.assertEqual(code, 2)
        self.assertIn("frame 7", err)
        self.assertIn("right_wrist", err)

    def test_skip_bad_frames(self):
        frames = self.write_frames("rec.jsonl", [
            frame_line(0, *UP_OPEN),
            frame_line(7, *UP_OPEN, drop="right_wrist"),
            frame_line(8, *DOWN_OPEN),
        ])
        code, out, err = self.run_cli("fuzzify", frames, "--skip-bad-frames")
        self.assertEqual(code, 0)
        self.assertEqual(len(out.splitlines()), 2)
        self.assertIn("frame 7", err)

    def test_missing_file_and_malformed_line(self):
        code, _, _ = self.run_cli("fuzzify", self.path("absent.jsonl"))
        self.assertEqual(code, 1)
        frames = self.write_frames("bad.jsonl", ["{not json"])
        code, _, err = self.run_cli("fuzzify", frames)
        self.assertEqual(code, 1)
        self.assertIn("malformed", err)

    def test_undecodable_line(self):
        path = self.path("bytes.jsonl")
        with open(path, "wb") as f:
            f.write((frame_line(0, *UP_OPEN) + "\n").encode())
            f.write(b"\xff\xfe\x00garbage\n")
            f.write((frame_line(2, *DOWN_OPEN) + "\n").encode())
        code, out, err = self.run_cli("fuzzify", path)
        self.assertEqual(code, 1)
        self.assertIn("frame 1", err)

        code, out, err = self.run_cli("fuzzify", path, "--skip-bad-frames")
        self.assertEqual(code, 0)
        self.assertEqual([LfsLine.model_validate_json(line).frame for line in out.splitlines()], [0, 2])

    def test_output_is_deterministic(self):
        frames = self.write_frames("rec.jsonl", [frame_line(i, *OUTSIDE_UP) for i in range(6)])
        _, first, _ = self.run_cli("fuzzify", frames)
        _, second, _ = self.run_cli("fuzzify", frames)
        self.assertEqual(first, second)


class TestLearnCommand(CliTestCase):
    def test_learn_and_relearn(self):
        frames = self.write_frames("rec.jsonl", [frame_line(i, *UP_OPEN) for i in range(5)])
        store = self.path("refs.json")
        code, _, _ = self.run_cli("learn", frames, "--name", "raise", "--tolerance", "0.2", "--store", store)
        self.assertEqual(code, 0)
        with open(store) as f:
            entries = json.load(f)
        self.assertEqual(len(entries), 1)
        self.assertAlmostEqual(sum(entries[0]["masses"]), 1.0, places=12)
        self.assertEqual(entries[0]["action_id"], "raise")

        code, out, _ = self.run_cli(
            "learn", frames, "--name", "raise", "--tolerance", "0.3", "--store", store, "--json"
        )
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["replaced"])
        with open(store) as f:
            entries = json.load(f)
        self.assertEqual(len(entries), 1)
        self.assertEqual(entries[0]["tolerance"], 0.3)

    def test_negative_tolerance(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        code, _, _ = self.run_cli("learn", frames, "--name", "x", "--tolerance", "-1", "--store", self.path("r.json"))
        self.assertEqual(code, 2)

    def test_corrupt_store(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        store = self.path("refs.json")
        with open(store, "w") as f:
            f.write("{oops")
        code, _, _ = self.run_cli("learn", frames, "--name", "x", "--tolerance", "0.1", "--store", store)
        self.assertEqual(code, 1)

        with open(store, "wb") as f:
            f.write(b"\xff\xfe\x00[]")
        code, _, err = self.run_cli("learn", frames, "--name", "x", "--tolerance", "0.1", "--store", store)
        self.assertEqual(code, 1)
        self.assertIn("reference store", err)

    def test_sqlite_store(self):
        store = self.path("refs.db")
        for name, pose in (("raise", UP_OPEN), ("rest", DOWN_OPEN)):
            frames = self.write_frames(f"{name}.jsonl", [frame_line(0, *pose)])
            code, _, _ = self.run_cli("learn", frames, "--name", name, "--tolerance", "0.2", "--store", store)
            self.assertEqual(code, 0)
        refs = ReferenceService(store, MODAL).load_references()
        self.assertEqual([r.name for r in refs], ["raise", "rest"])
        self.assertEqual(refs[0].lfs.support(), ["up"])


class TestDecideCommand(CliTestCase):
    def test_frame_equal_to_reference(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *FRONT_FOLDED)])
        store = self.write_store("refs.json", [
            {"name": "hold", "masses": singleton_masses("frontfolded"), "tolerance": 0.1},
            {"name": "raise", "masses": singleton_masses("up"), "tolerance": 0.1},
        ])
        code, out, _ = self.run_cli("decide", frames, "--store", store, "--json")
        self.assertEqual(code, 0)
        report = RunReport.model_validate_json(out)
        record = report.records[0]
        self.assertEqual(record.outcome.recognized, ("hold",))
        self.assertEqual(record.outcome.distances["hold"], 0.0)
        self.assertEqual(report.summary["closest_reference"], 1)
        self.assertEqual(sum(report.summary.values()), report.frame_total)
        # Re-parsed output dumps back to the same document.
        self.assertEqual(json.loads(report.model_dump_json()), json.loads(out))

    def test_overlapping_tolerances_under_strict(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        store = self.write_store("refs.json", [
            {"name": "f", "masses": singleton_masses("front"), "tolerance": 0.6},
            {"name": "o", "masses": singleton_masses("outside"), "tolerance": 0.6},
        ])
        code, out, _ = self.run_cli("decide", frames, "--store", store, "--strategy", "tolerance_strict")
        self.assertEqual(code, 3)
        self.assertEqual(out, "")

    def test_emergency_reference_wins(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *OUTSIDE_UP), frame_line(1, *DOWN_OPEN)])
        store = self.write_store("refs.json", [
            {"name": "pointing", "masses": singleton_masses("outside"), "tolerance": 0.10},
            {"name": "standing", "masses": singleton_masses("down"), "tolerance": 0.08},
            {"name": "protect", "masses": singleton_masses("outsidehmiddle"), "tolerance": 1.0,
             "action_class": "emergency", "action_id": "stop"},
        ])
        code, out, _ = self.run_cli("decide", frames, "--store", store, "--strategy", "emergency_priority", "--json")
        self.assertEqual(code, 0)
        report = RunReport.model_validate_json(out)
        self.assertEqual(report.records[0].outcome.recognized, ("protect",))
        self.assertEqual(report.records[0].outcome.chosen_action, "stop")
        self.assertEqual(report.records[1].outcome.recognized, ("standing",))

    def test_abstention_exits_zero(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        store = self.write_store("refs.json", [
            {"name": "rest", "masses": singleton_masses("down"), "tolerance": 0.1},
        ])
        code, out, _ = self.run_cli("decide", frames, "--store", store, "--strategy", "tolerance_overlap")
        self.assertEqual(code, 0)
        self.assertIn("no_reference_in_tolerance=1", out)

    def test_config_file_and_ground_override(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        store = self.write_store("refs.json", [
            {"name": "rest", "masses": singleton_masses("down"), "tolerance": 2.5},
        ])
        config = self.path("config.json")
        with open(config, "w") as f:
            json.dump({"decision": {"strategy": "tolerance_strict"}, "max_dist": 3.0}, f)
        code, out, _ = self.run_cli("decide", frames, "--store", store, "--config", config, "--json")
        self.assertEqual(code, 0)
        report = RunReport.model_validate_json(out)
        self.assertEqual(report.strategy, "tolerance_strict")
        self.assertEqual(report.records[0].outcome.recognized, ("rest",))

        with open(config, "w") as f:
            json.dump({"max_dist": 1.0}, f)
        code, _, _ = self.run_cli("decide", frames, "--store", store, "--config", config)
        self.assertEqual(code, 3)

    def test_empty_store(self):
        frames = self.write_frames("rec.jsonl", [frame_line(0, *UP_OPEN)])
        store = self.write_store("refs.json", [])
        code, _, _ = self.run_cli("decide", frames, "--store", store)
        self.assertEqual(code, 2)


class TestDistanceCommand(CliTestCase):
    def test_symmetric_table(self):
        store = self.write_store("refs.json", [
            {"name": "a", "masses": singleton_masses("front")},
            {"name": "b", "masses": singleton_masses("outside")},
            {"name": "c", "masses": {"up": 0.5, "uphmiddle": 0.5}},
        ])
        code, out, _ = self.run_cli("distance", "--store", store, "--json")
        self.assertEqual(code, 0)
        table = DistanceTable.model_validate_json(out)
        self.assertEqual(table.names, ["a", "b", "c"])
        for i in range(3):
            self.assertEqual(table.distances[i][i], 0.0)
            for j in range(3):
                self.assertEqual(table.distances[i][j], table.distances[j][i])
        self.assertEqual(table.distances[0][1], 1.0)
        self.assertAlmostEqual(table.distances[2][0], 0.5 * 1.0 + 0.5 * 2.0)

    def test_duplicate_references_are_zero_apart(self):
        store = self.write_store("refs.json", [
            {"name": "a", "masses": singleton_masses("front")},
            {"name": "b", "masses": singleton_masses("front")},
        ])
        code, out, _ = self.run_cli("distance", "--store", store)
        self.assertEqual(code, 0)
        self.assertIn("0.0000", out)

    def test_needs_two_references(self):
        store = self.write_store("refs.json", [{"name": "a", "masses": singleton_masses("front")}])
        code, _, _ = self.run_cli("distance", "--store", store)
        self.assertEqual(code, 2)


class TestValidateCommand(CliTestCase):
    def test_reports_overlaps_in_overlap_mode(self):
        store = self.write_store("refs.json", [
            {"name": "f", "masses": singleton_masses("front"), "tolerance": 0.6},
            {"name": "o", "masses": singleton_masses("outside"), "tolerance": 0.6},
        ])
        code, out, _ = self.run_cli("validate", "--store", store, "--strategy", "tolerance_overlap", "--json")
        self.assertEqual(code, 0)
        summary = json.loads(out)
        self.assertEqual(summary["ground_terms"], 24)
        self.assertEqual(summary["ground_max"], 3.0)
        self.assertEqual(summary["triangle_violations"], 0)
        self.assertEqual(len(summary["overlaps"]), 1)

        code, _, _ = self.run_cli("validate", "--store", store, "--strategy", "tolerance_strict")
        self.assertEqual(code, 3)

    def test_bad_config_document(self):
        config = self.path("config.json")
        with open(config, "w") as f:
            json.dump({"partitions": {"a_theta": {"lexicon": ["down", "up"], "modal_angles": {"down": 0.0}}}}, f)
        code, _, _ = self.run_cli("validate", "--config", config)
        self.assertEqual(code, 3)

    def test_malformed_config_values(self):
        config = self.path("config.json")
        documents = [
            ({"rules": {"arm_table": {"rows": ["down"], "cols": ["up"], "cells": [["down", "up", "down"]]}}}, "cells"),
            ({"partitions": {"a_theta": {"lexicon": ["down", "up"], "modal_angles": {"down": "low", "up": 180.0}}}}, "non-numeric"),
        ]
        for doc, message in documents:
            with open(config, "w") as f:
                json.dump(doc, f)
            code, _, err = self.run_cli("validate", "--config", config)
            self.assertEqual(code, 3, doc)
            self.assertIn(message, err)


if __name__ == "__main__":
    unittest.main()
