"""Stdio replay: transcript shape, determinism, golden agreement."""

import json

import pytest

from morphplay.replay import ReplayScriptError, run_replay, transcript_text
from morphplay.session import Mode
from conftest import bundled_text


def verdict_sequence(lines):
    out = []
    for line in lines:
        m = json.loads(line)
        if m["type"] == "preview" and "verdict" in m["payload"]:
            v = m["payload"]["verdict"]
            out.append(v["reason"] if v["reason"] else v["status"])
    return out


class TestRunReplay:
    def test_empty_script_transcript_shape(self, house):
        lines = run_replay(house, "")
        assert [json.loads(l)["type"] for l in lines] == ["scene", "state_update", "snapshot"]

    def test_deterministic_across_runs(self, house):
        script = bundled_text("door_lesson.script")
        assert run_replay(house, script) == run_replay(house, script)

    def test_door_lesson_verdict_story(self, house):
        lines = run_replay(house, bundled_text("door_lesson.script"))
        assert verdict_sequence(lines) == [
            "wrong-axis",
            "wrong-axis",
            "wrong-direction",
            "wrong-direction",
            "wrong-pivot",
            "feasible",
            "angle-out-of-range",
            "feasible",
        ]

    def test_door_lesson_matches_checked_in_golden(self, house):
        text = transcript_text(run_replay(house, bundled_text("door_lesson.script")))
        assert text == bundled_text("door_lesson.golden")

    def test_attic_matches_checked_in_golden(self, house):
        text = transcript_text(run_replay(house, bundled_text("attic_slide.script")))
        assert text == bundled_text("attic_slide.golden")

    def test_script_parse_error(self, house):
        with pytest.raises(ReplayScriptError):
            run_replay(house, '{"type":"reset"}\n{oops\n')

    def test_stale_seq_becomes_error_message(self, house):
        script = (
            '{"type":"set_param","seq":2,"payload":{"id":"angle","value":10}}\n'
            '{"type":"set_param","seq":1,"payload":{"id":"angle","value":20}}\n'
        )
        lines = run_replay(house, script)
        errors = [json.loads(l) for l in lines if json.loads(l)["type"] == "error"]
        assert len(errors) == 1
        assert errors[0]["payload"]["code"] == "stale_seq"

    def test_silent_verdicts_omitted_from_previews(self, house):
        lines = run_replay(house, bundled_text("door_lesson.script"), include_verdict=False)
        previews = [json.loads(l) for l in lines if json.loads(l)["type"] == "preview"]
        assert previews and all("verdict" not in p["payload"] for p in previews)

    def test_translation_mode_session(self, house):
        lines = run_replay(house, bundled_text("attic_slide.script"), mode=Mode.TRANSLATION)
        first = json.loads(lines[1])
        assert sorted(first["payload"]["params"]) == ["tx", "ty", "tz"]
