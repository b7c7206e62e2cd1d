"""Session state machine: parameter handling, broadcasts, snapshots, fuzzing."""

import json
import random

import pytest

from conftest import params_in_bounds, random_session_message
from morphplay.protocol import Message
from morphplay.session import (
    IndexSelector,
    Mode,
    Slider,
    create_session,
    handle_message,
    restore_session,
    snapshot,
)


def msg(mtype, session="sess", **payload):
    return Message(mtype, session, None, payload)


@pytest.fixture()
def rotation(house):
    return create_session(house, Mode.ROTATION, "sess")


@pytest.fixture()
def translation(house):
    return create_session(house, Mode.TRANSLATION, "sess")


class TestCreateSession:
    def test_rotation_part_selector_count(self, rotation):
        kind = rotation.param_defs["part"].kind
        assert isinstance(kind, IndexSelector)
        assert kind.count == 8

    def test_translation_has_exactly_three_sliders_at_zero(self, translation):
        assert sorted(translation.param_defs) == ["tx", "ty", "tz"]
        for d in translation.param_defs.values():
            assert isinstance(d.kind, Slider)
        assert all(translation.params[p] == 0.0 for p in ("tx", "ty", "tz"))

    def test_angle_slider_bounds(self, rotation):
        kind = rotation.param_defs["angle"].kind
        assert (kind.min, kind.max) == (-180.0, 180.0)

    def test_distinct_session_ids(self, house):
        a = create_session(house, Mode.ROTATION)
        b = create_session(house, Mode.ROTATION)
        assert a.session_id != b.session_id

    def test_initial_state(self, rotation):
        assert rotation.seq == 0
        assert rotation.last_preview is None
        assert rotation.selection.part_id == "entrance_door"

    def test_rotation_mode_needs_rotatables(self, house):
        from morphplay.scene import load_scene

        empty = load_scene(json.dumps({"name": "e", "parts": [], "constraints": {}}))
        with pytest.raises(ValueError):
            create_session(empty, Mode.ROTATION)


class TestSetParam:
    def test_accepted_change_broadcasts_state_and_preview(self, rotation):
        state, out = handle_message(rotation, msg("set_param", id="angle", value=45))
        assert state.seq == 1
        assert [o.message.type for o in out] == ["state_update", "preview"]
        assert all(o.broadcast for o in out)
        assert out[1].message.payload["verdict"]["reason"] == "wrong-axis"
        assert out[1].message.payload["seq"] == 1

    def test_out_of_bounds_rejected(self, rotation):
        state, out = handle_message(rotation, msg("set_param", id="angle", value=999))
        assert state.seq == rotation.seq
        assert state.params == rotation.params
        assert out[0].message.type == "error"
        assert out[0].message.payload["code"] == "out_of_bounds"
        assert not out[0].broadcast

    def test_off_step_rejected(self, rotation):
        state, out = handle_message(rotation, msg("set_param", id="angle", value=0.5))
        assert out[0].message.payload["code"] == "off_step"
        assert state.seq == 0

    def test_on_step_fraction_accepted(self, translation):
        state, out = handle_message(translation, msg("set_param", id="tx", value=0.3))
        assert state.seq == 1
        assert state.params["tx"] == 0.3

    def test_non_dividing_step_end_clamps(self):
        # max stays valid even when the step does not divide the range
        from morphplay.session import ParamDef

        d = ParamDef("s", Slider(0.0, 1.0, 0.3), "s", 0.0)
        assert d.validate(1.0) == 1.0
        assert d.validate(0.6) == 0.6
        with pytest.raises(Exception):
            d.validate(0.95)

    def test_unknown_param(self, rotation):
        _, out = handle_message(rotation, msg("set_param", id="warp", value=1))
        assert out[0].message.payload["code"] == "unknown_param"

    def test_toggle_rejects_numbers(self, rotation):
        _, out = handle_message(rotation, msg("set_param", id="clockwise", value=1))
        assert out[0].message.payload["code"] == "bad_type"

    def test_selector_rejects_fractional(self, rotation):
        _, out = handle_message(rotation, msg("set_param", id="part", value=1.5))
        assert out[0].message.payload["code"] == "bad_type"

    def test_selector_accepts_integral_float(self, rotation):
        state, _ = handle_message(rotation, msg("set_param", id="part", value=2.0))
        assert state.params["part"] == 2
        assert state.selection.part_id == "back_door"

    def test_noop_value_still_bumps_seq(self, translation):
        state, out = handle_message(translation, msg("set_param", id="tx", value=0))
        assert state.seq == 1
        assert [o.message.type for o in out] == ["state_update", "preview"]

    def test_missing_value_rejected(self, rotation):
        _, out = handle_message(rotation, msg("set_param", id="angle"))
        assert out[0].message.payload["code"] == "bad_payload"


class TestSelectPart:
    def test_updates_selection_and_part_param(self, rotation):
        state, out = handle_message(rotation, msg("select_part", index=3))
        assert state.params["part"] == 3
        assert state.selection.part_id == state.scene.rotatable_index[3]
        assert [o.message.type for o in out] == ["state_update", "preview"]

    def test_selection_triad_annotation_broadcast(self, rotation):
        _, out = handle_message(rotation, msg("select_part", index=1))
        kinds = [a["kind"] for a in out[1].message.payload["annotations"]]
        assert "triad" in kinds

    def test_out_of_range_carries_valid_range(self, rotation):
        state, out = handle_message(rotation, msg("select_part", index=8))
        assert out[0].message.payload["code"] == "out_of_range"
        assert "0..7" in out[0].message.payload["detail"]
        assert state.seq == 0

    def test_rejected_in_translation_mode(self, translation):
        _, out = handle_message(translation, msg("select_part", index=0))
        assert out[0].message.payload["code"] == "bad_mode"


class TestModeAndReset:
    def test_set_mode_reinitializes_params(self, rotation):
        state, _ = handle_message(rotation, msg("set_param", id="angle", value=45))
        state, out = handle_message(state, msg("set_mode", mode="translation"))
        assert state.mode is Mode.TRANSLATION
        assert sorted(state.params) == ["tx", "ty", "tz"]
        assert state.seq == 2
        assert out[0].message.type == "state_update"

    def test_unknown_mode_rejected(self, rotation):
        _, out = handle_message(rotation, msg("set_mode", mode="scale"))
        assert out[0].message.payload["code"] == "bad_payload"

    def test_reset_restores_defaults(self, rotation):
        state, _ = handle_message(rotation, msg("set_param", id="angle", value=45))
        state, _ = handle_message(state, msg("set_param", id="part", value=4))
        state, _ = handle_message(state, msg("reset"))
        assert state.params["angle"] == 0.0
        assert state.params["part"] == 0
        assert state.seq == 3


class TestHelloAndErrors:
    def test_hello_returns_scene_and_state(self, rotation):
        state, out = handle_message(rotation, msg("hello", client_name="viewer"))
        assert state.seq == 0
        assert [o.message.type for o in out] == ["scene", "state_update"]
        assert not any(o.broadcast for o in out)
        assert out[0].message.payload["name"] == "lego-house"

    def test_hello_requires_name(self, rotation):
        _, out = handle_message(rotation, msg("hello"))
        assert out[0].message.payload["code"] == "bad_payload"

    def test_unknown_type(self, rotation):
        _, out = handle_message(rotation, Message("explode", "sess", None, {}))
        assert out[0].message.payload["code"] == "unknown_type"

    def test_session_mismatch(self, rotation):
        _, out = handle_message(rotation, Message("reset", "other", None, {}))
        assert out[0].message.payload["code"] == "unknown_session"

    def test_empty_session_field_targets_default(self, rotation):
        state, out = handle_message(rotation, Message("reset", "", None, {}))
        assert state.seq == 1


class TestSnapshots:
    def test_fresh_snapshot_defaults(self, rotation):
        doc = json.loads(snapshot(rotation))
        assert doc["seq"] == 0
        assert doc["verdict"] is None
        assert doc["mode"] == "rotation"
        assert doc["params"]["angle"] == 0.0
        assert doc["selection"]["part_id"] == "entrance_door"

    def test_snapshot_restore_snapshot_byte_identical(self, house, rotation):
        state, _ = handle_message(rotation, msg("set_param", id="angle", value=45))
        state, _ = handle_message(state, msg("set_param", id="axis", value=2))
        text = snapshot(state)
        restored = restore_session(house, text)
        assert snapshot(restored) == text

    def test_snapshot_request_does_not_change_state(self, rotation):
        state, out = handle_message(rotation, msg("snapshot_request"))
        assert state.seq == 0
        assert out[0].message.type == "snapshot"
        assert not out[0].broadcast

    def test_crash_consistency(self, house, rotation):
        # snapshot mid-run + remaining log == uninterrupted run
        script = [
            msg("set_param", id="angle", value=45),
            msg("set_param", id="axis", value=2),
            msg("set_param", id="clockwise", value=True),
            msg("select_part", index=2),
        ]
        state = rotation
        for m in script[:2]:
            state, _ = handle_message(state, m)
        mid = snapshot(state)
        resumed = restore_session(house, mid)
        for m in script[2:]:
            resumed, _ = handle_message(resumed, m)
            state, _ = handle_message(state, m)
        assert snapshot(resumed) == snapshot(state)


class TestDeterminism:
    def test_same_messages_same_bytes(self, house):
        script = [
            msg("set_param", id="angle", value=45),
            msg("select_part", index=5),
            msg("set_param", id="clockwise", value=True),
            msg("set_param", id="angle", value=-120),
        ]
        transcripts = []
        for _ in range(2):
            state = create_session(house, Mode.ROTATION, "sess")
            wire = []
            for m in script:
                state, out = handle_message(state, m)
                from morphplay.protocol import to_wire

                wire.extend(to_wire(o.message) for o in out)
            wire.append(snapshot(state))
            transcripts.append("\n".join(wire))
        assert transcripts[0] == transcripts[1]


def test_fuzzed_state_machine_respects_bounds_and_seq(house):
    rng = random.Random(20240817)
    state = create_session(house, Mode.ROTATION, "sess")
    last_seq = state.seq
    for i in range(2000):
        state, out = handle_message(state, random_session_message(rng))
        assert state.seq >= last_seq, f"seq went backwards at message {i}"
        if state.seq > last_seq:
            assert state.seq == last_seq + 1, "accepted changes bump seq by exactly one"
        if any(o.message.type == "error" for o in out):
            assert state.seq == last_seq, "errors must not change state"
        assert params_in_bounds(state), f"bounds violated at message {i}"
        last_seq = state.seq
