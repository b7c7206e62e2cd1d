"""Wire parsing, canonical envelopes, and the per-connection seq guard."""

import json

import pytest

from morphplay.errors import ProtocolError
from morphplay.protocol import ClientSeqGuard, Message, parse_client_message, to_wire


class TestParseClientMessage:
    def test_minimal_message(self):
        msg = parse_client_message('{"type":"reset"}', default_session="s")
        assert msg == Message("reset", "s", None, {})

    def test_full_envelope(self):
        msg = parse_client_message(
            '{"type":"set_param","session":"abc","seq":4,"payload":{"id":"tx","value":1}}'
        )
        assert msg.session == "abc"
        assert msg.seq == 4
        assert msg.payload == {"id": "tx", "value": 1}

    def test_rejects_bad_json(self):
        with pytest.raises(ProtocolError) as e:
            parse_client_message("{nope")
        assert e.value.code == "bad_payload"

    def test_rejects_unknown_type(self):
        with pytest.raises(ProtocolError) as e:
            parse_client_message('{"type":"teleport"}')
        assert e.value.code == "unknown_type"

    def test_rejects_server_types_from_clients(self):
        with pytest.raises(ProtocolError) as e:
            parse_client_message('{"type":"preview"}')
        assert e.value.code == "unknown_type"

    def test_rejects_unknown_envelope_keys(self):
        with pytest.raises(ProtocolError) as e:
            parse_client_message('{"type":"reset","when":"now"}')
        assert e.value.code == "bad_payload"

    def test_rejects_non_object_payload(self):
        with pytest.raises(ProtocolError):
            parse_client_message('{"type":"reset","payload":[1]}')

    def test_rejects_non_integer_seq(self):
        for bad in ('"x"', "1.5", "true"):
            with pytest.raises(ProtocolError):
                parse_client_message('{"type":"reset","seq":%s}' % bad)


class TestSeqGuard:
    def test_monotonic_accepted(self):
        g = ClientSeqGuard()
        g.check(1)
        g.check(2)
        g.check(10)

    def test_duplicate_rejected(self):
        g = ClientSeqGuard()
        g.check(5)
        with pytest.raises(ProtocolError) as e:
            g.check(5)
        assert e.value.code == "stale_seq"

    def test_stale_rejected(self):
        g = ClientSeqGuard()
        g.check(5)
        with pytest.raises(ProtocolError):
            g.check(3)

    def test_missing_seq_skips_check(self):
        g = ClientSeqGuard()
        g.check(None)
        g.check(7)
        g.check(None)
        g.check(8)


class TestWireFormat:
    def test_sorted_keys_and_compact(self):
        msg = Message("error", "s1", 3, {"code": "x", "detail": "y"})
        assert to_wire(msg) == '{"payload":{"code":"x","detail":"y"},"seq":3,"session":"s1","type":"error"}'

    def test_floats_canonicalized(self):
        msg = Message("state_update", "s", 0, {"v": 0.1 + 0.2})
        assert json.loads(to_wire(msg))["payload"]["v"] == 0.3
