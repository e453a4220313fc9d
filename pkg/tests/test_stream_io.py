import pytest
from hypothesis import given, strategies as st

from wmstream import (
    ParseError,
    StreamError,
    StreamHeader,
    StreamUpdate,
    export_snapshot,
    parse_stream,
    replay,
    serialize,
)
from wmstream.stream_io import DELETE, DYNAMIC, INSERT, INSERT_ONLY


def test_parse_basic_insert_only():
    header, updates = parse_stream(
        "n 4 wmax 4 model insert-only\n+ 1 2 1\n+ 3 4 4\n"
    )
    assert header == StreamHeader(4, 4.0, INSERT_ONLY)
    assert updates == [
        StreamUpdate(INSERT, 1, 2, 1.0),
        StreamUpdate(INSERT, 3, 4, 4.0),
    ]


def test_parse_dynamic_cancellation():
    header, updates = parse_stream("n 2 wmax 1 model dynamic\n+ 1 2 1\n- 1 2 1\n")
    assert header.model == DYNAMIC
    assert replay(header, updates).edges == ()


def test_parse_comments_and_blank_lines():
    header, updates = parse_stream(
        "# a comment\n\nn 2 wmax 1 model insert-only\n\n+ 1 2 1\n# trailing\n"
    )
    assert len(updates) == 1


@pytest.mark.parametrize(
    "text",
    [
        "n 2 wmax 1 model insert-only\n- 1 2 1\n",  # delete in insert-only
        "n 2 wmax 1 model insert-only\n+ 1 1 1\n",  # self-loop
        "n 2 wmax 1 model insert-only\n+ 1 3 1\n",  # vertex out of range
        "n 2 wmax 2 model insert-only\n+ 1 2 3\n",  # weight above wmax
        "n 2 wmax 2 model insert-only\n+ 1 2 0.5\n",  # weight below 1
        "n 2 wmax 1 model trickle\n",  # unknown model
        "n 0 wmax 1 model insert-only\n",  # bad n
        "+ 1 2 1\n",  # missing header
        "n 2 wmax 1 model insert-only\n+ 1 2\n",  # short line
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_stream(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError, match="line 3"):
        parse_stream("n 2 wmax 1 model insert-only\n+ 1 2 1\nbogus\n")


def test_strict_rejects_duplicate_insert():
    with pytest.raises(StreamError):
        parse_stream("n 2 wmax 1 model insert-only\n+ 1 2 1\n+ 2 1 1\n")


def test_strict_rejects_delete_of_absent_edge():
    with pytest.raises(StreamError):
        parse_stream("n 3 wmax 1 model dynamic\n+ 1 2 1\n- 2 3 1\n")


def test_strict_rejects_delete_weight_mismatch():
    with pytest.raises(StreamError):
        parse_stream("n 2 wmax 4 model dynamic\n+ 1 2 3\n- 1 2 4\n")


def test_replay_reinsert_after_delete():
    header = StreamHeader(2, 4.0, DYNAMIC)
    updates = [
        StreamUpdate(INSERT, 1, 2, 3.0),
        StreamUpdate(DELETE, 1, 2, 3.0),
        StreamUpdate(INSERT, 1, 2, 3.0),
    ]
    snap = replay(header, updates)
    assert snap.edges == ((1, 2, 3.0),)


def test_replay_normalizes_endpoints():
    header = StreamHeader(3, 5.0, INSERT_ONLY)
    snap = replay(header, [StreamUpdate(INSERT, 3, 1, 5.0)])
    assert snap.edges == ((1, 3, 5.0),)


def test_export_snapshot_round_trips():
    header, updates = parse_stream(
        "n 4 wmax 4 model dynamic\n+ 3 4 4\n+ 1 2 1\n- 3 4 4\n"
    )
    snap = replay(header, updates)
    text = export_snapshot(snap, header.wmax)
    header2, updates2 = parse_stream(text)
    assert replay(header2, updates2).edges == snap.edges


@st.composite
def streams(draw):
    n = draw(st.integers(2, 8))
    wmax = draw(st.integers(1, 16))
    pairs = draw(
        st.lists(
            st.tuples(st.integers(1, n), st.integers(1, n)).filter(
                lambda p: p[0] != p[1]
            ),
            unique_by=lambda p: tuple(sorted(p)),
            max_size=10,
        )
    )
    updates = [
        StreamUpdate(INSERT, u, v, float(draw(st.integers(1, wmax))))
        for u, v in pairs
    ]
    return StreamHeader(n, float(wmax), INSERT_ONLY), updates


@given(streams())
def test_round_trip_identity(stream):
    header, updates = stream
    parsed_header, parsed_updates = parse_stream(serialize(header, updates))
    assert parsed_header == header
    assert parsed_updates == updates


@given(streams(), st.randoms(use_true_random=False))
def test_replay_order_insensitive_for_inserts(stream, rng):
    header, updates = stream
    shuffled = list(updates)
    rng.shuffle(shuffled)
    assert replay(header, shuffled).edges == replay(header, updates).edges
