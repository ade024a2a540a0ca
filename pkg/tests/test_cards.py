"""Tests for tapes, the event log and the card protocol primitives."""

from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.stats import chisquare

from src.cards import (
    CLUB,
    DIAMOND,
    FALSE_FACES,
    HEART,
    SPADE,
    TRUE_FACES,
    CardSession,
    Check,
    CheckFailedError,
    EnumeratedTape,
    EventKind,
    Face,
    LogicalPair,
    MalformedPair,
    PileSequence,
    ReplayMismatch,
    SeededTape,
    SessionMode,
    TapeExhausted,
    VisibleEvent,
    copy_pair,
    discard_heart,
    enumerate_tapes,
    get_tape,
    number,
    or_replace,
    pile_choose,
    pile_shifting_shuffle,
    prove_set_membership,
    reversible_shuffle_session,
    select_pile,
)


def make_session(values=None, seed=7, mode=SessionMode.LIVE, recorded=()):
    tape = EnumeratedTape(values) if values is not None else SeededTape(seed)
    return CardSession(tape, mode, recorded)


def logical(session, value):
    return LogicalPair(*session.new_cards(TRUE_FACES if value else FALSE_FACES))


def numbered_piles(session, k, height=1):
    return PileSequence([session.new_cards([number(i + 1)] + [CLUB] * (height - 1)) for i in range(k)])


def trace(session, start):
    return tuple(event.render() for event in session.log.events[start:])


def uids(seq):
    return [[card.uid for card in pile] for pile in seq.piles]


def two_draws(k):
    return [k, k] if k > 1 else []


class TestTape:
    def test_seeded_tape_is_reproducible(self):
        a, b = SeededTape(99), SeededTape(99)
        assert [a.draw(7) for _ in range(20)] == [b.draw(7) for _ in range(20)]
        assert a.position == 20

    def test_enumerated_tape(self):
        tape = EnumeratedTape([1, 0])
        assert tape.draw(2) == 1
        with pytest.raises(ValueError, match="out of range"):
            tape.draw(0)
        assert tape.draw(3) == 0
        with pytest.raises(TapeExhausted):
            tape.draw(2)

    def test_out_of_range_value(self):
        with pytest.raises(ValueError, match="out of range"):
            EnumeratedTape([4]).draw(3)

    def test_enumerate_tapes_counts(self):
        assert len(list(enumerate_tapes([2, 3]))) == 6
        assert [t.values for t in enumerate_tapes([], prefix=[1])] == [[1]]

    def test_get_tape(self):
        assert get_tape(5).seed == 5
        assert 0 <= get_tape(entropy=True).seed < 2**64
        with pytest.raises(ValueError):
            get_tape(-1)


class TestEvents:
    def test_render_and_parse(self):
        event = VisibleEvent.make(EventKind.CARDS_REVEALED, faces=[CLUB, HEART, number(12)])
        assert event.render() == "CardsRevealed faces=C,H,N12"
        assert VisibleEvent.parse(event.render()) == event
        assert event.faces() == [CLUB, HEART, number(12)]

    def test_rejects_spaces(self):
        with pytest.raises(ValueError):
            VisibleEvent.make(EventKind.CHECK_FAILED, expected="a b")

    def test_face_parse(self):
        assert Face.parse("N3") == number(3)
        assert Face.parse("D") == DIAMOND
        for bad in ("N", "N0", "X", ""):
            with pytest.raises(ValueError):
                Face.parse(bad)

    def test_log_lines_are_numbered(self):
        session = make_session()
        session.new_cards([SPADE])
        pile_shifting_shuffle(session, numbered_piles(session, 2))
        assert session.log.lines() == [
            "1 LayoutConfirmed faces=S",
            "2 LayoutConfirmed faces=N1",
            "3 LayoutConfirmed faces=N2",
            "4 ShuffleApplied of=2",
        ]


class TestPileShiftingShuffle:
    def test_single_pile_is_identity(self):
        session = make_session(values=[])
        seq = numbered_piles(session, 1)
        out, event = pile_shifting_shuffle(session, seq)
        assert uids(out) == uids(seq)
        assert session.draws == []
        assert event.render() == "ShuffleApplied of=1"

    def test_fixed_offset(self):
        session = make_session(values=[3])
        seq = numbered_piles(session, 4)
        out, event = pile_shifting_shuffle(session, seq)
        assert [p[0].face for p in out.piles] == [number(4), number(1), number(2), number(3)]
        assert event.params == (("of", "4"),)

    def test_offsets_are_uniform(self):
        tape = SeededTape(12345)
        counts = [0] * 5
        for _ in range(10_000):
            counts[tape.draw(5)] += 1
        assert chisquare(counts).pvalue > 1e-3


def replace_bottom(session):
    def op(pile):
        old = pile[-1]
        pile[-1] = session.deck.new(SPADE)
        session.deck.put_aside([old])

    return op


class TestPileChoose:
    def test_single_pile(self):
        session = make_session(values=[])
        seq = numbered_piles(session, 1, height=2)
        before = uids(seq)
        out = pile_choose(session, seq, 0, replace_bottom(session))
        assert uids(out)[0][0] == before[0][0]
        assert uids(out)[0][1] != before[0][1]

    def test_only_chosen_pile_changes(self):
        heart_positions = Counter()
        for tape in enumerate_tapes([3, 3]):
            session = CardSession(tape)
            seq = numbered_piles(session, 3, height=2)
            before = uids(seq)
            out = pile_choose(session, seq, 1, replace_bottom(session))
            after = uids(out)
            assert after[0] == before[0] and after[2] == before[2]
            assert after[1][0] == before[1][0] and after[1][1] != before[1][1]
            assert session.deck.problems(out.cards()) == []
            tops = [e for e in session.log if e.kind is EventKind.TOPS_REVEALED]
            heart_positions[tops[0].get_int("at")] += 1
        assert heart_positions == Counter({0: 3, 1: 3, 2: 3})

    @pytest.mark.parametrize("k", range(1, 7))
    def test_order_restored_under_every_tape(self, k):
        for choice in range(k):
            for tape in enumerate_tapes(two_draws(k)):
                session = CardSession(tape)
                seq = numbered_piles(session, k)
                before = uids(seq)
                out = pile_choose(session, seq, choice, lambda pile: None)
                assert uids(out) == before

    def test_random_runs_restore_order(self):
        for seed in range(100):
            session = make_session(seed=seed)
            seq = numbered_piles(session, 5, height=2)
            before = uids(seq)
            assert uids(pile_choose(session, seq, seed % 5, lambda pile: pile.reverse())) == [
                before[i] if i != seed % 5 else before[i][::-1] for i in range(5)
            ]

    @pytest.mark.parametrize("k", range(2, 6))
    def test_visible_trace_does_not_depend_on_choice(self, k):
        traces = []
        for choice in (0, k - 1):
            counts = Counter()
            for tape in enumerate_tapes([k, k]):
                session = CardSession(tape)
                seq = numbered_piles(session, k)
                start = len(session.log)
                pile_choose(session, seq, choice, lambda pile: None)
                counts[trace(session, start)] += 1
            traces.append(counts)
        assert traces[0] == traces[1]

    def test_choice_out_of_range(self):
        session = make_session()
        with pytest.raises(ValueError):
            pile_choose(session, numbered_piles(session, 3), 3, lambda pile: None)


class TestReversibleShuffleSession:
    def test_relative_distance_is_all_vera_learns(self):
        first = Counter()
        for tape in enumerate_tapes([6, 6]):
            session = CardSession(tape)
            seq = numbered_piles(session, 6)
            before = uids(seq)
            out = reversible_shuffle_session(session, seq, [(2, lambda s, at: None), (4, lambda s, at: None)])
            assert uids(out) == before
            picks = [e.get_int("at") for e in session.log if e.kind is EventKind.PILE_PICKED]
            assert (picks[1] - picks[0]) % 6 == 2
            first[picks[0]] += 1
        assert first == Counter({i: 6 for i in range(6)})

    def test_ops_see_neighbours(self):
        session = make_session(seed=3)
        seq = numbered_piles(session, 4)

        def swap_with_next(shuffled, at):
            a, b = shuffled.piles[at], shuffled.piles[(at + 1) % shuffled.k]
            a[0], b[0] = b[0], a[0]

        out = reversible_shuffle_session(session, seq, [(1, swap_with_next)])
        assert [p[0].face for p in out.piles] == [number(1), number(3), number(2), number(4)]

    def test_empty_ops(self):
        session = make_session(seed=1)
        seq = numbered_piles(session, 4)
        before = uids(seq)
        start = len(session.log)
        out = reversible_shuffle_session(session, seq, [])
        assert uids(out) == before
        assert session.log.kinds()[start:] == [
            EventKind.MARKERS_PLACED,
            EventKind.SHUFFLE_APPLIED,
            EventKind.SHUFFLE_APPLIED,
            EventKind.TOPS_REVEALED,
        ]

    @pytest.mark.parametrize("k", range(2, 7))
    def test_two_ops_restore_order_under_every_tape(self, k):
        for tape in enumerate_tapes([k, k]):
            session = CardSession(tape)
            seq = numbered_piles(session, k)
            before = uids(seq)
            out = reversible_shuffle_session(session, seq, [(0, lambda s, at: None), (k - 1, lambda s, at: None)])
            assert uids(out) == before

    def test_single_op_matches_pile_choose(self):
        def observed(run):
            counts = Counter()
            for tape in enumerate_tapes([4, 4]):
                session = CardSession(tape)
                seq = numbered_piles(session, 4)
                run(session, seq)
                picked = [e.get_int("at") for e in session.log if e.kind is EventKind.PILE_PICKED]
                tops = [e.get_int("at") for e in session.log if e.kind is EventKind.TOPS_REVEALED]
                counts[(tuple(picked), tuple(tops))] += 1
            return counts

        assert observed(lambda s, seq: pile_choose(s, seq, 2, lambda pile: None)) == observed(
            lambda s, seq: reversible_shuffle_session(s, seq, [(2, lambda sh, at: None)])
        )


class TestSelectPile:
    def test_keeps_the_chosen_pile(self):
        for tape in enumerate_tapes([4]):
            session = CardSession(tape)
            seq = numbered_piles(session, 4)
            kept = select_pile(session, seq, 2)
            assert kept[0].face == number(3)
            assert session.deck.problems(kept) == []
            assert session.log.kinds()[-1] is EventKind.CARDS_SET_ASIDE


class TestSetMembership:
    def test_member_passes(self):
        session = make_session(seed=4)
        card = session.new_cards([DIAMOND])[0]
        out = prove_set_membership(session, card, [CLUB, DIAMOND])
        assert out.face == DIAMOND and out is not card
        assert session.log.failure() is None
        revealed = [e for e in session.log if e.kind is EventKind.CARDS_REVEALED][-1]
        assert Counter(revealed.faces()) == Counter([CLUB, DIAMOND])
        assert session.deck.problems([out]) == []

    def test_non_member_fails(self):
        session = make_session(seed=4)
        card = session.new_cards([HEART])[0]
        with pytest.raises(CheckFailedError) as err:
            prove_set_membership(session, card, [CLUB, DIAMOND])
        event = err.value.event
        assert event.get("check") == Check.SET_MEMBERSHIP.value
        assert HEART in event.faces("revealed")

    def test_number_card(self):
        session = make_session(seed=8)
        card = session.new_cards([number(3)])[0]
        out = prove_set_membership(session, card, [number(i) for i in range(1, 6)])
        assert out.face == number(3)

    def test_simulated_session_shows_the_set(self):
        session = make_session(seed=4, mode=SessionMode.SIMULATED)
        card = session.new_cards([HEART])[0]
        assert prove_set_membership(session, card, [CLUB, DIAMOND]) is card
        assert session.log.failure() is None

    def test_visible_trace_does_not_depend_on_member(self):
        counts = []
        for face in (CLUB, DIAMOND):
            c = Counter()
            for tape in enumerate_tapes([2, 2]):
                session = CardSession(tape)
                card = session.new_cards([face])[0]
                start = len(session.log)
                prove_set_membership(session, card, [CLUB, DIAMOND])
                c[trace(session, start)] += 1
            counts.append(c)
        assert counts[0] == counts[1]


class TestDiscardHeart:
    def test_keeps_the_other_card(self):
        session = make_session(seed=2)
        heart, club = session.new_cards([HEART, CLUB])
        assert discard_heart(session, [heart, club]) is club
        assert session.log[-1].render() == "CardDiscardedVerified face=H"

    def test_no_heart_fails(self):
        session = make_session(seed=2)
        cards = session.new_cards([CLUB, DIAMOND])
        with pytest.raises(CheckFailedError) as err:
            discard_heart(session, cards)
        assert err.value.event.get("check") == "HeartDiscard"

    def test_visible_trace_does_not_depend_on_order(self):
        counts = []
        for faces in ([HEART, CLUB], [CLUB, HEART]):
            c = Counter()
            for tape in enumerate_tapes([2]):
                session = CardSession(tape)
                cards = session.new_cards(faces)
                start = len(session.log)
                discard_heart(session, cards)
                c[trace(session, start)] += 1
            counts.append(c)
        assert counts[0] == counts[1]


def honest_pick(b1, b2):
    return 0 if b1 or not b2 else 1


class TestOrReplace:
    @settings(max_examples=40, deadline=None)
    @given(b1=st.booleans(), b2=st.booleans(), seed=st.integers(0, 2**32))
    def test_truth_table(self, b1, b2, seed):
        session = make_session(seed=seed)
        p1, p2 = logical(session, b1), logical(session, b2)
        out1, out2 = or_replace(session, p1, p2, honest_pick(b1, b2))
        assert out1.value() == out2.value() == (b1 or b2)
        assert len({id(c) for c in (*out1, *out2)}) == 4
        assert session.deck.problems([*out1, *out2]) == []

    def test_dishonest_pick_drops_truth(self):
        session = make_session(seed=11)
        out1, out2 = or_replace(session, logical(session, True), logical(session, False), 1)
        assert (out1.value(), out2.value()) == (False, False)

    def test_both_false(self):
        session = make_session(seed=12)
        out1, out2 = or_replace(session, logical(session, False), logical(session, False), 0)
        assert not out1.value() and not out2.value()

    def test_uses_three_binary_shuffles(self):
        session = make_session(seed=13)
        or_replace(session, logical(session, True), logical(session, True), 0)
        assert [d.k for d in session.draws] == [2, 2, 2]

    def test_malformed_pair(self):
        session = make_session()
        bad = LogicalPair(*session.new_cards([CLUB, CLUB]))
        with pytest.raises(MalformedPair):
            or_replace(session, bad, logical(session, True), 0)

    def test_visible_trace_does_not_depend_on_inputs(self):
        counts = []
        for b1 in (False, True):
            for b2 in (False, True):
                c = Counter()
                for tape in enumerate_tapes([2, 2, 2]):
                    session = CardSession(tape)
                    p1, p2 = logical(session, b1), logical(session, b2)
                    start = len(session.log)
                    or_replace(session, p1, p2, honest_pick(b1, b2))
                    c[trace(session, start)] += 1
                counts.append(c)
        assert all(c == counts[0] for c in counts)

    def test_copy_pair(self):
        for value in (False, True):
            session = make_session(seed=5)
            pair = logical(session, value)
            a, b = copy_pair(session, pair)
            assert a.value() == b.value() == value


class TestConservation:
    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**32), choice=st.integers(0, 3), value=st.booleans())
    def test_every_card_accounted_for(self, seed, choice, value):
        session = make_session(seed=seed)
        seq = numbered_piles(session, 4, height=2)
        seq = pile_choose(session, seq, choice, replace_bottom(session))
        assert session.deck.problems(seq.cards()) == []

        kept = select_pile(session, seq, choice)
        heart = session.new_cards([HEART])[0]
        survivor = discard_heart(session, [kept[1], heart])
        in_play = [kept[0], survivor]
        assert session.deck.problems(in_play) == []

        member = prove_set_membership(session, kept[0], [number(choice + 1), CLUB])
        in_play = [member, survivor]
        assert session.deck.problems(in_play) == []

        out1, out2 = copy_pair(session, logical(session, value))
        assert session.deck.problems(in_play + [*out1, *out2]) == []


class TestReplay:
    def test_replay_reproduces_recorded_choices(self):
        live = make_session(seed=21)
        pile_choose(live, numbered_piles(live, 5), 3, lambda pile: None)

        replay = make_session(seed=21, mode=SessionMode.REPLAY, recorded=live.log.events)
        pile_choose(replay, numbered_piles(replay, 5), 0, lambda pile: None)
        assert replay.log.lines() == live.log.lines()

    def test_tampered_record(self):
        live = make_session(seed=21)
        pile_choose(live, numbered_piles(live, 3), 1, lambda pile: None)
        recorded = list(live.log.events)
        index = next(i for i, e in enumerate(recorded) if e.kind is EventKind.TOPS_REVEALED)
        wrong = (recorded[index].get_int("at") + 1) % 3
        recorded[index] = VisibleEvent.make(EventKind.TOPS_REVEALED, at=wrong, of=3)

        replay = make_session(seed=21, mode=SessionMode.REPLAY, recorded=recorded)
        with pytest.raises(ReplayMismatch) as err:
            pile_choose(replay, numbered_piles(replay, 3), 1, lambda pile: None)
        assert err.value.seq == index + 1

    def test_replayed_reveal_reads_the_record(self):
        live = make_session(seed=30)
        or_replace(live, logical(live, True), logical(live, False), 0)

        replay = make_session(seed=30, mode=SessionMode.REPLAY, recorded=live.log.events)
        or_replace(replay, logical(replay, True), logical(replay, False), 1)
        assert replay.log.lines() == live.log.lines()
