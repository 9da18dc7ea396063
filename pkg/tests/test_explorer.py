import itertools

import pytest

from whitefact.errors import EngineError, NonSplittingError, OracleUnavailableError
from whitefact.explorer import SnBall, check_ball, enumerate_ball
from whitefact.labellings import (
    base_label,
    star_equivalent,
    star_label,
    volume,
)
from whitefact.reduction import reduce_to_base
from whitefact.words import empty_word, enumerate_words, word


def brute_alpha_classes(system, max_volume):
    """Independent enumeration and dedup, pairwise via the public decider."""
    budget = (max_volume - system.n) // 2
    per_slot = [
        [w for w in enumerate_words(system, budget) if w.leading_factor() != j]
        for j in range(1, system.n + 1)
    ]
    reps = []
    for combo in itertools.product(*per_slot):
        if sum(w.syllable_count() for w in combo) > budget:
            continue
        label = star_label(system, combo)
        try:
            reduce_to_base(label)
        except NonSplittingError:
            continue
        if not any(star_equivalent(label, rep) is not None for rep in reps):
            reps.append(label)
    return reps


class TestEnumerate:
    def test_minimal_ball(self, triple_z2):
        ball = enumerate_ball(triple_z2, 3)
        assert len(ball.alpha_classes) == 1
        assert ball.alpha_classes[0] == base_label(triple_z2)
        assert len(ball.a_classes) == 3
        assert sorted(m.apex for m in ball.a_classes) == [1, 2, 3]
        assert len(ball.edges) == 3

    def test_volume_five_ball(self, triple_z2):
        ball = enumerate_ball(triple_z2, 5)
        assert len(ball.alpha_classes) == 4
        assert len(ball.a_classes) == 9
        assert len(ball.edges) == 12

    def test_counts_match_brute_force(self, triple_z2):
        for bound in (3, 5, 7):
            ball = enumerate_ball(triple_z2, bound)
            brute = brute_alpha_classes(triple_z2, bound)
            assert len(ball.alpha_classes) == len(brute)

    def test_every_class_within_bound(self, triple_z2):
        ball = enumerate_ball(triple_z2, 7)
        for label in ball.alpha_classes:
            assert volume(label) <= 7

    def test_every_alpha_has_n_edges(self, z342):
        ball = enumerate_ball(z342, 5)
        for index in range(len(ball.alpha_classes)):
            incident = [a for alpha, a in ball.edges if alpha == index]
            assert len(incident) == z342.n
            assert sorted(ball.a_classes[a].apex for a in incident) == [1, 2, 3]

    def test_nonsplitting_tuples_excluded(self, triple_z2):
        b, c = word(triple_z2, [(2, 1)]), word(triple_z2, [(3, 1)])
        ball = enumerate_ball(triple_z2, 7)
        stuck = star_label(triple_z2, [empty_word(triple_z2), empty_word(triple_z2), b * c])
        assert all(star_equivalent(stuck, rep) is None for rep in ball.alpha_classes)

    def test_representatives_are_least(self, triple_z2):
        ball = enumerate_ball(triple_z2, 5)
        for label in ball.alpha_classes[1:]:
            assert sum(w.syllable_count() for w in label.conjugators) == 1

    def test_bound_below_n_rejected(self, triple_z2):
        with pytest.raises(EngineError, match="below"):
            enumerate_ball(triple_z2, 2)

    def test_infinite_factor_rejected(self, mixed_system):
        with pytest.raises(OracleUnavailableError):
            enumerate_ball(mixed_system, 5)

    def test_deterministic(self, triple_z2):
        assert enumerate_ball(triple_z2, 7) == enumerate_ball(triple_z2, 7)


class TestCheck:
    def test_clean_balls_pass(self, triple_z2):
        for bound in (3, 5, 7):
            report = check_ball(enumerate_ball(triple_z2, bound))
            assert report.passed, report.failures

    def test_z342_ball_passes(self, z342):
        report = check_ball(enumerate_ball(z342, 5))
        assert report.passed, report.failures

    def test_missing_edge_flagged(self, triple_z2):
        ball = enumerate_ball(triple_z2, 5)
        mutated = SnBall(
            ball.system,
            ball.bound,
            ball.alpha_classes,
            ball.a_classes,
            ball.edges[:-1],
        )
        report = check_ball(mutated)
        dropped_alpha = ball.edges[-1][0]
        assert not report.passed
        assert any(
            f"alpha class #{dropped_alpha}" in failure for failure in report.failures
        )

    def test_duplicate_class_flagged(self, triple_z2):
        ball = enumerate_ball(triple_z2, 3)
        translated = star_label(
            triple_z2, [word(triple_z2, [(1, 1)]) for _ in range(3)]
        )
        mutated = SnBall(
            ball.system,
            ball.bound,
            ball.alpha_classes + (translated,),
            ball.a_classes,
            ball.edges + ((1, 0), (1, 1), (1, 2)),
        )
        report = check_ball(mutated)
        assert any("duplicate" in failure for failure in report.failures)

    def test_stats_reported(self, triple_z2):
        report = check_ball(enumerate_ball(triple_z2, 5))
        assert report.stats["alpha_classes"] == 4
        assert report.stats["base_index"] == 0
