"""Exhaustive enumeration of a volume-bounded piece of the two-shape complex.

For a finite factor system this materializes every star-labelling class
whose volume at the basepoint stays within a bound, all their collapse
neighbours, and the bipartite collapse edges between them.  Candidate
tuples whose conjugated factors fail to generate the whole group are not
labellings at all and are filtered out by attempting the reduction walk.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .autos import invert, tuple_auto
from .errors import EngineError, NonSplittingError, OracleUnavailableError
from .labellings import (
    ApexLabel,
    StarLabel,
    act_on_label,
    apex_equivalent,
    apex_label,
    base_label,
    collapses,
    star_equivalent,
    star_label,
    volume,
)
from .reduction import reduce_to_base
from .words import Word, empty_word, enumerate_words


@dataclass(frozen=True)
class SnBall:
    system: object
    bound: int
    alpha_classes: tuple[StarLabel, ...]
    a_classes: tuple[ApexLabel, ...]
    edges: tuple[tuple[int, int], ...]


@dataclass
class BallReport:
    failures: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures


def _word_sort_key(w: Word):
    return (w.syllable_count(), tuple((s.factor, s.payload) for s in w.syllables))


def _tuple_sort_key(words):
    return (
        sum(w.syllable_count() for w in words),
        tuple(_word_sort_key(w) for w in words),
    )


def _slot_candidates(system, slot: int, budget: int) -> list[Word]:
    out = [
        w
        for w in enumerate_words(system, budget)
        if w.leading_factor() != slot
    ]
    out.sort(key=_word_sort_key)
    return out


def enumerate_ball(system, max_volume: int) -> SnBall:
    """All star classes with volume(., 1) <= max_volume, plus their collapses.

    Representatives are the least members found, ordered by total syllable
    length and then lexicographically, so output is reproducible.
    """
    if not system.all_finite:
        raise OracleUnavailableError("oracle requires finite factors")
    if max_volume < system.n:
        raise EngineError(
            f"volume bound {max_volume} below the minimum {system.n}"
        )
    budget = (max_volume - system.n) // 2
    per_slot = [_slot_candidates(system, j, budget) for j in range(1, system.n + 1)]
    candidates = [
        combo
        for combo in itertools.product(*per_slot)
        if sum(w.syllable_count() for w in combo) <= budget
    ]
    candidates.sort(key=_tuple_sort_key)

    alpha_reps: list[StarLabel] = []
    for combo in candidates:
        label = star_label(system, combo)
        try:
            reduce_to_base(label)
        except NonSplittingError:
            continue
        if any(star_equivalent(rep, label) is not None for rep in alpha_reps):
            continue
        alpha_reps.append(label)

    a_reps: list[ApexLabel] = []
    edges: list[tuple[int, int]] = []
    for alpha_index, label in enumerate(alpha_reps):
        for collapsed in collapses(label):
            match = None
            for a_index, rep in enumerate(a_reps):
                if apex_equivalent(rep, collapsed):
                    match = a_index
                    break
            if match is None:
                a_reps.append(collapsed)
                match = len(a_reps) - 1
            edges.append((alpha_index, match))
    return SnBall(system, max_volume, tuple(alpha_reps), tuple(a_reps), tuple(edges))


def check_ball(ball: SnBall) -> BallReport:
    """Structural and dynamical checks on an enumerated ball.

    Verifies the bipartite collapse structure, that every star class walks
    back to the base class through volumes that never leave the ball, that
    the base class has exactly the n expected collapse neighbours, and that
    the automorphism reconstructed from each reduction path really carries
    the class to the base cell.
    """
    report = BallReport()
    system = ball.system
    n = system.n

    # collapse edges: n per star class, one per apex, all indices valid
    incident: dict[int, list[int]] = {i: [] for i in range(len(ball.alpha_classes))}
    for alpha_index, a_index in ball.edges:
        if not (0 <= alpha_index < len(ball.alpha_classes)):
            report.failures.append(f"edge references missing alpha class {alpha_index}")
            continue
        if not (0 <= a_index < len(ball.a_classes)):
            report.failures.append(f"edge references missing A class {a_index}")
            continue
        incident[alpha_index].append(a_index)
    for alpha_index, touched in incident.items():
        if len(touched) != n or len(set(touched)) != n:
            report.failures.append(
                f"alpha class #{alpha_index} has {len(set(touched))} collapse "
                f"edges (expected {n})"
            )
        apexes = sorted(ball.a_classes[a].apex for a in touched)
        if apexes != list(range(1, n + 1)):
            report.failures.append(
                f"alpha class #{alpha_index} collapse apexes {apexes} incomplete"
            )

    # dedup sanity: representatives pairwise inequivalent
    for i, left in enumerate(ball.alpha_classes):
        for right in ball.alpha_classes[i + 1 :]:
            if star_equivalent(left, right) is not None:
                report.failures.append("duplicate alpha classes survived dedup")
    for i, left in enumerate(ball.a_classes):
        for right in ball.a_classes[i + 1 :]:
            if apex_equivalent(left, right):
                report.failures.append("duplicate A classes survived dedup")

    # every class reaches the base class inside the ball
    base = base_label(system)
    base_index = None
    for alpha_index, label in enumerate(ball.alpha_classes):
        if star_equivalent(label, base) is not None:
            base_index = alpha_index
        try:
            final, moves = reduce_to_base(label)
        except NonSplittingError:
            report.failures.append(f"alpha class #{alpha_index} does not reduce")
            continue
        volumes = [volume(label)] + [m.volume_after for m in moves]
        if any(v > ball.bound for v in volumes):
            report.failures.append(
                f"alpha class #{alpha_index} leaves the ball during reduction"
            )
        if any(b <= a for a, b in zip(volumes[1:], volumes)):
            report.failures.append(
                f"alpha class #{alpha_index} has a non-decreasing step"
            )
        if final != base:
            report.failures.append(
                f"alpha class #{alpha_index} did not land on the base tuple"
            )
    if base_index is None:
        report.failures.append("base class missing from the ball")
    else:
        base_neighbours = {a for alpha, a in ball.edges if alpha == base_index}
        expected = []
        for i in range(1, n + 1):
            target = apex_label(system, i, [empty_word(system)] * n)
            found = [a for a in base_neighbours if apex_equivalent(ball.a_classes[a], target)]
            expected.extend(found)
        if len(base_neighbours) != n or len(expected) != n:
            report.failures.append("base class collapse neighbours are not the n expected")

    # fundamental domain: the reconstructed automorphism carries the class home
    for alpha_index, label in enumerate(ball.alpha_classes):
        psi = tuple_auto(system, label.conjugators)
        moved_back = act_on_label(label, invert(psi))
        if star_equivalent(moved_back, base) is None:
            report.failures.append(
                f"alpha class #{alpha_index} is not carried to the base cell"
            )
        round_trip = act_on_label(base, psi)
        if star_equivalent(round_trip, label) is None:
            report.failures.append(
                f"alpha class #{alpha_index} is not reached from the base cell"
            )

    report.stats = {
        "alpha_classes": len(ball.alpha_classes),
        "a_classes": len(ball.a_classes),
        "edges": len(ball.edges),
        "base_index": base_index,
    }
    return report
