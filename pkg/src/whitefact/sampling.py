"""Seeded random generators for the randomized suites.

Random conjugator tuples need not define automorphisms (the conjugated
factors may generate a proper subgroup), so the automorphism generators
filter candidates through the reduction walk and resample on failure.
"""

from __future__ import annotations

import random

from .autos import PureSymmetricAuto, pure_auto
from .errors import NonSplittingError
from .factors import FactorAutoPart, FactorElement, FactorSystem
from .labellings import StarLabel, star_label, volume
from .reduction import reduce_to_base
from .words import Word, empty_word


def random_nontrivial_element(system: FactorSystem, i: int, rng: random.Random) -> FactorElement:
    backend = system.factor(i)
    if backend.is_finite():
        payload = rng.choice(system.nontrivial_payloads(i))
    else:
        payload = rng.choice([-3, -2, -1, 1, 2, 3])
    return FactorElement(i, payload)


def random_word(
    system: FactorSystem,
    rng: random.Random,
    max_syllables: int,
    length: int | None = None,
) -> Word:
    if length is None:
        length = rng.randint(0, max_syllables)
    syllables = []
    previous = None
    for _ in range(length):
        choices = [i for i in range(1, system.n + 1) if i != previous]
        factor = rng.choice(choices)
        syllables.append(random_nontrivial_element(system, factor, rng))
        previous = factor
    return Word(system, tuple(syllables))


def random_part(system: FactorSystem, i: int, rng: random.Random) -> FactorAutoPart:
    reps = system.factor(i).automorphism_reps()
    return FactorAutoPart(i, rng.choice(reps))


def random_pure_auto(
    system: FactorSystem,
    rng: random.Random,
    max_syllables: int,
) -> PureSymmetricAuto:
    """Random parts with random conjugators, resampled until a splitting."""
    while True:
        parts = [
            (random_part(system, k, rng), random_word(system, rng, max_syllables))
            for k in range(1, system.n + 1)
        ]
        candidate = pure_auto(system, parts)
        try:
            reduce_to_base(star_label(system, [p[1] for p in parts]))
        except NonSplittingError:
            continue
        return candidate


def random_splitting_label(
    system: FactorSystem,
    rng: random.Random,
    max_syllables: int,
    min_volume: int | None = None,
) -> StarLabel:
    """Random star labelling that is a genuine splitting."""
    while True:
        label = star_label(
            system,
            [random_word(system, rng, max_syllables) for _ in range(system.n)],
        )
        if min_volume is not None and volume(label) < min_volume:
            continue
        try:
            reduce_to_base(label)
        except NonSplittingError:
            continue
        return label


def random_inner_word(system: FactorSystem, rng: random.Random, max_syllables: int) -> Word:
    w = random_word(system, rng, max_syllables)
    return w if not w.is_identity() else empty_word(system)
