"""Reduced words: normal forms for elements of the free product.

A word is an alternating sequence of nontrivial factor elements, read as a
product left to right.  The empty word is the group identity.  Reduction
merges adjacent same-factor syllables and drops identities, which yields
the unique normal form of the free product.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import OracleUnavailableError, SystemMismatchError
from .factors import FactorElement, FactorSystem


@dataclass(frozen=True)
class Word:
    system: FactorSystem
    syllables: tuple[FactorElement, ...]

    def syllable_count(self) -> int:
        return len(self.syllables)

    def leading_factor(self) -> int | None:
        return self.syllables[0].factor if self.syllables else None

    def trailing_factor(self) -> int | None:
        return self.syllables[-1].factor if self.syllables else None

    def is_identity(self) -> bool:
        return not self.syllables

    def inverse(self) -> "Word":
        inv = self.system.inverse
        return Word(self.system, tuple(inv(s) for s in reversed(self.syllables)))

    def __mul__(self, other: "Word") -> "Word":
        return word_mul(self, other)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        parts = []
        for s in self.syllables:
            name = self.system.factor(s.factor).element_name(s.payload)
            parts.append(f"{s.factor}:{name}")
        return ".".join(parts)


def _check_same_system(u: Word, v: Word) -> None:
    if u.system is not v.system and u.system != v.system:
        raise SystemMismatchError("words belong to different factor systems")


def normal_form(system: FactorSystem, letters: Iterable[FactorElement]) -> Word:
    """Reduce a letter sequence to the unique normal form of its product."""
    out: list[FactorElement] = []
    for s in letters:
        if system.is_identity(s):
            continue
        if out and out[-1].factor == s.factor:
            merged = system.mul(out[-1], s)
            out.pop()
            if not system.is_identity(merged):
                out.append(merged)
        else:
            out.append(s)
    return Word(system, tuple(out))


def word(system: FactorSystem, pairs: Sequence[tuple[int, int]]) -> Word:
    """Build a word from (factor, payload) pairs, normalizing payloads."""
    return normal_form(system, [system.element(f, p) for f, p in pairs])


def empty_word(system: FactorSystem) -> Word:
    return Word(system, ())


def letter(system: FactorSystem, element: FactorElement) -> Word:
    if system.is_identity(element):
        return Word(system, ())
    return Word(system, (element,))


def word_mul(u: Word, v: Word) -> Word:
    _check_same_system(u, v)
    if not u.syllables:
        return v
    if not v.syllables:
        return u
    return normal_form(u.system, u.syllables + v.syllables)


def word_inv(u: Word) -> Word:
    return u.inverse()


def syllable_length(u: Word) -> int:
    return u.syllable_count()


def leading_factor(u: Word) -> int | None:
    return u.leading_factor()


def enumerate_words(system: FactorSystem, max_syllables: int) -> Iterator[Word]:
    """Yield every reduced word with at most the given syllable count.

    Requires finite factors.  Output order: by length, then factor index,
    then payload, so the enumeration is deterministic.
    """
    if not system.all_finite:
        raise OracleUnavailableError("oracle requires finite factors")
    frontier = [empty_word(system)]
    yield frontier[0]
    for _ in range(max_syllables):
        new_frontier = []
        for w in frontier:
            last = w.trailing_factor()
            for i in range(1, system.n + 1):
                if i == last:
                    continue
                for payload in system.nontrivial_payloads(i):
                    extended = Word(system, w.syllables + (FactorElement(i, payload),))
                    new_frontier.append(extended)
                    yield extended
        frontier = new_frontier
