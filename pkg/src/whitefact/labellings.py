"""Graph-of-groups labellings of the two star shapes, and their volumes.

A star labelling assigns the conjugate G_j^{g_j} to the j-th leaf of the
star with a trivial hub; an apex labelling puts one factor at the hub
instead.  Slot words are stored coset-canonically (leading syllable of the
slot's own factor absorbed), but labels are not class-canonical: class
identity is decided by the equivalence procedures below.

The double-coset core rule underpins both deciders: stripping at most one
leading G_j syllable and one trailing G_i syllable from a normal form
yields a canonical representative of the double coset G_j w G_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import SystemMismatchError
from .factors import FactorElement, FactorSystem
from .tree import TreeVertex, c_vertex, distance, geodesic, u_vertex
from .words import Word, empty_word, letter


@dataclass(frozen=True)
class StarLabel:
    """Conjugator tuple (g_1, ..., g_n): the labelling with trivial hub."""

    system: FactorSystem
    conjugators: tuple[Word, ...]

    def slot(self, j: int) -> Word:
        return self.conjugators[j - 1]


@dataclass(frozen=True)
class ApexLabel:
    """Conjugator tuple plus the index of the factor sitting at the hub."""

    system: FactorSystem
    apex: int
    conjugators: tuple[Word, ...]

    def slot(self, j: int) -> Word:
        return self.conjugators[j - 1]


@dataclass(frozen=True)
class SpokeGraph:
    """Wedge of the n spokes at a chosen U-vertex; volume counts all edges."""

    center: TreeVertex
    spokes: tuple[tuple[TreeVertex, ...], ...]
    volume: int


def _canonical_slots(system: FactorSystem, words: Sequence[Word]) -> tuple[Word, ...]:
    if len(words) != system.n:
        raise ValueError(f"expected {system.n} slot words, got {len(words)}")
    slots = []
    for j, w in enumerate(words, start=1):
        if w.system != system:
            raise SystemMismatchError("slot word from a different factor system")
        if w.syllables and w.syllables[0].factor == j:
            w = Word(system, w.syllables[1:])
        slots.append(w)
    return tuple(slots)


def star_label(system: FactorSystem, words: Sequence[Word]) -> StarLabel:
    return StarLabel(system, _canonical_slots(system, words))


def apex_label(system: FactorSystem, apex: int, words: Sequence[Word]) -> ApexLabel:
    system.factor(apex)
    return ApexLabel(system, apex, _canonical_slots(system, words))


def base_label(system: FactorSystem) -> StarLabel:
    return StarLabel(system, tuple(empty_word(system) for _ in range(system.n)))


def double_coset_core(w: Word, lead: int, trail: int) -> Word:
    """Canonical representative of G_lead . w . G_trail."""
    syllables = w.syllables
    if syllables and syllables[0].factor == lead:
        syllables = syllables[1:]
    if syllables and syllables[-1].factor == trail:
        syllables = syllables[:-1]
    return Word(w.system, syllables)


def _split_lead_core_trail(w: Word, lead: int, trail: int):
    """Decompose w = b . core . a with b in G_lead and a in G_trail (or None)."""
    syllables = w.syllables
    b = None
    a = None
    if syllables and syllables[0].factor == lead:
        b = syllables[0]
        syllables = syllables[1:]
    if syllables and syllables[-1].factor == trail:
        a = syllables[-1]
        syllables = syllables[:-1]
    return b, Word(w.system, syllables), a


def _single_factor_element(w: Word, factor: int) -> FactorElement | None:
    """The element of G_factor that w reduces to, or None when it does not."""
    if w.is_identity():
        return w.system.identity(factor)
    if w.syllable_count() == 1 and w.syllables[0].factor == factor:
        return w.syllables[0]
    return None


def _star_witness(L1: StarLabel, L2: StarLabel):
    """Witness g with G_j^{L2_j} = G_j^{L1_j . g} for all j, or (None, slot).

    Slots 1 and 2 pin the only possible candidate: conjugates of distinct
    factors intersect trivially, so the coset constraints from two slots
    meet in at most one element, found by comparing double-coset cores of
    w = g_2 g_1^-1 and w' = g_2' g_1'^-1.
    """
    if L1.system != L2.system:
        raise SystemMismatchError("labels belong to different factor systems")
    system = L1.system
    w = L1.slot(2) * L1.slot(1).inverse()
    wp = L2.slot(2) * L2.slot(1).inverse()
    b, core, a = _split_lead_core_trail(w, lead=2, trail=1)
    bp, corep, ap = _split_lead_core_trail(wp, lead=2, trail=1)
    if core != corep:
        return None, 2
    u = system.mul(
        system.inverse(a) if a is not None else system.identity(1),
        ap if ap is not None else system.identity(1),
    )
    g = L1.slot(1).inverse() * letter(system, u) * L2.slot(1)
    for j in range(1, system.n + 1):
        leftover = L1.slot(j) * g * L2.slot(j).inverse()
        if _single_factor_element(leftover, j) is None:
            return None, j
    return g, None


def star_equivalent(L1: StarLabel, L2: StarLabel) -> Word | None:
    """Equivalence of star labellings; returns the witness conjugator g."""
    witness, _ = _star_witness(L1, L2)
    return witness


def _apex_obstruction(M1: ApexLabel, M2: ApexLabel) -> int | None:
    """First slot obstructing apex-label equivalence, or None when equivalent.

    After right-translating each tuple by its apex conjugator inverse the
    condition decouples into double-coset equality G_j w_j G_i = G_j w'_j G_i
    per non-apex slot, decided by core comparison.
    """
    if M1.system != M2.system:
        raise SystemMismatchError("labels belong to different factor systems")
    if M1.apex != M2.apex:
        return 0  # apex mismatch reported as slot 0
    system = M1.system
    i = M1.apex
    shift1 = M1.slot(i).inverse()
    shift2 = M2.slot(i).inverse()
    for j in range(1, system.n + 1):
        if j == i:
            continue
        w1 = M1.slot(j) * shift1
        w2 = M2.slot(j) * shift2
        if double_coset_core(w1, lead=j, trail=i) != double_coset_core(w2, lead=j, trail=i):
            return j
    return None


def apex_equivalent(M1: ApexLabel, M2: ApexLabel) -> bool:
    return _apex_obstruction(M1, M2) is None


def collapses(L: StarLabel) -> list[ApexLabel]:
    """The n collapse neighbours: push each factor in turn onto the hub."""
    return [ApexLabel(L.system, i, L.conjugators) for i in range(1, L.system.n + 1)]


def act_on_label(label, psi):
    """Right action of a pure symmetric automorphism on a labelling.

    Slot j becomes psi's own conjugator for factor j, times the psi-image
    of the old slot word, canonicalized.
    """
    system = label.system
    new_words = [
        psi.conjugator(j) * psi.apply(label.slot(j)) for j in range(1, system.n + 1)
    ]
    if isinstance(label, StarLabel):
        return star_label(system, new_words)
    return apex_label(system, label.apex, new_words)


def spoke_graph(L: StarLabel, x: Word | None = None) -> SpokeGraph:
    system = L.system
    center = u_vertex(x if x is not None else empty_word(system))
    spokes = tuple(
        geodesic(center, c_vertex(i, L.slot(i))) for i in range(1, system.n + 1)
    )
    total = sum(len(s) - 1 for s in spokes)
    return SpokeGraph(center, spokes, total)


def volume(L: StarLabel, x: Word | None = None) -> int:
    system = L.system
    center = u_vertex(x if x is not None else empty_word(system))
    return sum(
        distance(center, c_vertex(i, L.slot(i))) for i in range(1, system.n + 1)
    )


def is_base(L: StarLabel) -> bool:
    return star_equivalent(L, base_label(L.system)) is not None


def base_witness_by_volume(L: StarLabel) -> Word | None:
    """The unique x that could give volume n, if it exists and does.

    Any such x lies in G_1 g_1 and G_2 g_2 simultaneously, which pins a
    single candidate; independent of the equivalence decision procedure.
    """
    system = L.system
    # Solve u . g_1 = v . g_2 with u in G_1, v in G_2: v^-1 u = g_2 g_1^-1.
    target = L.slot(2) * L.slot(1).inverse()
    b, core, a = _split_lead_core_trail(target, lead=2, trail=1)
    if not core.is_identity():
        return None
    u = a if a is not None else system.identity(1)
    x = letter(system, u) * L.slot(1)
    if volume(L, x) == system.n:
        return x
    return None
