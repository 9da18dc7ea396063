"""Pure symmetric automorphisms and their Whitehead factorization.

A pure symmetric automorphism is stored by parts: for each factor k an
automorphism phi_k of G_k and a conjugator word g_k, with
psi(x) = g_k^-1 phi_k(x) g_k for x in G_k.

Composition convention, fixed globally: compose(f, g) applies g first,
i.e. compose(f, g).apply(w) == f.apply(g.apply(w)).  A Factorization with
whitehead list [W1, ..., WK], factor parts F and inner word h represents
psi = W1 o W2 o ... o WK o F o (conjugation by h) under the same
convention: the inner conjugation acts first, WK next, W1 last.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    FactorMismatchError,
    NonSplittingError,
    NotAStabilizerError,
    SystemMismatchError,
)
from .factors import FactorAutoPart, FactorElement, FactorSystem
from .labellings import (
    _apex_obstruction,
    _single_factor_element,
    _star_witness,
    apex_equivalent,
    apex_label,
    base_label,
    star_label,
)
from .reduction import reduce_to_base
from .words import Word, empty_word, letter, normal_form


@dataclass(frozen=True)
class PureSymmetricAuto:
    system: FactorSystem
    parts: tuple[tuple[FactorAutoPart, Word], ...]

    def phi(self, k: int) -> FactorAutoPart:
        return self.parts[k - 1][0]

    def conjugator(self, k: int) -> Word:
        return self.parts[k - 1][1]

    def apply(self, w: Word) -> Word:
        """Homomorphic image in normal form."""
        if w.system != self.system:
            raise SystemMismatchError("word from a different factor system")
        system = self.system
        letters: list[FactorElement] = []
        for s in w.syllables:
            part, conj = self.parts[s.factor - 1]
            letters.extend(conj.inverse().syllables)
            letters.append(system.part_apply(part, s))
            letters.extend(conj.syllables)
        return normal_form(system, letters)


def pure_auto(system: FactorSystem, parts) -> PureSymmetricAuto:
    packed = []
    for k, (part, conj) in enumerate(parts, start=1):
        if part.factor != k:
            raise FactorMismatchError(
                f"part for factor {part.factor} placed in slot {k}"
            )
        if conj.system != system:
            raise SystemMismatchError("conjugator from a different factor system")
        packed.append((part, conj))
    if len(packed) != system.n:
        raise ValueError(f"expected {system.n} parts, got {len(packed)}")
    return PureSymmetricAuto(system, tuple(packed))


def identity_auto(system: FactorSystem) -> PureSymmetricAuto:
    eps = empty_word(system)
    return PureSymmetricAuto(
        system,
        tuple((system.part_identity(k), eps) for k in range(1, system.n + 1)),
    )


def inner_auto(system: FactorSystem, h: Word) -> PureSymmetricAuto:
    return PureSymmetricAuto(
        system,
        tuple((system.part_identity(k), h) for k in range(1, system.n + 1)),
    )


def factor_only_auto(system: FactorSystem, parts) -> PureSymmetricAuto:
    eps = empty_word(system)
    return pure_auto(system, [(part, eps) for part in parts])


def tuple_auto(system: FactorSystem, words) -> PureSymmetricAuto:
    return pure_auto(
        system,
        [(system.part_identity(k), w) for k, w in enumerate(words, start=1)],
    )


@dataclass(frozen=True)
class WhiteheadAuto:
    """(Y, x): conjugate the factors in Y by x, fix everything else.

    The operating factor is the factor of x; it is fixed pointwise.  Y must
    be nonempty and x nontrivial, otherwise the value would collapse to the
    identity and outer classes would lose their unique representatives.
    """

    system: FactorSystem
    moved: tuple[int, ...]
    element: FactorElement

    @property
    def operating(self) -> int:
        return self.element.factor


def whitehead_auto(system: FactorSystem, moved, element: FactorElement) -> WhiteheadAuto:
    moved = tuple(sorted(set(moved)))
    if not moved:
        raise ValueError("a Whitehead automorphism needs a nonempty moved set")
    if system.is_identity(element):
        raise ValueError("a Whitehead automorphism needs a nontrivial element")
    for j in moved:
        system.factor(j)
        if j == element.factor:
            raise ValueError(
                f"operating factor {j} cannot belong to the moved set"
            )
    return WhiteheadAuto(system, moved, system.element(element.factor, element.payload))


def whitehead_to_auto(w: WhiteheadAuto) -> PureSymmetricAuto:
    system = w.system
    x = letter(system, w.element)
    eps = empty_word(system)
    parts = []
    for k in range(1, system.n + 1):
        conj = x if k in w.moved else eps
        parts.append((system.part_identity(k), conj))
    return PureSymmetricAuto(system, tuple(parts))


def whitehead_inverse(w: WhiteheadAuto) -> WhiteheadAuto:
    return WhiteheadAuto(w.system, w.moved, w.system.inverse(w.element))


def compose(f: PureSymmetricAuto, g: PureSymmetricAuto) -> PureSymmetricAuto:
    """g first, then f: compose(f, g).apply(w) == f.apply(g.apply(w))."""
    if f.system != g.system:
        raise SystemMismatchError("automorphisms over different factor systems")
    system = f.system
    parts = []
    for k in range(1, system.n + 1):
        part = system.part_compose(f.phi(k), g.phi(k))
        conj = f.conjugator(k) * f.apply(g.conjugator(k))
        parts.append((part, conj))
    return PureSymmetricAuto(system, tuple(parts))


def _split_canonical(psi: PureSymmetricAuto):
    """psi == tuple_auto(words) o factor_only(parts), slots coset-canonical.

    A leading own-factor syllable of a conjugator is absorbed into the
    factor part as an inner conjugation of that factor.
    """
    system = psi.system
    words = []
    parts = []
    for k in range(1, system.n + 1):
        conj = psi.conjugator(k)
        part = psi.phi(k)
        if conj.syllables and conj.syllables[0].factor == k:
            head = conj.syllables[0]
            conj = Word(system, conj.syllables[1:])
            part = system.part_compose(system.conjugation_part(head), part)
        words.append(conj)
        parts.append(part)
    return tuple(words), tuple(parts)


@dataclass(frozen=True)
class Factorization:
    whitehead: tuple[WhiteheadAuto, ...]
    factor: tuple[FactorAutoPart, ...]
    inner: Word


def _apply_whitehead(w: WhiteheadAuto, word_in: Word) -> Word:
    system = w.system
    x = w.element
    x_inv = system.inverse(x)
    letters: list[FactorElement] = []
    for s in word_in.syllables:
        if s.factor in w.moved:
            letters.extend((x_inv, s, x))
        else:
            letters.append(s)
    return normal_form(system, letters)


def _apply_parts(parts, word_in: Word) -> Word:
    system = word_in.system
    letters = [system.part_apply(parts[s.factor - 1], s) for s in word_in.syllables]
    return normal_form(system, letters)


def evaluate_factorization(system: FactorSystem, f: Factorization, w: Word) -> Word:
    """Apply inner, then factor parts, then the Whitehead list right to left."""
    out = f.inner.inverse() * w * f.inner
    out = _apply_parts(f.factor, out)
    for wh in reversed(f.whitehead):
        out = _apply_whitehead(wh, out)
    return out


def factorize(psi: PureSymmetricAuto) -> Factorization:
    """Express psi as Whitehead moves, a factor automorphism, and an inner.

    The conjugator tuple is walked back to the base labelling; every fold
    move (i, j, a) contributes the Whitehead move ({G_j}, a), conjugated
    forward past the slot canonicalizations absorbed along the way.  When
    the tuple is already base-equivalent the walk is skipped and psi splits
    directly as factor-part times inner.
    """
    system = psi.system
    words, parts0 = _split_canonical(psi)
    label = star_label(system, words)
    witness, _ = _star_witness(base_label(system), label)
    if witness is not None:
        # psi = inner-by-witness o B o parts0 with b_k = t_k witness^-1 in G_k;
        # rewritten as F o inner with F = B o parts0 and inner = F^-1(witness).
        parts = []
        for k in range(1, system.n + 1):
            b = _single_factor_element(label.slot(k) * witness.inverse(), k)
            parts.append(system.part_compose(system.conjugation_part(b), parts0[k - 1]))
        inverse_parts = [system.part_invert(p) for p in parts]
        h = _apply_parts(inverse_parts, witness)
        return Factorization((), tuple(parts), h)

    _, moves = reduce_to_base(label)

    # Replay the moves on the canonical tuple, remembering which own-factor
    # prefix each update sheds; those prefixes become factor-part corrections.
    slots = list(words)
    replay = []
    for mv in moves:
        gi = slots[mv.i - 1]
        c = gi.inverse() * letter(system, mv.element) * gi
        raw = slots[mv.j - 1] * c
        stripped = None
        if raw.syllables and raw.syllables[0].factor == mv.j:
            stripped = raw.syllables[0]
            raw = Word(system, raw.syllables[1:])
        slots[mv.j - 1] = raw
        replay.append((mv.i, mv.j, mv.element, stripped))
    if any(not s.is_identity() for s in slots):
        raise NonSplittingError("reduction did not land on the base tuple")

    correction = [system.part_identity(k) for k in range(1, system.n + 1)]
    whitehead: list[WhiteheadAuto] = []
    for i, j, element, stripped in reversed(replay):
        if stripped is not None:
            correction[j - 1] = system.part_compose(
                correction[j - 1], system.conjugation_part(stripped)
            )
        moved_element = system.part_apply(correction[i - 1], system.inverse(element))
        whitehead.append(WhiteheadAuto(system, (j,), moved_element))
    factor_parts = tuple(
        system.part_compose(correction[k - 1], parts0[k - 1])
        for k in range(1, system.n + 1)
    )
    return Factorization(tuple(whitehead), factor_parts, empty_word(system))


def recompose_factorization(system: FactorSystem, f: Factorization) -> PureSymmetricAuto:
    result = compose(factor_only_auto(system, f.factor), inner_auto(system, f.inner))
    for wh in reversed(f.whitehead):
        result = compose(whitehead_to_auto(wh), result)
    return result


def invert(psi: PureSymmetricAuto) -> PureSymmetricAuto:
    """Inverse automorphism, assembled from the Whitehead factorization.

    With psi = W1 o ... o WK o F o inner, the inverse applies W1^-1 first,
    so the inverted Whitehead moves are appended innermost-first.
    """
    system = psi.system
    f = factorize(psi)
    result = inner_auto(system, f.inner.inverse())
    inverse_parts = factor_only_auto(system, [system.part_invert(p) for p in f.factor])
    result = compose(result, inverse_parts)
    for wh in reversed(f.whitehead):
        result = compose(result, whitehead_to_auto(whitehead_inverse(wh)))
    return result


def verify_factorization(psi: PureSymmetricAuto, f: Factorization) -> bool:
    """Exact agreement with psi on every factor element (generator for Z)."""
    system = psi.system
    for k in range(1, system.n + 1):
        backend = system.factor(k)
        if backend.is_finite():
            payloads = list(backend.payloads())
        else:
            payloads = [1]
        for payload in payloads:
            w = letter(system, FactorElement(k, payload))
            if evaluate_factorization(system, f, w) != psi.apply(w):
                return False
    return True


def is_inner(psi: PureSymmetricAuto) -> Word | None:
    """The conjugating word h when psi is inner, else None.

    psi is conjugation by h exactly when h g_k^-1 lands in G_k with
    phi_k equal to conjugation by that element, for every k.  Slots 1 and 2
    pin the single candidate h, then all slots are checked.
    """
    system = psi.system
    v = psi.conjugator(1) * psi.conjugator(2).inverse()
    # h = a g_1 = b g_2 with a in G_1, b in G_2 forces a^-1 b = g_1 g_2^-1.
    target = v
    syllables = target.syllables
    a = system.identity(1)
    if len(syllables) == 0:
        pass
    elif len(syllables) == 1:
        s = syllables[0]
        if s.factor == 1:
            a = system.inverse(s)
        elif s.factor != 2:
            return None
    elif len(syllables) == 2:
        s1, s2 = syllables
        if s1.factor != 1 or s2.factor != 2:
            return None
        a = system.inverse(s1)
    else:
        return None
    h = letter(system, a) * psi.conjugator(1)
    for k in range(1, system.n + 1):
        c = _single_factor_element(h * psi.conjugator(k).inverse(), k)
        if c is None:
            return None
        if not system.part_matches_conjugation(psi.phi(k), c):
            return None
    return h


def decompose_star_stabilizer(psi: PureSymmetricAuto):
    """Split a base-class stabilizer as factor parts plus an inner word.

    Returns (parts, g) with psi(G_k) = G_k^g for every k and parts the
    restriction of conjugation-by-g^-1 composed with psi.  Raises
    NotAStabilizerError naming the obstructing slot otherwise.
    """
    system = psi.system
    words, parts0 = _split_canonical(psi)
    label = star_label(system, words)
    witness, bad_slot = _star_witness(base_label(system), label)
    if witness is None:
        raise NotAStabilizerError(bad_slot)
    parts = []
    for k in range(1, system.n + 1):
        b = _single_factor_element(label.slot(k) * witness.inverse(), k)
        parts.append(system.part_compose(system.conjugation_part(b), parts0[k - 1]))
    return tuple(parts), witness


def decompose_apex_stabilizer(psi: PureSymmetricAuto, i: int):
    """Split an apex-class stabilizer into Whitehead moves with operating
    factor i plus factor parts; the pair recomposes to psi up to inner.

    Raises NotAStabilizerError naming the obstructing slot otherwise.
    """
    system = psi.system
    system.factor(i)
    words, parts0 = _split_canonical(psi)
    own = apex_label(system, i, words)
    base_apex = apex_label(
        system, i, [empty_word(system) for _ in range(system.n)]
    )
    if not apex_equivalent(own, base_apex):
        raise NotAStabilizerError(_apex_obstruction(own, base_apex))
    shift = own.slot(i).inverse()
    whiteheads = []
    parts = []
    for j in range(1, system.n + 1):
        if j == i:
            parts.append(parts0[j - 1])
            continue
        w = own.slot(j) * shift
        syllables = w.syllables
        b = system.identity(j)
        c = system.identity(i)
        if len(syllables) == 1:
            if syllables[0].factor == j:
                b = syllables[0]
            else:
                c = syllables[0]
        elif len(syllables) == 2:
            b, c = syllables
        parts.append(system.part_compose(system.conjugation_part(b), parts0[j - 1]))
        if not system.is_identity(c):
            whiteheads.append(WhiteheadAuto(system, (j,), c))
    return whiteheads, tuple(parts)
