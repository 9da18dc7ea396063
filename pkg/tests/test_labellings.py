import random

import pytest

from whitefact.autos import inner_auto, whitehead_auto, whitehead_to_auto
from whitefact.factors import FactorElement
from whitefact.labellings import (
    act_on_label,
    apex_equivalent,
    apex_label,
    base_label,
    base_witness_by_volume,
    collapses,
    double_coset_core,
    is_base,
    spoke_graph,
    star_equivalent,
    star_label,
    volume,
)
from whitefact.sampling import random_splitting_label, random_word
from whitefact.words import empty_word, letter, word


@pytest.fixture(scope="module")
def w(triple_z2):
    s = triple_z2
    return {
        "eps": empty_word(s),
        "a": word(s, [(1, 1)]),
        "b": word(s, [(2, 1)]),
        "c": word(s, [(3, 1)]),
    }


def brute_star_equivalent(L1, L2):
    """Complete witness search: any witness lies in the slot-1 coset."""
    system = L1.system
    for payload in system.factor(1).payloads():
        g = L1.slot(1).inverse() * letter(system, FactorElement(1, payload)) * L2.slot(1)
        ok = True
        for j in range(1, system.n + 1):
            leftover = L1.slot(j) * g * L2.slot(j).inverse()
            if not (
                leftover.is_identity()
                or (leftover.syllable_count() == 1 and leftover.leading_factor() == j)
            ):
                ok = False
                break
        if ok:
            return g
    return None


def brute_apex_equivalent(M1, M2):
    """Complete search over g in g_i^-1 G_i g_i' and slotwise apex elements."""
    if M1.apex != M2.apex:
        return False
    system = M1.system
    i = M1.apex
    for payload in system.factor(i).payloads():
        g = M1.slot(i).inverse() * letter(system, FactorElement(i, payload)) * M2.slot(i)
        ok = True
        for j in range(1, system.n + 1):
            found = False
            for s in system.factor(i).payloads():
                gamma = (
                    M1.slot(i).inverse()
                    * letter(system, FactorElement(i, s))
                    * M1.slot(i)
                )
                leftover = M1.slot(j) * gamma * g * M2.slot(j).inverse()
                if leftover.is_identity() or (
                    leftover.syllable_count() == 1 and leftover.leading_factor() == j
                ):
                    found = True
                    break
            if not found:
                ok = False
                break
        if ok:
            return True
    return False


class TestCanonicalSlots:
    def test_leading_own_syllable_absorbed(self, triple_z2, w):
        label = star_label(triple_z2, [w["a"], w["a"], w["a"]])
        assert label.conjugators == (w["eps"], w["a"], w["a"])

    def test_apex_label_same_rule(self, triple_z2, w):
        label = apex_label(triple_z2, 2, [w["b"] * w["a"], w["b"], w["a"]])
        assert label.conjugators == (w["b"] * w["a"], w["eps"], w["a"])


class TestDoubleCosetCore:
    def test_degenerate_cores_empty(self, triple_z2, w):
        for value in (w["eps"], w["b"], w["a"], w["b"] * w["a"]):
            assert double_coset_core(value, lead=2, trail=1).is_identity()

    def test_wrong_order_two_syllable_kept(self, triple_z2, w):
        core = double_coset_core(w["a"] * w["b"], lead=2, trail=1)
        assert core == w["a"] * w["b"]

    def test_foreign_syllable_kept(self, triple_z2, w):
        assert double_coset_core(w["c"], lead=2, trail=1) == w["c"]


class TestStarEquivalence:
    def test_common_conjugator(self, triple_z2, w):
        base = base_label(triple_z2)
        other = star_label(triple_z2, [w["a"], w["a"], w["a"]])
        assert star_equivalent(base, other) == w["a"]

    def test_reflexive_with_trivial_witness(self, triple_z2, w):
        label = star_label(triple_z2, [w["b"], w["c"], w["a"]])
        assert star_equivalent(label, label).is_identity()

    def test_single_slot_offset_not_equivalent(self, triple_z2, w):
        base = base_label(triple_z2)
        assert star_equivalent(base, star_label(triple_z2, [w["eps"], w["eps"], w["b"]])) is None

    def test_one_syllable_classes_pair_up(self, triple_z2, w):
        eps = w["eps"]
        assert (
            star_equivalent(
                star_label(triple_z2, [eps, eps, w["a"]]),
                star_label(triple_z2, [eps, w["a"], eps]),
            )
            is not None
        )
        assert (
            star_equivalent(
                star_label(triple_z2, [eps, eps, w["a"]]),
                star_label(triple_z2, [eps, eps, w["b"]]),
            )
            is None
        )

    @pytest.mark.parametrize("fixture", ["triple_z2", "z342"])
    def test_agrees_with_brute_force(self, request, fixture):
        system = request.getfixturevalue(fixture)
        rng = random.Random(7)
        agreements = 0
        for _ in range(120):
            L1 = star_label(system, [random_word(system, rng, 2) for _ in range(3)])
            L2 = star_label(system, [random_word(system, rng, 2) for _ in range(3)])
            fast = star_equivalent(L1, L2)
            slow = brute_star_equivalent(L1, L2)
            assert (fast is None) == (slow is None)
            if fast is not None:
                agreements += 1
                assert fast == slow  # the witness is unique
        assert agreements > 0

    def test_witness_validates(self, z342):
        rng = random.Random(13)
        for _ in range(60):
            L1 = random_splitting_label(z342, rng, 3)
            shift = random_word(z342, rng, 3)
            moved = star_label(z342, [s * shift for s in L1.conjugators])
            witness = star_equivalent(L1, moved)
            assert witness is not None
            for j in range(1, 4):
                leftover = L1.slot(j) * witness * moved.slot(j).inverse()
                assert leftover.is_identity() or (
                    leftover.syllable_count() == 1 and leftover.leading_factor() == j
                )

    def test_equivalence_relation_properties(self, triple_z2):
        rng = random.Random(17)
        labels = [
            star_label(triple_z2, [random_word(triple_z2, rng, 2) for _ in range(3)])
            for _ in range(12)
        ]
        for L1 in labels:
            assert star_equivalent(L1, L1) is not None
            for L2 in labels:
                forward = star_equivalent(L1, L2) is not None
                assert forward == (star_equivalent(L2, L1) is not None)
                for L3 in labels:
                    if forward and star_equivalent(L2, L3) is not None:
                        assert star_equivalent(L1, L3) is not None

    def test_invariant_under_slotwise_left_multiplication(self, triple_z2, w):
        label = star_label(triple_z2, [w["b"], w["c"], w["b"] * w["a"]])
        shifted = star_label(
            triple_z2,
            [
                letter(triple_z2, FactorElement(j, 1)) * label.slot(j)
                for j in range(1, 4)
            ],
        )
        assert star_equivalent(label, shifted) is not None


class TestApexEquivalence:
    def test_apex_element_in_slot_absorbed(self, triple_z2, w):
        eps = w["eps"]
        first = apex_label(triple_z2, 1, [eps, eps, eps])
        second = apex_label(triple_z2, 1, [eps, w["a"], eps])
        assert apex_equivalent(first, second)

    def test_apex_mismatch(self, triple_z2, w):
        eps = w["eps"]
        assert not apex_equivalent(
            apex_label(triple_z2, 1, [eps, eps, eps]),
            apex_label(triple_z2, 2, [eps, eps, eps]),
        )

    def test_foreign_slot_offset_not_equivalent(self, triple_z2, w):
        eps = w["eps"]
        first = apex_label(triple_z2, 1, [eps, eps, eps])
        second = apex_label(triple_z2, 1, [eps, eps, w["b"]])
        assert not apex_equivalent(first, second)

    @pytest.mark.parametrize("fixture", ["triple_z2", "z342"])
    def test_agrees_with_brute_force(self, request, fixture):
        system = request.getfixturevalue(fixture)
        rng = random.Random(29)
        for _ in range(120):
            apex = rng.randint(1, 3)
            M1 = apex_label(system, apex, [random_word(system, rng, 2) for _ in range(3)])
            M2 = apex_label(system, apex, [random_word(system, rng, 2) for _ in range(3)])
            assert apex_equivalent(M1, M2) == brute_apex_equivalent(M1, M2)


class TestCollapses:
    def test_base_collapses_to_the_n_apex_labels(self, triple_z2, w):
        eps = w["eps"]
        result = collapses(base_label(triple_z2))
        assert [m.apex for m in result] == [1, 2, 3]
        for i, m in enumerate(result, start=1):
            assert apex_equivalent(m, apex_label(triple_z2, i, [eps, eps, eps]))

    def test_collapse_count_and_shared_tuple(self, triple_z2, w):
        label = star_label(triple_z2, [w["eps"], w["eps"], w["b"]])
        result = collapses(label)
        assert len(result) == 3
        assert all(m.conjugators == label.conjugators for m in result)

    def test_collapse_respects_equivalence(self, triple_z2):
        rng = random.Random(41)
        for _ in range(40):
            L1 = random_splitting_label(triple_z2, rng, 3)
            shift = random_word(triple_z2, rng, 3)
            L2 = star_label(triple_z2, [s * shift for s in L1.conjugators])
            assert star_equivalent(L1, L2) is not None
            for m1, m2 in zip(collapses(L1), collapses(L2)):
                assert apex_equivalent(m1, m2)


class TestAction:
    def test_factor_auto_fixes_base_exactly(self, z342):
        from whitefact.factors import FactorAutoPart
        from whitefact.autos import factor_only_auto

        phi = factor_only_auto(
            z342, [FactorAutoPart(1, 2), FactorAutoPart(2, 3), FactorAutoPart(3, 1)]
        )
        assert act_on_label(base_label(z342), phi) == base_label(z342)

    def test_inner_action_is_translation(self, triple_z2, w):
        h = w["a"] * w["b"]
        moved = act_on_label(base_label(triple_z2), inner_auto(triple_z2, h))
        expected = star_label(triple_z2, [h, h, h])
        assert moved == expected
        assert star_equivalent(moved, base_label(triple_z2)) is not None

    def test_whitehead_action_on_base(self, triple_z2, w):
        psi = whitehead_to_auto(whitehead_auto(triple_z2, (3,), FactorElement(1, 1)))
        moved = act_on_label(base_label(triple_z2), psi)
        assert moved == star_label(triple_z2, [w["eps"], w["eps"], w["a"]])

    def test_right_action_law(self, triple_z2):
        rng = random.Random(43)
        from whitefact.autos import compose
        from whitefact.sampling import random_pure_auto

        for _ in range(25):
            label = random_splitting_label(triple_z2, rng, 2)
            f = random_pure_auto(triple_z2, rng, 2)
            g = random_pure_auto(triple_z2, rng, 2)
            assert act_on_label(act_on_label(label, f), g) == act_on_label(
                label, compose(g, f)
            )

    def test_action_commutes_with_collapse(self, triple_z2):
        rng = random.Random(47)
        from whitefact.sampling import random_pure_auto

        for _ in range(25):
            label = random_splitting_label(triple_z2, rng, 2)
            psi = random_pure_auto(triple_z2, rng, 2)
            moved = act_on_label(label, psi)
            for m_before, m_after in zip(collapses(label), collapses(moved)):
                assert act_on_label(m_before, psi) == m_after


class TestVolume:
    def test_base_volume_is_n(self, triple_z2):
        assert volume(base_label(triple_z2)) == 3

    def test_two_syllable_slot(self, triple_z2, w):
        label = star_label(triple_z2, [w["eps"], w["eps"], w["b"] * w["a"]])
        assert volume(label) == 7

    def test_one_syllable_slot(self, triple_z2, w):
        label = star_label(triple_z2, [w["eps"], w["eps"], w["b"]])
        assert volume(label) == 5

    def test_translate_of_base_has_volume_n_at_witness(self, triple_z2, w):
        label = star_label(triple_z2, [w["a"], w["a"], w["a"]])
        assert volume(label, w["a"]) == 3
        # the canonical tuple (eps, a, a) has volume 7 at the origin
        assert volume(label) == 7

    def test_spoke_lengths_odd(self, z342):
        rng = random.Random(53)
        for _ in range(40):
            label = star_label(z342, [random_word(z342, rng, 3) for _ in range(3)])
            graph = spoke_graph(label, random_word(z342, rng, 2))
            for spoke in graph.spokes:
                assert (len(spoke) - 1) % 2 == 1
            assert graph.volume == sum(len(s) - 1 for s in graph.spokes)
            assert graph.volume >= z342.n


class TestIsBase:
    def test_base_and_translates(self, triple_z2, w):
        assert is_base(base_label(triple_z2))
        assert is_base(star_label(triple_z2, [w["a"], w["a"], w["a"]]))
        assert not is_base(star_label(triple_z2, [w["eps"], w["eps"], w["b"]]))

    def test_volume_witness_agrees(self, triple_z2):
        rng = random.Random(59)
        for _ in range(80):
            label = star_label(
                triple_z2, [random_word(triple_z2, rng, 2) for _ in range(3)]
            )
            witness = base_witness_by_volume(label)
            assert (witness is not None) == is_base(label)
            if witness is not None:
                assert volume(label, witness) == 3
