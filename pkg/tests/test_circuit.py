"""Circuit IR tests: evaluation, inversion, composition, builders, tables."""
import random

import pytest

from revmatch import (
    BitVec,
    Circuit,
    ControlLine,
    MctGate,
    NegationMap,
    PermutationMap,
    Rewire,
    WidthLimitExceeded,
    WidthMismatch,
    cnot,
    commute_neg_perm,
    compose,
    identity,
    mct,
    neg_circuit,
    not_gate,
    perm_circuit,
    random_circuit,
)


def three_wire_example() -> Circuit:
    # Wide gate: positive control wire 0, negative control wire 1, target
    # wire 2; then a NOT on wire 1.
    return Circuit(3, [mct(2, positive=[0], negative=[1]), not_gate(1)])


def three_wire_reference(i0: int, i1: int, i2: int) -> tuple[int, int, int]:
    # Independent per-output formulas for the example circuit.
    return i0, 1 - i1, i2 ^ (i0 & (1 - i1))


class TestBitVec:
    def test_roundtrip_bits(self):
        v = BitVec.from_bits([1, 0, 1, 1])
        assert v.value == 0b1101
        assert v.bits() == (1, 0, 1, 1)
        assert v[0] == 1 and v[1] == 0
        assert v.to01() == "1011"

    def test_wire_zero_is_lsb(self):
        assert BitVec.from_bits([1, 0, 0]).value == 1

    def test_bounds(self):
        with pytest.raises(ValueError):
            BitVec(0, 0)
        with pytest.raises(ValueError):
            BitVec(2, 4)
        with pytest.raises(IndexError):
            BitVec(2, 1).bit(2)

    def test_xor_width_checked(self):
        with pytest.raises(WidthMismatch):
            BitVec(2, 1) ^ BitVec(3, 1)
        assert (BitVec(3, 0b101) ^ BitVec(3, 0b011)).value == 0b110


class TestGates:
    def test_duplicate_control_rejected(self):
        with pytest.raises(ValueError):
            MctGate(2, (ControlLine(1), ControlLine(1, False)))

    def test_target_not_control(self):
        with pytest.raises(ValueError):
            MctGate(1, (ControlLine(1),))

    def test_controls_normalized_sorted(self):
        g = mct(0, positive=[3], negative=[1])
        assert [c.wire for c in g.controls] == [1, 3]

    def test_element_width_checked(self):
        with pytest.raises(WidthMismatch):
            Circuit(2, [not_gate(2)])
        with pytest.raises(WidthMismatch):
            Circuit(2, [Rewire(PermutationMap.identity(3))])


class TestEval:
    def test_example_circuit_known_points(self):
        c = three_wire_example()
        assert c.eval(BitVec.from_bits([0, 0, 0])).bits() == (0, 1, 0)
        assert c.eval(BitVec.from_bits([1, 0, 1])).bits() == (1, 1, 0)

    def test_example_circuit_all_inputs(self):
        c = three_wire_example()
        for x in range(8):
            got = c.eval(BitVec(3, x))
            want = three_wire_reference((x >> 0) & 1, (x >> 1) & 1, (x >> 2) & 1)
            assert got.bits() == want

    def test_empty_circuit_is_identity(self):
        c = identity(4)
        for x in range(16):
            assert c.eval_int(x) == x

    def test_eval_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            three_wire_example().eval(BitVec(2, 1))

    def test_eval_many_agrees_with_eval(self):
        rng = random.Random(11)
        for _ in range(10):
            c = random_circuit(6, 12, rng)
            xs = [rng.randrange(64) for _ in range(20)]
            assert c.eval_many(xs) == [c.eval_int(x) for x in xs]


class TestInvert:
    def test_not_gate_self_inverse(self):
        c = Circuit(1, [not_gate(0)])
        assert c.invert() == c

    def test_example_inverse_roundtrip(self):
        c = three_wire_example()
        inv = c.invert()
        assert len(inv) == 2
        for x in range(8):
            assert inv.eval_int(c.eval_int(x)) == x

    def test_rewire_inverse(self):
        cyc = PermutationMap((1, 2, 0))
        inv = perm_circuit(cyc).invert()
        assert inv.elements[0].perm == cyc.inverse()

    def test_invert_involution_functionally(self):
        rng = random.Random(3)
        for _ in range(10):
            c = random_circuit(5, 10, rng)
            assert c.invert().invert().table() == c.table()


class TestCompose:
    def test_compose_is_sequencing(self):
        rng = random.Random(7)
        for _ in range(10):
            a = random_circuit(5, 8, rng)
            b = random_circuit(5, 8, rng)
            ab = compose(a, b)
            for _ in range(16):
                x = rng.randrange(32)
                assert ab.eval_int(x) == b.eval_int(a.eval_int(x))

    def test_compose_with_inverse_is_identity(self):
        rng = random.Random(9)
        for n in (2, 5, 10):
            c = random_circuit(n, 3 * n, rng)
            both = compose(c, c.invert())
            for _ in range(32):
                x = rng.randrange(1 << n)
                assert both.eval_int(x) == x

    def test_compose_identity_neutral(self):
        c = three_wire_example()
        assert compose(identity(3), c).table() == c.table()

    def test_double_not_is_identity(self):
        c = compose(Circuit(1, [not_gate(0)]), Circuit(1, [not_gate(0)]))
        assert c.table() == [0, 1]

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            compose(identity(2), identity(3))


class TestNegPermCircuits:
    def test_neg_all_zero_is_empty(self):
        assert len(neg_circuit(NegationMap.zeros(3))) == 0

    def test_neg_xor_semantics(self):
        c = neg_circuit(NegationMap((1, 0, 1)))
        assert c.eval(BitVec(3, 0)).bits() == (1, 0, 1)
        for x in range(8):
            assert c.eval_int(x) == x ^ 0b101

    def test_neg_self_inverse(self):
        rng = random.Random(1)
        neg = NegationMap.random(5, rng)
        c = neg_circuit(neg)
        assert compose(c, c).table() == list(range(32))

    def test_perm_identity(self):
        c = perm_circuit(PermutationMap.identity(4))
        assert c.table() == list(range(16))

    def test_perm_swap_pair(self):
        c = perm_circuit(PermutationMap.swap(2, 0, 1))
        assert c.eval(BitVec.from_bits([1, 0])).bits() == (0, 1)

    def test_perm_then_inverse_identity(self):
        rng = random.Random(2)
        p = PermutationMap.random(6, rng)
        c = compose(perm_circuit(p), perm_circuit(p.inverse()))
        assert c.table() == list(range(64))

    def test_perm_one_hot_semantics(self):
        # The value on wire i must land on wire mapping[i].
        rng = random.Random(4)
        p = PermutationMap.random(7, rng)
        c = perm_circuit(p)
        for i in range(7):
            out = c.eval_int(1 << i)
            assert out == 1 << p.mapping[i]


class TestCommute:
    def test_identity_perm_keeps_flags(self):
        neg = NegationMap((1, 0, 1))
        assert commute_neg_perm(neg, PermutationMap.identity(3)) == neg

    def test_all_ones_invariant(self):
        rng = random.Random(6)
        perm = PermutationMap.random(5, rng)
        ones = NegationMap((1,) * 5)
        assert commute_neg_perm(ones, perm) == ones

    def test_two_wire_swap_example(self):
        neg = NegationMap((1, 0))
        perm = PermutationMap.swap(2, 0, 1)
        moved = commute_neg_perm(neg, perm)
        assert moved == NegationMap((0, 1))
        lhs = compose(neg_circuit(neg), perm_circuit(perm))
        rhs = compose(perm_circuit(perm), neg_circuit(moved))
        assert lhs.table() == rhs.table()

    def test_random_compositions_agree(self):
        rng = random.Random(8)
        for n in (2, 4, 8):
            for _ in range(10):
                neg = NegationMap.random(n, rng)
                perm = PermutationMap.random(n, rng)
                moved = commute_neg_perm(neg, perm)
                lhs = compose(neg_circuit(neg), perm_circuit(perm))
                rhs = compose(perm_circuit(perm), neg_circuit(moved))
                assert lhs.table() == rhs.table()

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            commute_neg_perm(NegationMap.zeros(2), PermutationMap.identity(3))


class TestTruthTable:
    def test_identity_table(self):
        assert identity(3).table() == list(range(8))

    def test_not_on_single_wire(self):
        assert Circuit(1, [not_gate(0)]).table() == [1, 0]

    def test_example_is_permutation(self):
        assert sorted(three_wire_example().table()) == list(range(8))

    def test_width_limit(self):
        with pytest.raises(WidthLimitExceeded):
            identity(17).table()
        with pytest.raises(WidthLimitExceeded):
            identity(5).table(max_width=4)

    def test_truth_table_bitvecs(self):
        tt = three_wire_example().truth_table()
        assert all(isinstance(v, BitVec) for v in tt)
        assert [v.value for v in tt] == three_wire_example().table()


class TestRandomCircuit:
    def test_seed_reproducible(self):
        assert random_circuit(6, 20, 123) == random_circuit(6, 20, 123)
        assert random_circuit(6, 20, 123) != random_circuit(6, 20, 124)

    def test_zero_gates_identity(self):
        assert random_circuit(4, 0, 0).table() == list(range(16))

    def test_bijective_across_widths(self):
        rng = random.Random(77)
        for n in (1, 2, 5, 8, 10):
            c = random_circuit(n, 3 * n + 2, rng)
            assert sorted(c.table()) == list(range(1 << n))

    def test_control_fanin_cap(self):
        c = random_circuit(10, 200, 5)
        assert max(len(g.controls) for g in c.elements) <= 4
        c2 = random_circuit(10, 200, 5, max_controls=2)
        assert max(len(g.controls) for g in c2.elements) <= 2


class TestMaps:
    def test_negation_mask_roundtrip(self):
        neg = NegationMap.from_mask(5, 0b10110)
        assert neg.mask == 0b10110
        assert neg.flags == (0, 1, 1, 0, 1)
        assert neg.inverse() == neg

    def test_permutation_bijection_enforced(self):
        with pytest.raises(ValueError):
            PermutationMap((0, 0, 1))

    def test_permutation_then(self):
        p = PermutationMap((1, 2, 0))
        q = PermutationMap((2, 0, 1))
        pq = p.then(q)
        for i in range(3):
            assert pq.mapping[i] == q.mapping[p.mapping[i]]
        assert p.then(p.inverse()).is_identity()
