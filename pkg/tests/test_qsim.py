"""Signed-subcube state simulator: preparation, evolution, overlaps, swap tests."""
import math
import random

import pytest

from revmatch import (
    Circuit,
    StateTooLarge,
    WidthMismatch,
    WireInit,
    inner_product,
    not_gate,
    prepare,
    random_circuit,
    swap_test,
)

Z, O, P, M = WireInit.ZERO, WireInit.ONE, WireInit.PLUS, WireInit.MINUS


class TestPrepare:
    def test_all_fixed(self):
        s = prepare([Z, Z])
        assert s.signs == {0: 1}

    def test_one_free_wire(self):
        s = prepare([Z, P])
        assert s.signs == {0b00: 1, 0b10: 1}

    def test_minus_signs(self):
        s = prepare([M])
        assert s.signs == {0: 1, 1: -1}

    def test_minus_sign_counts_ones(self):
        s = prepare([M, M])
        assert s.signs == {0b00: 1, 0b01: -1, 0b10: -1, 0b11: 1}

    def test_ones_fixed_high(self):
        s = prepare([O, Z, P])
        assert set(s.signs) == {0b001, 0b101}

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            prepare([])

    def test_support_cap(self):
        with pytest.raises(StateTooLarge):
            prepare([P] * 23)

    def test_support_is_power_of_two(self):
        rng = random.Random(0)
        for _ in range(20):
            inits = [rng.choice([Z, O, P, M]) for _ in range(6)]
            size = prepare(inits).support_size
            assert size & (size - 1) == 0


class TestApply:
    def test_identity_circuit(self):
        s = prepare([P, M, Z])
        assert s.apply(Circuit(3, ())) == s

    def test_not_on_minus_flips_global_sign(self):
        s = prepare([M])
        flipped = s.apply(Circuit(1, [not_gate(0)]))
        assert flipped.signs == {0: -1, 1: 1}
        # sign map is the exact negation of the original state
        assert {x: -v for x, v in s.signs.items()} == flipped.signs

    def test_not_on_plus_is_invisible(self):
        s = prepare([P])
        assert s.apply(Circuit(1, [not_gate(0)])) == s

    def test_support_size_preserved(self):
        rng = random.Random(1)
        for _ in range(20):
            c = random_circuit(6, 12, rng)
            s = prepare([rng.choice([Z, O, P, M]) for _ in range(6)])
            assert s.apply(c).support_size == s.support_size

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            prepare([Z, Z]).apply(Circuit(3, ()))


class TestInnerProduct:
    def test_identical_states(self):
        s = prepare([P, M, Z])
        assert inner_product(s, s) == 1.0

    def test_orthogonal_after_flip_of_fixed_wire(self):
        s = prepare([Z] + [P] * 4)
        t = s.apply(Circuit(5, [not_gate(0)]))
        assert inner_product(s, t) == 0.0

    def test_half_overlap(self):
        assert inner_product(prepare([P]), prepare([Z])) == pytest.approx(1 / math.sqrt(2))

    def test_global_sign_flips_sign_of_overlap(self):
        s = prepare([M])
        t = s.apply(Circuit(1, [not_gate(0)]))
        assert inner_product(s, t) == -1.0

    def test_bounded_by_one(self):
        rng = random.Random(2)
        for _ in range(50):
            a = prepare([rng.choice([Z, O, P, M]) for _ in range(5)])
            b = prepare([rng.choice([Z, O, P, M]) for _ in range(5)])
            assert abs(inner_product(a, b)) <= 1.0

    def test_unitary_preserves_inner_product_exactly(self):
        rng = random.Random(3)
        for _ in range(100):
            n = rng.randrange(2, 9)
            c = random_circuit(n, 2 * n, rng)
            a = prepare([rng.choice([Z, O, P, M]) for _ in range(n)])
            b = prepare([rng.choice([Z, O, P, M]) for _ in range(n)])
            assert inner_product(a.apply(c), b.apply(c)) == inner_product(a, b)


class TestSwapTest:
    def test_identical_states_never_measure_one(self):
        rng = random.Random(4)
        s = prepare([P, Z, M])
        assert all(swap_test(s, s, rng) == 0 for _ in range(2000))

    def test_deterministic_given_seed(self):
        a, b = prepare([P, P]), prepare([Z, P])
        runs = [
            [swap_test(a, b, random.Random(99)) for _ in range(50)]
            for _ in range(2)
        ]
        assert runs[0] == runs[1]

    def test_orthogonal_states_fair_coin(self):
        rng = random.Random(5)
        a = prepare([Z, P, P])
        b = a.apply(Circuit(3, [not_gate(0)]))
        trials = 10_000
        ones = sum(swap_test(a, b, rng) for _ in range(trials))
        sigma = math.sqrt(0.25 / trials)
        assert abs(ones / trials - 0.5) <= 3 * sigma

    def test_quarter_probability_at_half_overlap(self):
        # overlap 1/sqrt(2) makes P(outcome 1) exactly 1/4
        rng = random.Random(6)
        a, b = prepare([P]), prepare([Z])
        assert inner_product(a, b) == pytest.approx(1 / math.sqrt(2))
        trials = 10_000
        ones = sum(swap_test(a, b, rng) for _ in range(trials))
        p = 0.25
        sigma = math.sqrt(p * (1 - p) / trials)
        assert abs(ones / trials - p) <= 3 * sigma

    def test_width_mismatch(self):
        with pytest.raises(WidthMismatch):
            swap_test(prepare([P]), prepare([P, P]), random.Random(0))
