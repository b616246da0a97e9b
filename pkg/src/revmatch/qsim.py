"""Exact simulator for signed uniform superpositions over basis patterns.

Circuits here are permutation operators, so states prepared as products of
|0>, |1>, |+>, |-> stay in a tiny closed class: a support set of basis
patterns, all with amplitude magnitude 1/sqrt(|support|), each carrying a
sign of +1 or -1. Such states are stored exactly (no floating amplitudes),
which makes inner products and swap-test probabilities exact rationals up to
the final square root.

Measurement is modelled at the statistics level only: a swap test on states
s1, s2 returns 1 with probability 1/2 - 1/2 * <s1|s2>^2.
"""
from __future__ import annotations

import math
import random
from enum import Enum

from .circuit import BitVec, Circuit
from .errors import StateTooLarge, WidthMismatch

MAX_SUPPORT_BITS = 22


class WireInit(Enum):
    """Initial single-wire state for preparing a product-state input."""

    ZERO = "0"
    ONE = "1"
    PLUS = "+"
    MINUS = "-"


class SparseState:
    """Signed uniform superposition over a set of basis patterns."""

    __slots__ = ("width", "signs")

    def __init__(self, width: int, signs: dict[int, int]):
        if width < 1:
            raise ValueError("state needs at least one wire")
        if not signs:
            raise ValueError("state support must be non-empty")
        limit = 1 << width
        for x, s in signs.items():
            if not 0 <= x < limit:
                raise ValueError(f"pattern {x} out of range for width {width}")
            if s not in (1, -1):
                raise ValueError("signs must be +1 or -1")
        self.width = width
        self.signs = dict(signs)

    @property
    def support_size(self) -> int:
        return len(self.signs)

    def support(self) -> set[BitVec]:
        return {BitVec(self.width, x) for x in self.signs}

    def sign(self, x: BitVec | int) -> int:
        key = x.value if isinstance(x, BitVec) else x
        return self.signs[key]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparseState)
            and self.width == other.width
            and self.signs == other.signs
        )

    def __repr__(self) -> str:
        return f"SparseState(width={self.width}, support={len(self.signs)})"

    def apply(self, circuit: Circuit) -> SparseState:
        """Image of the state under a permutation circuit; signs ride along."""
        if circuit.width != self.width:
            raise WidthMismatch("circuit and state widths differ")
        images = circuit.eval_many(self.signs.keys())
        out = dict(zip(images, self.signs.values()))
        assert len(out) == len(self.signs), "circuit was not a bijection on support"
        return SparseState(self.width, out)


def prepare(inits) -> SparseState:
    """Product state from per-wire initializers, wire 0 first.

    Support is every pattern matching the fixed ZERO/ONE wires with the
    PLUS/MINUS wires free; the sign of a pattern is -1 raised to the number
    of MINUS wires reading 1.
    """
    inits = list(inits)
    if not inits:
        raise ValueError("empty init list")
    width = len(inits)
    fixed = 0
    free: list[int] = []
    minus_mask = 0
    for wire, init in enumerate(inits):
        if init is WireInit.ONE:
            fixed |= 1 << wire
        elif init is WireInit.ZERO:
            pass
        elif init in (WireInit.PLUS, WireInit.MINUS):
            free.append(wire)
            if init is WireInit.MINUS:
                minus_mask |= 1 << wire
        else:
            raise TypeError(f"bad wire init {init!r}")
    if len(free) > MAX_SUPPORT_BITS:
        raise StateTooLarge(
            f"support of 2^{len(free)} patterns exceeds 2^{MAX_SUPPORT_BITS}"
        )
    signs: dict[int, int] = {}
    for combo in range(1 << len(free)):
        x = fixed
        for b, wire in enumerate(free):
            if (combo >> b) & 1:
                x |= 1 << wire
        s = -1 if bin(x & minus_mask).count("1") % 2 else 1
        signs[x] = s
    return SparseState(width, signs)


def basis_state(x: BitVec) -> SparseState:
    """Classical pattern embedded as a single-element superposition."""
    return SparseState(x.width, {x.value: 1})


def inner_product(s1: SparseState, s2: SparseState) -> float:
    """Real inner product; exact up to the final square root."""
    if s1.width != s2.width:
        raise WidthMismatch("state widths differ")
    small, big = (s1.signs, s2.signs) if len(s1.signs) <= len(s2.signs) else (s2.signs, s1.signs)
    total = 0
    for x, s in small.items():
        other = big.get(x)
        if other is not None:
            total += s * other
    return total / math.sqrt(len(s1.signs) * len(s2.signs))


def swap_test(s1: SparseState, s2: SparseState, rng: random.Random) -> int:
    """One simulated swap-test measurement.

    Returns 1 with probability 1/2 - 1/2 * <s1|s2>^2; the squared overlap is
    computed from integers, so the probability is exact.
    """
    if s1.width != s2.width:
        raise WidthMismatch("state widths differ")
    small, big = (s1.signs, s2.signs) if len(s1.signs) <= len(s2.signs) else (s2.signs, s1.signs)
    total = 0
    for x, s in small.items():
        other = big.get(x)
        if other is not None:
            total += s * other
    num = total * total
    den = len(s1.signs) * len(s2.signs)
    p_one = (den - num) / (2 * den)
    return 1 if rng.random() < p_one else 0
