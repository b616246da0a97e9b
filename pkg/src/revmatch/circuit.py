"""Reversible-circuit intermediate representation.

A circuit is an ordered list of elements applied left to right. Elements are
either multiple-controlled Toffoli (MCT) gates or primitive wire rewires.
Every circuit computes a bijection on the set of width-bit patterns.

Wire convention: wires are indexed 0..width-1, wire 0 is both the top wire of
a diagram and the least significant bit of the integer encoding of a pattern.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import WidthLimitExceeded, WidthMismatch

MAX_TABLE_WIDTH = 16
DEFAULT_MAX_CONTROLS = 4


@dataclass(frozen=True)
class BitVec:
    """Fixed-width bit pattern; wire 0 is the least significant bit of `value`."""

    width: int
    value: int = 0

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be >= 1, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(f"value {self.value} out of range for width {self.width}")

    @classmethod
    def from_bits(cls, bits) -> BitVec:
        """Build from an iterable of 0/1 values, wire 0 first."""
        bits = list(bits)
        value = 0
        for i, b in enumerate(bits):
            if b not in (0, 1):
                raise ValueError(f"bit {i} is {b!r}, expected 0 or 1")
            value |= b << i
        return cls(len(bits), value)

    @classmethod
    def zeros(cls, width: int) -> BitVec:
        return cls(width, 0)

    @classmethod
    def ones(cls, width: int) -> BitVec:
        return cls(width, (1 << width) - 1)

    def bit(self, wire: int) -> int:
        if not 0 <= wire < self.width:
            raise IndexError(f"wire {wire} out of range for width {self.width}")
        return (self.value >> wire) & 1

    def __getitem__(self, wire: int) -> int:
        return self.bit(wire)

    def __len__(self) -> int:
        return self.width

    def bits(self) -> tuple[int, ...]:
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def __xor__(self, other: BitVec) -> BitVec:
        if self.width != other.width:
            raise WidthMismatch(f"cannot xor widths {self.width} and {other.width}")
        return BitVec(self.width, self.value ^ other.value)

    def __int__(self) -> int:
        return self.value

    def to01(self) -> str:
        """Bits as a string, wire 0 first."""
        return "".join(str(b) for b in self.bits())


@dataclass(frozen=True)
class NegationMap:
    """Per-wire negation flags; flag 1 means the wire's value is flipped."""

    flags: tuple[int, ...]

    def __post_init__(self):
        if len(self.flags) < 1:
            raise ValueError("negation map needs at least one wire")
        if any(f not in (0, 1) for f in self.flags):
            raise ValueError("negation flags must be 0 or 1")

    @property
    def width(self) -> int:
        return len(self.flags)

    @property
    def mask(self) -> int:
        m = 0
        for i, f in enumerate(self.flags):
            m |= f << i
        return m

    @classmethod
    def zeros(cls, width: int) -> NegationMap:
        return cls((0,) * width)

    @classmethod
    def from_mask(cls, width: int, mask: int) -> NegationMap:
        return cls(tuple((mask >> i) & 1 for i in range(width)))

    @classmethod
    def random(cls, width: int, rng: random.Random) -> NegationMap:
        return cls.from_mask(width, rng.randrange(1 << width))

    def apply_int(self, x: int) -> int:
        return x ^ self.mask

    def apply(self, x: BitVec) -> BitVec:
        if x.width != self.width:
            raise WidthMismatch("pattern width does not match negation map")
        return BitVec(self.width, self.apply_int(x.value))

    def inverse(self) -> NegationMap:
        """Negation is an involution; the inverse is the map itself."""
        return self

    def is_identity(self) -> bool:
        return not any(self.flags)


@dataclass(frozen=True)
class PermutationMap:
    """Wire permutation; mapping[i] = j moves the value on wire i to wire j."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        n = len(self.mapping)
        if n < 1:
            raise ValueError("permutation needs at least one wire")
        if sorted(self.mapping) != list(range(n)):
            raise ValueError(f"{self.mapping} is not a permutation of 0..{n - 1}")

    @property
    def width(self) -> int:
        return len(self.mapping)

    @classmethod
    def identity(cls, width: int) -> PermutationMap:
        return cls(tuple(range(width)))

    @classmethod
    def swap(cls, width: int, a: int, b: int) -> PermutationMap:
        m = list(range(width))
        m[a], m[b] = m[b], m[a]
        return cls(tuple(m))

    @classmethod
    def random(cls, width: int, rng: random.Random) -> PermutationMap:
        m = list(range(width))
        rng.shuffle(m)
        return cls(tuple(m))

    def apply_int(self, x: int) -> int:
        y = 0
        for i, j in enumerate(self.mapping):
            y |= ((x >> i) & 1) << j
        return y

    def apply(self, x: BitVec) -> BitVec:
        if x.width != self.width:
            raise WidthMismatch("pattern width does not match permutation map")
        return BitVec(self.width, self.apply_int(x.value))

    def inverse(self) -> PermutationMap:
        inv = [0] * self.width
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return PermutationMap(tuple(inv))

    def then(self, other: PermutationMap) -> PermutationMap:
        """Composite map: apply self first, then `other`."""
        if other.width != self.width:
            raise WidthMismatch("permutation widths differ")
        return PermutationMap(tuple(other.mapping[j] for j in self.mapping))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


@dataclass(frozen=True, order=True)
class ControlLine:
    """A control wire of an MCT gate; positive fires on 1, negative on 0."""

    wire: int
    positive: bool = True


@dataclass(frozen=True)
class MctGate:
    """Multiple-controlled Toffoli gate.

    Flips `target` iff every positive control reads 1 and every negative
    control reads 0. Zero controls is a NOT gate.
    """

    target: int
    controls: tuple[ControlLine, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(sorted(self.controls)))
        wires = [c.wire for c in self.controls]
        if len(set(wires)) != len(wires):
            raise ValueError("duplicate control wires")
        if self.target in wires:
            raise ValueError("target cannot also be a control")
        if self.target < 0 or any(w < 0 for w in wires):
            raise ValueError("negative wire index")

    @property
    def max_wire(self) -> int:
        return max([self.target] + [c.wire for c in self.controls])

    def control_mask(self) -> int:
        m = 0
        for c in self.controls:
            m |= 1 << c.wire
        return m

    def control_value(self) -> int:
        v = 0
        for c in self.controls:
            if c.positive:
                v |= 1 << c.wire
        return v


def not_gate(target: int) -> MctGate:
    return MctGate(target)


def cnot(control: int, target: int) -> MctGate:
    return MctGate(target, (ControlLine(control),))


def mct(target: int, positive=(), negative=()) -> MctGate:
    """Convenience builder from separate positive / negative control wire lists."""
    controls = tuple(ControlLine(w, True) for w in positive) + tuple(
        ControlLine(w, False) for w in negative
    )
    return MctGate(target, controls)


@dataclass(frozen=True)
class Rewire:
    """Primitive wire permutation element; exact and O(1) to store.

    Kept symbolic inside circuits; expanded to CNOT swap triples only when a
    circuit is exported to text form.
    """

    perm: PermutationMap


CircuitElement = MctGate | Rewire


class Circuit:
    """Ordered list of circuit elements applied left to right."""

    __slots__ = ("width", "elements", "_ops")

    def __init__(self, width: int, elements=()):
        if width < 1:
            raise ValueError(f"width must be >= 1, got {width}")
        elements = tuple(elements)
        for el in elements:
            if isinstance(el, MctGate):
                if el.max_wire >= width:
                    raise WidthMismatch(f"gate touches wire {el.max_wire}, width is {width}")
            elif isinstance(el, Rewire):
                if el.perm.width != width:
                    raise WidthMismatch("rewire width does not match circuit width")
            else:
                raise TypeError(f"unsupported circuit element {el!r}")
        self.width = width
        self.elements = elements
        self._ops = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Circuit)
            and self.width == other.width
            and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.width, self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"Circuit(width={self.width}, elements={len(self.elements)})"

    def _compile(self):
        # Rewires become a pair of lookup tables over the low/high halves of
        # the pattern; bit moves are independent, so the halves just OR.
        ops = []
        for el in self.elements:
            if isinstance(el, MctGate):
                ops.append((el.control_mask(), el.control_value(), 1 << el.target))
            else:
                lo_bits = (self.width + 1) // 2
                lo_mask = (1 << lo_bits) - 1
                apply = el.perm.apply_int
                tab_lo = tuple(apply(x) for x in range(1 << lo_bits))
                tab_hi = tuple(
                    apply(x << lo_bits) for x in range(1 << (self.width - lo_bits))
                )
                ops.append((-1, lo_bits, (lo_mask, tab_lo, tab_hi)))
        self._ops = tuple(ops)
        return self._ops

    def eval_int(self, x: int) -> int:
        """Apply the circuit to an integer-encoded pattern."""
        ops = self._ops or self._compile()
        for mask, val, aux in ops:
            if mask >= 0:
                if (x & mask) == val:
                    x ^= aux
            else:
                lo_mask, tab_lo, tab_hi = aux
                x = tab_lo[x & lo_mask] | tab_hi[x >> val]
        return x

    def eval(self, x: BitVec) -> BitVec:
        if x.width != self.width:
            raise WidthMismatch(f"input width {x.width} != circuit width {self.width}")
        return BitVec(self.width, self.eval_int(x.value))

    def eval_many(self, xs) -> list[int]:
        """Apply the circuit to a batch of integer patterns, gate-major."""
        ops = self._ops or self._compile()
        xs = list(xs)
        for mask, val, aux in ops:
            if mask >= 0:
                xs = [x ^ aux if (x & mask) == val else x for x in xs]
            else:
                lo_mask, tab_lo, tab_hi = aux
                xs = [tab_lo[x & lo_mask] | tab_hi[x >> val] for x in xs]
        return xs

    def invert(self) -> Circuit:
        """Inverse circuit: reversed order, MCT gates are self-inverse."""
        inv = []
        for el in reversed(self.elements):
            if isinstance(el, Rewire):
                inv.append(Rewire(el.perm.inverse()))
            else:
                inv.append(el)
        return Circuit(self.width, inv)

    def then(self, other: Circuit) -> Circuit:
        """Circuit that applies self first, then `other`."""
        if other.width != self.width:
            raise WidthMismatch("cannot compose circuits of different widths")
        return Circuit(self.width, self.elements + other.elements)

    def table(self, max_width: int = MAX_TABLE_WIDTH) -> list[int]:
        """Full input->output table as integers."""
        if self.width > max_width:
            raise WidthLimitExceeded(
                f"truth table of width {self.width} exceeds limit {max_width}"
            )
        return self.eval_many(range(1 << self.width))

    def truth_table(self, max_width: int = MAX_TABLE_WIDTH) -> list[BitVec]:
        """Full input->output table, indexed by the integer input pattern."""
        return [BitVec(self.width, y) for y in self.table(max_width)]


def identity(width: int) -> Circuit:
    return Circuit(width, ())


def compose(first: Circuit, second: Circuit) -> Circuit:
    """Circuit computing second(first(x))."""
    return first.then(second)


def neg_circuit(neg: NegationMap) -> Circuit:
    """One NOT gate per set flag; self-inverse, computes x XOR flags."""
    gates = [not_gate(i) for i, f in enumerate(neg.flags) if f]
    return Circuit(neg.width, gates)


def perm_circuit(perm: PermutationMap) -> Circuit:
    """Single rewire element moving the value on wire i to wire perm.mapping[i]."""
    return Circuit(perm.width, (Rewire(perm),))


def commute_neg_perm(neg: NegationMap, perm: PermutationMap) -> NegationMap:
    """Negation flags seen after pulling a negation through a permutation.

    Returns neg2 such that applying `neg` then `perm` equals applying `perm`
    then `neg2`: the flag of wire i travels with its value to wire mapping[i].
    """
    if neg.width != perm.width:
        raise WidthMismatch("negation and permutation widths differ")
    out = [0] * neg.width
    for i, j in enumerate(perm.mapping):
        out[j] = neg.flags[i]
    return NegationMap(tuple(out))


def random_circuit(
    width: int,
    gate_count: int,
    rng: int | random.Random,
    max_controls: int = DEFAULT_MAX_CONTROLS,
) -> Circuit:
    """Random MCT circuit, deterministic for a fixed seed.

    Each gate gets a uniform target, a control count in [0, min(width-1,
    max_controls)], distinct control wires, and uniform polarities.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    cap = min(width - 1, max_controls)
    gates = []
    for _ in range(gate_count):
        target = rng.randrange(width)
        k = rng.randint(0, cap)
        pool = [w for w in range(width) if w != target]
        wires = rng.sample(pool, k)
        controls = tuple(ControlLine(w, rng.random() < 0.5) for w in wires)
        gates.append(MctGate(target, controls))
    return Circuit(width, gates)
