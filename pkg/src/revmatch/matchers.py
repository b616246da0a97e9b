"""Matching algorithms: recover negation/permutation witnesses from oracles.

Equivalence labels are "X-Y" with X, Y in {I, N, P, NP}: X transforms the
inputs before the reference circuit runs, Y transforms its outputs. The fixed
composition convention, used by every planter, matcher, and verifier here:

    C1(v) = block_Y( C2( block_X(v) ) )

where block_I is the identity, block_N flips wires per a negation map,
block_P moves wire values per a permutation map, and block_NP applies the
negation first and the permutation second.

Fast matchers only touch oracles through their query methods. The brute-force
reference matcher works on white-box circuits and exists to cross-check the
fast ones; it enumerates one side's candidate blocks and solves the other
side exactly, so it is complete over the full witness space.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from itertools import permutations

from .circuit import (
    BitVec,
    Circuit,
    NegationMap,
    PermutationMap,
    identity,
    neg_circuit,
    perm_circuit,
)
from .errors import (
    AmbiguityError,
    InverseUnavailable,
    MissingKeyError,
    NoPartnerError,
    WidthLimitExceeded,
    WidthMismatch,
    WitnessShapeError,
)
from .oracle import Oracle
from .qsim import WireInit, prepare, swap_test

MAX_BRUTE_PERM_WIDTH = 8
MAX_BRUTE_NP_WIDTH = 6
MAX_BRUTE_NEG_WIDTH = 12
MAX_BRUTE_WIDTH = 16


class Side(Enum):
    """Transformation applied on one side of an equivalence."""

    I = "I"
    N = "N"
    P = "P"
    NP = "NP"

    @property
    def has_negation(self) -> bool:
        return self in (Side.N, Side.NP)

    @property
    def has_permutation(self) -> bool:
        return self in (Side.P, Side.NP)


@dataclass(frozen=True)
class EquivType:
    """An input-side / output-side pair such as N-P or NP-I."""

    input_side: Side
    output_side: Side

    @classmethod
    def parse(cls, label: str) -> EquivType:
        try:
            x, y = label.split("-")
            return cls(Side(x), Side(y))
        except ValueError:
            raise ValueError(f"bad equivalence label {label!r}") from None

    @property
    def label(self) -> str:
        return f"{self.input_side.value}-{self.output_side.value}"

    def __str__(self) -> str:
        return self.label


ALL_EQUIVS = tuple(
    EquivType(x, y) for x in Side for y in Side
)

# Equivalences with no known polynomial-query algorithm; witness search for
# these goes through the brute-force matcher only.
HARD_EQUIVS = frozenset(
    EquivType.parse(s) for s in ("N-N", "P-P", "N-NP", "P-NP", "NP-N", "NP-P", "NP-NP")
)

TRACTABLE_EQUIVS = frozenset(e for e in ALL_EQUIVS if e not in HARD_EQUIVS)


@dataclass(frozen=True)
class MatchWitness:
    """Concrete maps realizing an equivalence; only the demanded parts are set."""

    equiv: EquivType
    nu_x: NegationMap | None = None
    pi_x: PermutationMap | None = None
    nu_y: NegationMap | None = None
    pi_y: PermutationMap | None = None

    def __post_init__(self):
        checks = (
            ("nu_x", self.nu_x, self.equiv.input_side.has_negation),
            ("pi_x", self.pi_x, self.equiv.input_side.has_permutation),
            ("nu_y", self.nu_y, self.equiv.output_side.has_negation),
            ("pi_y", self.pi_y, self.equiv.output_side.has_permutation),
        )
        for name, value, wanted in checks:
            if wanted and value is None:
                raise WitnessShapeError(f"{self.equiv} witness is missing {name}")
            if not wanted and value is not None:
                raise WitnessShapeError(f"{self.equiv} witness must not carry {name}")
        widths = {m.width for m in (self.nu_x, self.pi_x, self.nu_y, self.pi_y) if m}
        if len(widths) > 1:
            raise WitnessShapeError(f"witness components disagree on width: {widths}")

    @property
    def width(self) -> int | None:
        for m in (self.nu_x, self.pi_x, self.nu_y, self.pi_y):
            if m is not None:
                return m.width
        return None

    def to_dict(self) -> dict:
        out: dict = {"equiv": self.equiv.label}
        if self.nu_x is not None:
            out["nu_x"] = list(self.nu_x.flags)
        if self.pi_x is not None:
            out["pi_x"] = list(self.pi_x.mapping)
        if self.nu_y is not None:
            out["nu_y"] = list(self.nu_y.flags)
        if self.pi_y is not None:
            out["pi_y"] = list(self.pi_y.mapping)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> MatchWitness:
        def neg(key):
            return NegationMap(tuple(data[key])) if key in data else None

        def perm(key):
            return PermutationMap(tuple(data[key])) if key in data else None

        return cls(
            equiv=EquivType.parse(data["equiv"]),
            nu_x=neg("nu_x"),
            pi_x=perm("pi_x"),
            nu_y=neg("nu_y"),
            pi_y=perm("pi_y"),
        )


@dataclass(frozen=True)
class MatchConfig:
    """Knobs for the randomized and quantum matchers.

    failure_budget picks how epsilon is spent: "per-decision" charges the
    full epsilon to every individual accept/reject decision, "union-bound"
    divides it by the number of decisions so the whole run fails with
    probability at most epsilon.
    """

    epsilon: float = 0.05
    seed: int = 0
    k_override: int | None = None
    failure_budget: str = "per-decision"

    def __post_init__(self):
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError("epsilon must lie in (0, 1)")
        if self.failure_budget not in ("per-decision", "union-bound"):
            raise ValueError(f"unknown failure budget {self.failure_budget!r}")

    def swap_test_rounds(self, decisions: int) -> int:
        """Swap-test repetitions per decision for the quantum matchers."""
        if self.k_override is not None:
            return self.k_override
        eps = self.epsilon
        if self.failure_budget == "union-bound":
            eps = eps / decisions
        return max(1, math.ceil(math.log2(1.0 / eps)))

    def sequence_rounds(self, n: int) -> int:
        """Random-pattern count for the sequence-matching matchers."""
        if self.k_override is not None:
            return self.k_override
        return max(1, math.ceil(math.log2(n * (n - 1) / self.epsilon)))


# ---------------------------------------------------------------------------
# shared probing machinery
# ---------------------------------------------------------------------------


def _same_width(o1, o2) -> int:
    if o1.width != o2.width:
        raise WidthMismatch(f"oracle widths differ: {o1.width} vs {o2.width}")
    return o1.width


def _code_patterns(n: int) -> list[int]:
    """Patterns whose per-wire input sequences spell each wire's index, LSB first."""
    rounds = (n - 1).bit_length()
    return [
        sum(((j >> t) & 1) << j for j in range(n)) for t in range(rounds)
    ]


def _decode_perm(outputs: list[int], n: int) -> PermutationMap:
    """Invert the code-pattern probe of a pure wire-permutation oracle."""
    mapping: list[int | None] = [None] * n
    for q in range(n):
        code = 0
        for t, out in enumerate(outputs):
            code |= ((out >> q) & 1) << t
        if code >= n or mapping[code] is not None:
            raise MissingKeyError(
                "probe outputs do not describe a wire permutation; promise violated?"
            )
        mapping[code] = q
    return PermutationMap(tuple(mapping))  # type: ignore[arg-type]


def _perm_from_probe(probe, n: int) -> PermutationMap:
    return _decode_perm([probe(p) for p in _code_patterns(n)], n)


class _XorOutputOracle:
    """View of an oracle with a fixed mask xored onto every output.

    Pure classical post-processing: queries are forwarded, so all counting
    happens on the underlying oracle.
    """

    def __init__(self, base, mask: int):
        self._base = base
        self._mask = mask

    @property
    def width(self) -> int:
        return self._base.width

    @property
    def has_inverse(self) -> bool:
        return self._base.has_inverse

    def query(self, x: BitVec) -> BitVec:
        return BitVec(self.width, self._base.query(x).value ^ self._mask)

    def query_inverse(self, y: BitVec) -> BitVec:
        return self._base.query_inverse(BitVec(self.width, y.value ^ self._mask))


class _SwappedOracle:
    """View of an oracle with forward and inverse roles exchanged."""

    def __init__(self, base):
        if not base.has_inverse:
            raise InverseUnavailable("cannot swap an oracle without an inverse")
        self._base = base

    @property
    def width(self) -> int:
        return self._base.width

    @property
    def has_inverse(self) -> bool:
        return True

    def query(self, x: BitVec) -> BitVec:
        return self._base.query_inverse(x)

    def query_inverse(self, x: BitVec) -> BitVec:
        return self._base.query(x)


# ---------------------------------------------------------------------------
# classical matchers
# ---------------------------------------------------------------------------


def match_i_n(o1, o2) -> NegationMap:
    """I-N: recover the output negation from the all-zero probe; 1 query each."""
    n = _same_width(o1, o2)
    zero = BitVec.zeros(n)
    return NegationMap.from_mask(n, o1.query(zero).value ^ o2.query(zero).value)


def match_i_p_inv(o1, o2) -> PermutationMap:
    """I-P with one inverse: composed oracle is a bare wire permutation.

    Uses ceil(log2 n) code patterns; each pattern costs one query to each
    constituent of the composed oracle.
    """
    n = _same_width(o1, o2)
    if o2.has_inverse:
        def probe(v):
            return o1.query(o2.query_inverse(BitVec(n, v))).value

        return _perm_from_probe(probe, n)
    if o1.has_inverse:
        def probe(v):
            return o2.query(o1.query_inverse(BitVec(n, v))).value

        return _perm_from_probe(probe, n).inverse()
    raise InverseUnavailable("I-P inverse route needs at least one inverse oracle")


def _wire_sequences(outputs: list[int], n: int) -> list[int]:
    """Per-wire output bit sequences across a probe run, packed as integers."""
    return [
        sum(((out >> wire) & 1) << t for t, out in enumerate(outputs))
        for wire in range(n)
    ]


def match_i_p_rand(o1, o2, cfg: MatchConfig) -> PermutationMap:
    """I-P without inverses: pair up per-wire output sequences of k random probes."""
    n = _same_width(o1, o2)
    if n == 1:
        return PermutationMap.identity(1)
    k = cfg.sequence_rounds(n)
    rng = random.Random(cfg.seed)
    pats = [rng.randrange(1 << n) for _ in range(k)]
    seqs1 = _wire_sequences([o1.query(BitVec(n, p)).value for p in pats], n)
    seqs2 = _wire_sequences([o2.query(BitVec(n, p)).value for p in pats], n)
    partner: dict[int, int] = {}
    for b2, s in enumerate(seqs2):
        if s in partner:
            raise AmbiguityError("two reference wires share an output sequence")
        partner[s] = b2
    mapping: list[int | None] = [None] * n
    for b1, s in enumerate(seqs1):
        b2 = partner.get(s)
        if b2 is None or mapping[b2] is not None:
            raise AmbiguityError("output sequences do not pair up bijectively")
        mapping[b2] = b1
    return PermutationMap(tuple(mapping))  # type: ignore[arg-type]


def match_i_np_inv(o1, o2) -> tuple[NegationMap, PermutationMap]:
    """I-NP with one inverse: all-zero probe isolates the negation, codes the rest."""
    n = _same_width(o1, o2)
    if o2.has_inverse:
        def probe(v):
            return o1.query(o2.query_inverse(BitVec(n, v))).value

        shifted = probe(0)  # negation flags as seen after the permutation
        perm = _perm_from_probe(lambda v: probe(v) ^ shifted, n)
        flags = tuple((shifted >> perm.mapping[i]) & 1 for i in range(n))
        return NegationMap(flags), perm
    if o1.has_inverse:
        def probe(v):
            return o2.query(o1.query_inverse(BitVec(n, v))).value

        mask = probe(0)  # this composition puts the negation last, so no shift
        rho = _perm_from_probe(lambda v: probe(v) ^ mask, n)
        return NegationMap.from_mask(n, mask), rho.inverse()
    raise InverseUnavailable("I-NP inverse route needs at least one inverse oracle")


def match_i_np_rand(o1, o2, cfg: MatchConfig) -> tuple[NegationMap, PermutationMap]:
    """I-NP without inverses: sequences match plainly (flag 0) or flipped (flag 1)."""
    n = _same_width(o1, o2)
    if n == 1:
        zero = BitVec.zeros(1)
        flag = o1.query(zero).value ^ o2.query(zero).value
        return NegationMap((flag,)), PermutationMap.identity(1)
    k = cfg.sequence_rounds(n)
    rng = random.Random(cfg.seed)
    pats = [rng.randrange(1 << n) for _ in range(k)]
    seqs1 = _wire_sequences([o1.query(BitVec(n, p)).value for p in pats], n)
    seqs2 = _wire_sequences([o2.query(BitVec(n, p)).value for p in pats], n)
    full = (1 << k) - 1
    partner: dict[int, tuple[int, int]] = {}
    for b2, s in enumerate(seqs2):
        for key, flip in ((s, 0), (s ^ full, 1)):
            if key in partner:
                raise AmbiguityError("a sequence and some complement collide")
            partner[key] = (b2, flip)
    mapping: list[int | None] = [None] * n
    flags = [0] * n
    for b1, s in enumerate(seqs1):
        hit = partner.get(s)
        if hit is None:
            raise AmbiguityError("output sequences do not pair up bijectively")
        b2, flip = hit
        if mapping[b2] is not None:
            raise AmbiguityError("two wires matched the same partner")
        mapping[b2] = b1
        flags[b2] = flip
    return NegationMap(tuple(flags)), PermutationMap(tuple(mapping))  # type: ignore[arg-type]


def match_p_i_inv(o1, o2) -> PermutationMap:
    """P-I with one inverse: conjugate away the reference circuit, decode codes."""
    n = _same_width(o1, o2)
    if o1.has_inverse:
        def probe(v):
            return o1.query_inverse(o2.query(BitVec(n, v))).value

        return _perm_from_probe(probe, n).inverse()
    if o2.has_inverse:
        def probe(v):
            return o2.query_inverse(o1.query(BitVec(n, v))).value

        return _perm_from_probe(probe, n)
    raise InverseUnavailable("P-I inverse route needs at least one inverse oracle")


def match_p_i_onehot(o1, o2) -> PermutationMap:
    """P-I without inverses: one-hot probes; exactly n queries per oracle."""
    n = _same_width(o1, o2)
    ins = [BitVec(n, 1 << i) for i in range(n)]
    by_out1 = {o1.query(x).value: i for i, x in enumerate(ins)}
    out2 = [o2.query(x).value for x in ins]
    rho: list[int] = []
    for i in range(n):
        j = by_out1.get(out2[i])
        if j is None:
            raise MissingKeyError(
                f"one-hot output of wire {i} has no match; promise violated?"
            )
        rho.append(j)
    if sorted(rho) != list(range(n)):
        raise MissingKeyError("one-hot matching is not a bijection; promise violated?")
    return PermutationMap(tuple(rho)).inverse()


def match_n_i_inv(o1, o2) -> NegationMap:
    """N-I with one inverse: a single round trip through zero; 2 queries total."""
    n = _same_width(o1, o2)
    zero = BitVec.zeros(n)
    if o2.has_inverse:
        mask = o2.query_inverse(o1.query(zero)).value
    elif o1.has_inverse:
        mask = o1.query_inverse(o2.query(zero)).value
    else:
        raise InverseUnavailable("N-I inverse route needs at least one inverse oracle")
    return NegationMap.from_mask(n, mask)


def match_n_i_quantum(o1, o2, cfg: MatchConfig) -> NegationMap:
    """N-I without inverses: superposition probes with swap tests.

    Wire i is probed with |0> on wire i and |+> elsewhere, which blanks out
    every other potential flip. Identical outputs never measure 1, so the
    first 1 proves a flip on wire i; k silent rounds accept flag 0 with
    confidence 1 - 2^-k. At most 2*n*k quantum queries.
    """
    n = _same_width(o1, o2)
    k = cfg.swap_test_rounds(n)
    rng = random.Random(cfg.seed)
    flags = []
    for i in range(n):
        inits = [WireInit.PLUS] * n
        inits[i] = WireInit.ZERO
        psi = prepare(inits)
        flag = 0
        for _ in range(k):
            s1 = o1.query_state(psi)
            s2 = o2.query_state(psi)
            if swap_test(s1, s2, rng) == 1:
                flag = 1
                break
        flags.append(flag)
    return NegationMap(tuple(flags))


def match_np_i_inv(o1, o2) -> tuple[NegationMap, PermutationMap]:
    """NP-I with one inverse: zero probe plus negation-corrected code patterns."""
    n = _same_width(o1, o2)
    if o2.has_inverse:
        def probe(v):
            return o2.query_inverse(o1.query(BitVec(n, v))).value

        shifted = probe(0)
        perm = _perm_from_probe(lambda v: probe(v) ^ shifted, n)
        flags = tuple((shifted >> perm.mapping[i]) & 1 for i in range(n))
        return NegationMap(flags), perm
    if o1.has_inverse:
        def probe(v):
            return o1.query_inverse(o2.query(BitVec(n, v))).value

        mask = probe(0)
        rho = _perm_from_probe(lambda v: probe(v) ^ mask, n)
        return NegationMap.from_mask(n, mask), rho.inverse()
    raise InverseUnavailable("NP-I inverse route needs at least one inverse oracle")


def match_np_i_quantum(o1, o2, cfg: MatchConfig) -> tuple[NegationMap, PermutationMap]:
    """NP-I without inverses: pairwise |-> probes, then the N-I wire scan.

    Phase 1 marks wire b1 of the first circuit and candidate wire b2 of the
    second with |->; the output states are identical exactly when the input
    permutation carries b1 to b2, and orthogonal otherwise, so k silent swap
    tests accept a pair. Phase 2 reruns the N-I scan with the second oracle's
    wire initialization pre-permuted. At most 2k(n^2 + n) quantum queries.
    """
    n = _same_width(o1, o2)
    k = cfg.swap_test_rounds(n * n)
    rng = random.Random(cfg.seed)

    def probes(marker: WireInit) -> list:
        out = []
        for wire in range(n):
            inits = [WireInit.PLUS] * n
            inits[wire] = marker
            out.append(prepare(inits))
        return out

    minus_probes = probes(WireInit.MINUS)
    remaining = list(range(n))
    mapping: list[int | None] = [None] * n
    for b1 in range(n):
        found = None
        for b2 in remaining:
            matched = True
            for _ in range(k):
                s1 = o1.query_state(minus_probes[b1])
                s2 = o2.query_state(minus_probes[b2])
                if swap_test(s1, s2, rng) == 1:
                    matched = False
                    break
            if matched:
                found = b2
                break
        if found is None:
            raise NoPartnerError(f"wire {b1} matched no partner; promise violated?")
        mapping[b1] = found
        remaining.remove(found)
    perm = PermutationMap(tuple(mapping))  # type: ignore[arg-type]

    zero_probes = probes(WireInit.ZERO)
    flags = []
    for i in range(n):
        flag = 0
        for _ in range(k):
            s1 = o1.query_state(zero_probes[i])
            s2 = o2.query_state(zero_probes[perm.mapping[i]])
            if swap_test(s1, s2, rng) == 1:
                flag = 1
                break
        flags.append(flag)
    return NegationMap(tuple(flags)), perm


def match_p_n(o1, o2) -> tuple[PermutationMap, NegationMap]:
    """P-N: zero probe fixes the output negation, then reduce to P-I.

    The P-I stage runs against a virtual oracle that xors the recovered
    negation onto the reference circuit's outputs; it picks the inverse route
    when any inverse is available, else the one-hot route.
    """
    n = _same_width(o1, o2)
    zero = BitVec.zeros(n)
    mask = o1.query(zero).value ^ o2.query(zero).value
    corrected = _XorOutputOracle(o2, mask)
    if o1.has_inverse or corrected.has_inverse:
        perm = match_p_i_inv(o1, corrected)
    else:
        perm = match_p_i_onehot(o1, corrected)
    return perm, NegationMap.from_mask(n, mask)


def match_n_p_inv(o1, o2) -> tuple[NegationMap, PermutationMap]:
    """N-P: requires both inverses; run P-N on the role-swapped oracles."""
    if not (o1.has_inverse and o2.has_inverse):
        raise InverseUnavailable("N-P needs the inverses of both oracles")
    perm, neg = match_p_n(_SwappedOracle(o1), _SwappedOracle(o2))
    return neg, perm.inverse()


# ---------------------------------------------------------------------------
# witness verification
# ---------------------------------------------------------------------------


def _side_circuit(width: int, side: Side, neg, perm) -> Circuit:
    if side is Side.I:
        return identity(width)
    if side is Side.N:
        return neg_circuit(neg)
    if side is Side.P:
        return perm_circuit(perm)
    return neg_circuit(neg).then(perm_circuit(perm))


def witness_circuit(c2: Circuit, witness: MatchWitness) -> Circuit:
    """The composite block_X -> c2 -> block_Y the witness claims equals c1."""
    w = witness.width
    if w is not None and w != c2.width:
        raise WidthMismatch("witness width does not match circuit width")
    before = _side_circuit(c2.width, witness.equiv.input_side, witness.nu_x, witness.pi_x)
    after = _side_circuit(c2.width, witness.equiv.output_side, witness.nu_y, witness.pi_y)
    return before.then(c2).then(after)


def verify_witness(
    c1: Circuit,
    c2: Circuit,
    witness: MatchWitness,
    samples: int | None = None,
    seed: int = 0,
) -> bool:
    """Check a witness against the circuits.

    samples=None compares full truth tables; otherwise `samples` random
    inputs are checked, deterministically for a given seed.
    """
    if c1.width != c2.width:
        raise WidthMismatch("circuit widths differ")
    composed = witness_circuit(c2, witness)
    if samples is None:
        return composed.table() == c1.table()
    rng = random.Random(seed)
    size = 1 << c1.width
    for _ in range(samples):
        x = rng.randrange(size)
        if composed.eval_int(x) != c1.eval_int(x):
            return False
    return True


# ---------------------------------------------------------------------------
# brute-force reference matcher
# ---------------------------------------------------------------------------


def _perm_apply(mapping, x: int) -> int:
    y = 0
    for i, j in enumerate(mapping):
        y |= ((x >> i) & 1) << j
    return y


def _invert_mapping(mapping) -> tuple[int, ...]:
    inv = [0] * len(mapping)
    for i, j in enumerate(mapping):
        inv[j] = i
    return tuple(inv)


def _block_count(side: Side, w: int) -> int:
    if side is Side.I:
        return 1
    if side is Side.N:
        return 1 << w
    if side is Side.P:
        return math.factorial(w)
    return (1 << w) * math.factorial(w)


def _iter_blocks(side: Side, w: int):
    """Candidate (mask, mapping) blocks for one side, in a fixed order."""
    if side is Side.I:
        yield (None, None)
    elif side is Side.N:
        for mask in range(1 << w):
            yield (mask, None)
    elif side is Side.P:
        for p in permutations(range(w)):
            yield (None, p)
    else:
        for p in permutations(range(w)):
            for mask in range(1 << w):
                yield (mask, p)


def _block_fn(mask, mapping):
    """Block as a function: negate first, then permute."""
    if mapping is None and mask is None:
        return lambda v: v
    if mapping is None:
        return lambda v: v ^ mask
    if mask is None:
        return lambda v: _perm_apply(mapping, v)
    return lambda v: _perm_apply(mapping, v ^ mask)


def _block_inv_fn(mask, mapping):
    if mapping is None and mask is None:
        return lambda v: v
    if mapping is None:
        return lambda v: v ^ mask
    inv = _invert_mapping(mapping)
    if mask is None:
        return lambda v: _perm_apply(inv, v)
    return lambda v: _perm_apply(inv, v) ^ mask


def _fit_side(fn, w: int, side: Side):
    """Test whether fn is a valid block of the given side; return (mask, mapping).

    fn is checked over the whole input space, so a returned block is exact,
    not just consistent with a few probes.
    """
    size = 1 << w
    if side is Side.I:
        for v in range(size):
            if fn(v) != v:
                return None
        return (None, None)
    if side is Side.N:
        mask = fn(0)
        for v in range(size):
            if fn(v) != v ^ mask:
                return None
        return (mask, None)
    if side is Side.P:
        if fn(0) != 0:
            return None
        mapping = []
        for i in range(w):
            y = fn(1 << i)
            if y == 0 or y & (y - 1):
                return None
            mapping.append(y.bit_length() - 1)
        if len(set(mapping)) != w:
            return None
        for v in range(size):
            if fn(v) != _perm_apply(mapping, v):
                return None
        return (None, tuple(mapping))
    # NP block: v -> perm(v ^ mask)
    base = fn(0)
    mapping = []
    for i in range(w):
        d = fn(1 << i) ^ base
        if d == 0 or d & (d - 1):
            return None
        mapping.append(d.bit_length() - 1)
    if len(set(mapping)) != w:
        return None
    mask = 0
    for i in range(w):
        mask |= ((base >> mapping[i]) & 1) << i
    for v in range(size):
        if fn(v) != _perm_apply(mapping, v ^ mask):
            return None
    return (mask, tuple(mapping))


def _enumeration_cap(side: Side) -> int:
    if side is Side.I:
        return MAX_BRUTE_WIDTH
    if side is Side.N:
        return MAX_BRUTE_NEG_WIDTH
    if side is Side.P:
        return MAX_BRUTE_PERM_WIDTH
    return MAX_BRUTE_NP_WIDTH


def _witness_from_blocks(equiv: EquivType, w: int, block_in, block_out) -> MatchWitness:
    mask_in, map_in = block_in
    mask_out, map_out = block_out
    return MatchWitness(
        equiv=equiv,
        nu_x=NegationMap.from_mask(w, mask_in) if equiv.input_side.has_negation else None,
        pi_x=PermutationMap(map_in) if equiv.input_side.has_permutation else None,
        nu_y=NegationMap.from_mask(w, mask_out) if equiv.output_side.has_negation else None,
        pi_y=PermutationMap(map_out) if equiv.output_side.has_permutation else None,
    )


def brute_force_match(c1: Circuit, c2: Circuit, equiv: EquivType) -> MatchWitness | None:
    """Exhaustive reference matcher for any of the 16 equivalences.

    One side's blocks are enumerated (the cheaper of the two); the opposite
    block is then uniquely determined by the circuits' truth tables, so each
    candidate needs only a shape test. Complete: returns some valid witness
    whenever one exists, None otherwise.
    """
    if c1.width != c2.width:
        raise WidthMismatch("circuit widths differ")
    w = c1.width
    if w > MAX_BRUTE_WIDTH:
        raise WidthLimitExceeded(f"width {w} exceeds brute-force table limit {MAX_BRUTE_WIDTH}")

    in_count = _block_count(equiv.input_side, w)
    out_count = _block_count(equiv.output_side, w)
    enumerate_input = in_count <= out_count
    enum_side = equiv.input_side if enumerate_input else equiv.output_side
    cap = _enumeration_cap(enum_side)
    if w > cap:
        raise WidthLimitExceeded(
            f"width {w} exceeds brute-force cap {cap} for a {enum_side.value} side search"
        )

    tt1 = c1.table()
    tt2 = c2.table()
    tt2_inv = [0] * len(tt2)
    for v, u in enumerate(tt2):
        tt2_inv[u] = v

    if enumerate_input:
        solve_side = equiv.output_side
        for mask, mapping in _iter_blocks(equiv.input_side, w):
            a_inv = _block_inv_fn(mask, mapping)

            def fn(u, a_inv=a_inv):
                return tt1[a_inv(tt2_inv[u])]

            fit = _fit_side(fn, w, solve_side)
            if fit is not None:
                return _witness_from_blocks(equiv, w, (mask, mapping), fit)
        return None

    solve_side = equiv.input_side
    for mask, mapping in _iter_blocks(equiv.output_side, w):
        b_inv = _block_inv_fn(mask, mapping)

        def fn(v, b_inv=b_inv):
            return tt2_inv[b_inv(tt1[v])]

        fit = _fit_side(fn, w, solve_side)
        if fit is not None:
            return _witness_from_blocks(equiv, w, fit, (mask, mapping))
    return None
