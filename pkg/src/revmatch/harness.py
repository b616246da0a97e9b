"""Experiment driver: planted instances, matcher dispatch, and benchmarks.

Instances are generated from a known witness so that recovery can be judged
without ambiguity: the reference circuit is random, the witness maps are
sampled uniformly, and the subject circuit is composed from both. The
dispatcher picks the cheapest supported algorithm for an equivalence given
which inverse oracles exist; equivalences with no polynomial-query algorithm
raise NoAlgorithmError unless brute-force search is requested explicitly.
"""
from __future__ import annotations

import csv
import io
import random
import statistics
import time
from dataclasses import dataclass, replace

from .circuit import (
    BitVec,
    Circuit,
    NegationMap,
    PermutationMap,
    identity,
    neg_circuit,
    perm_circuit,
    random_circuit,
)
from .errors import AmbiguityError, NoAlgorithmError
from .matchers import (
    EquivType,
    HARD_EQUIVS,
    MatchConfig,
    MatchWitness,
    Side,
    brute_force_match,
    match_i_n,
    match_i_np_inv,
    match_i_np_rand,
    match_i_p_inv,
    match_i_p_rand,
    match_n_i_inv,
    match_n_i_quantum,
    match_n_p_inv,
    match_np_i_inv,
    match_np_i_quantum,
    match_p_i_inv,
    match_p_i_onehot,
    match_p_n,
    verify_witness,
)
from .oracle import Oracle

EXHAUSTIVE_VERIFY_WIDTH = 10
SAMPLED_VERIFY_COUNT = 256
AMBIGUITY_RETRIES = 3


@dataclass(frozen=True)
class Instance:
    """A matching instance: circuits, optional inverses, optionally a planted witness."""

    equiv: EquivType
    c1: Circuit
    c2: Circuit
    inv1: Circuit | None = None
    inv2: Circuit | None = None
    planted: MatchWitness | None = None
    seed: int = 0
    gate_count: int = 0

    @property
    def n(self) -> int:
        return self.c2.width

    def oracles(self) -> tuple[Oracle, Oracle]:
        """Fresh zero-counter oracles over the instance circuits."""
        return (
            Oracle(self.c1, self.inv1, validate=False),
            Oracle(self.c2, self.inv2, validate=False),
        )


@dataclass(frozen=True)
class BenchRecord:
    """Outcome and query accounting of one matcher run."""

    equiv: str
    n: int
    algorithm: str
    trial: int
    c1_classical: int
    c1_inverse: int
    c1_quantum: int
    c2_classical: int
    c2_inverse: int
    c2_quantum: int
    success: bool
    wall_time_s: float


CSV_COLUMNS = (
    "equiv",
    "n",
    "algorithm",
    "trial",
    "c1_classical",
    "c1_inverse",
    "c1_quantum",
    "c2_classical",
    "c2_inverse",
    "c2_quantum",
    "success",
)


def _sample_side(side: Side, n: int, rng: random.Random):
    neg = NegationMap.random(n, rng) if side.has_negation else None
    perm = PermutationMap.random(n, rng) if side.has_permutation else None
    return neg, perm


def _side_circuit(n: int, neg, perm) -> Circuit:
    c = identity(n)
    if neg is not None:
        c = c.then(neg_circuit(neg))
    if perm is not None:
        c = c.then(perm_circuit(perm))
    return c


def gen_instance(
    equiv: EquivType | str,
    n: int,
    gate_count: int,
    seed: int,
    with_inverse1: bool = False,
    with_inverse2: bool = False,
    check: bool = True,
) -> Instance:
    """Plant a random instance of the given equivalence.

    The reference circuit is random, witness maps are uniform, and the
    subject circuit is the exact composition, so the planted witness is
    valid by construction; `check` re-verifies it (exhaustively up to width
    10, sampled above).
    """
    if isinstance(equiv, str):
        equiv = EquivType.parse(equiv)
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    c2 = random_circuit(n, gate_count, rng)
    nu_x, pi_x = _sample_side(equiv.input_side, n, rng)
    nu_y, pi_y = _sample_side(equiv.output_side, n, rng)
    planted = MatchWitness(equiv=equiv, nu_x=nu_x, pi_x=pi_x, nu_y=nu_y, pi_y=pi_y)
    c1 = _side_circuit(n, nu_x, pi_x).then(c2).then(_side_circuit(n, nu_y, pi_y))
    inst = Instance(
        equiv=equiv,
        c1=c1,
        c2=c2,
        inv1=c1.invert() if with_inverse1 else None,
        inv2=c2.invert() if with_inverse2 else None,
        planted=planted,
        seed=seed,
        gate_count=gate_count,
    )
    if check:
        samples = None if n <= EXHAUSTIVE_VERIFY_WIDTH else SAMPLED_VERIFY_COUNT
        if not verify_witness(c1, c2, planted, samples=samples, seed=seed):
            raise AssertionError("planted witness failed verification")
    return inst


def select_algorithm(
    equiv: EquivType | str,
    has_inv1: bool,
    has_inv2: bool,
    mode: str = "auto",
) -> str:
    """Pick the algorithm for an equivalence and inverse-availability cell.

    auto prefers the inverse-assisted classical route, then the inverse-free
    classical one, then quantum; classical and quantum restrict the choice;
    brute always selects exhaustive search. Raises NoAlgorithmError for the
    hard equivalences (and for cells with no matching paradigm).
    """
    if isinstance(equiv, str):
        equiv = EquivType.parse(equiv)
    if mode not in ("auto", "classical", "quantum", "brute"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "brute":
        return "brute"
    if equiv in HARD_EQUIVS:
        raise NoAlgorithmError(
            f"{equiv} has no polynomial-query algorithm; rerun with mode='brute'"
        )
    any_inv = has_inv1 or has_inv2
    label = equiv.label
    if mode == "quantum":
        if label == "N-I":
            return "n_i_quantum"
        if label == "NP-I":
            return "np_i_quantum"
        raise NoAlgorithmError(f"no quantum algorithm for {label}")
    classical_only = mode == "classical"
    if label == "I-I":
        return "trivial"
    if label == "I-N":
        return "i_n"
    if label == "I-P":
        return "i_p_inv" if any_inv else "i_p_rand"
    if label == "I-NP":
        return "i_np_inv" if any_inv else "i_np_rand"
    if label == "P-I":
        return "p_i_inv" if any_inv else "p_i_onehot"
    if label == "P-N":
        return "p_n_inv" if any_inv else "p_n_onehot"
    if label == "N-I":
        if any_inv:
            return "n_i_inv"
        if classical_only:
            raise NoAlgorithmError("N-I without inverses is exponential classically")
        return "n_i_quantum"
    if label == "NP-I":
        if any_inv:
            return "np_i_inv"
        if classical_only:
            raise NoAlgorithmError("NP-I without inverses has no classical algorithm here")
        return "np_i_quantum"
    if label == "N-P":
        if has_inv1 and has_inv2:
            return "n_p_inv"
        raise NoAlgorithmError("N-P needs both inverse circuits")
    raise NoAlgorithmError(f"no algorithm for {label}")  # pragma: no cover


def _run_named(algorithm: str, inst: Instance, o1: Oracle, o2: Oracle, cfg: MatchConfig):
    equiv = inst.equiv
    if algorithm == "trivial":
        return MatchWitness(equiv=equiv)
    if algorithm == "brute":
        return brute_force_match(inst.c1, inst.c2, equiv)
    if algorithm == "i_n":
        return MatchWitness(equiv=equiv, nu_y=match_i_n(o1, o2))
    if algorithm == "i_p_inv":
        return MatchWitness(equiv=equiv, pi_y=match_i_p_inv(o1, o2))
    if algorithm == "i_p_rand":
        return MatchWitness(equiv=equiv, pi_y=match_i_p_rand(o1, o2, cfg))
    if algorithm == "i_np_inv":
        neg, perm = match_i_np_inv(o1, o2)
        return MatchWitness(equiv=equiv, nu_y=neg, pi_y=perm)
    if algorithm == "i_np_rand":
        neg, perm = match_i_np_rand(o1, o2, cfg)
        return MatchWitness(equiv=equiv, nu_y=neg, pi_y=perm)
    if algorithm == "p_i_inv":
        return MatchWitness(equiv=equiv, pi_x=match_p_i_inv(o1, o2))
    if algorithm == "p_i_onehot":
        return MatchWitness(equiv=equiv, pi_x=match_p_i_onehot(o1, o2))
    if algorithm in ("p_n_inv", "p_n_onehot"):
        perm, neg = match_p_n(o1, o2)
        return MatchWitness(equiv=equiv, pi_x=perm, nu_y=neg)
    if algorithm == "n_i_inv":
        return MatchWitness(equiv=equiv, nu_x=match_n_i_inv(o1, o2))
    if algorithm == "n_i_quantum":
        return MatchWitness(equiv=equiv, nu_x=match_n_i_quantum(o1, o2, cfg))
    if algorithm == "np_i_inv":
        neg, perm = match_np_i_inv(o1, o2)
        return MatchWitness(equiv=equiv, nu_x=neg, pi_x=perm)
    if algorithm == "np_i_quantum":
        neg, perm = match_np_i_quantum(o1, o2, cfg)
        return MatchWitness(equiv=equiv, nu_x=neg, pi_x=perm)
    if algorithm == "n_p_inv":
        neg, perm = match_n_p_inv(o1, o2)
        return MatchWitness(equiv=equiv, nu_x=neg, pi_y=perm)
    raise NoAlgorithmError(f"unknown algorithm {algorithm!r}")  # pragma: no cover


def run_match(
    inst: Instance,
    cfg: MatchConfig | None = None,
    mode: str = "auto",
    trial: int = 0,
):
    """Dispatch, run, and verify one matcher; returns (witness, record).

    Sequence-collision ambiguities are retried with up to three fresh seeds;
    query counters keep accumulating across retries so the accounting stays
    honest. The witness is None when matching failed outright.
    """
    cfg = cfg or MatchConfig()
    algorithm = select_algorithm(inst.equiv, inst.inv1 is not None, inst.inv2 is not None, mode)
    o1, o2 = inst.oracles()
    start = time.perf_counter()
    witness = None
    attempt_cfg = cfg
    for attempt in range(1 + AMBIGUITY_RETRIES):
        try:
            witness = _run_named(algorithm, inst, o1, o2, attempt_cfg)
            break
        except AmbiguityError:
            attempt_cfg = replace(attempt_cfg, seed=attempt_cfg.seed + 0x9E3779B1 + attempt)
    elapsed = time.perf_counter() - start
    success = False
    if witness is not None:
        samples = None if inst.n <= EXHAUSTIVE_VERIFY_WIDTH else SAMPLED_VERIFY_COUNT
        success = verify_witness(inst.c1, inst.c2, witness, samples=samples, seed=cfg.seed)
    k1, k2 = o1.counts, o2.counts
    record = BenchRecord(
        equiv=inst.equiv.label,
        n=inst.n,
        algorithm=algorithm,
        trial=trial,
        c1_classical=k1.classical,
        c1_inverse=k1.inverse,
        c1_quantum=k1.quantum,
        c2_classical=k2.classical,
        c2_inverse=k2.inverse,
        c2_quantum=k2.quantum,
        success=success,
        wall_time_s=elapsed,
    )
    return witness, record


@dataclass(frozen=True)
class CollisionStats:
    """Birthday-style collision search cost over a batch of trials."""

    n: int
    trials: int
    median_queries: float
    mean_queries: float
    min_queries: int
    max_queries: int


def collision_trial(n: int, gate_count: int, rng: random.Random) -> int:
    """Queries to the second oracle until one of its outputs hits a recorded one.

    Models the inverse-free classical attack on input-negation recovery:
    alternate fresh distinct probes of both circuits, recording the first
    circuit's outputs, until the second circuit's output collides. Returns
    the number of second-circuit queries spent.
    """
    c2 = random_circuit(n, gate_count, rng)
    neg = NegationMap.random(n, rng)
    c1 = neg_circuit(neg).then(c2)
    o1 = Oracle(c1, validate=False)
    o2 = Oracle(c2, validate=False)
    size = 1 << n
    used1: set[int] = set()
    used2: set[int] = set()
    recorded: dict[int, int] = {}
    while True:
        if len(used1) < size:
            x1 = rng.randrange(size)
            while x1 in used1:
                x1 = rng.randrange(size)
            used1.add(x1)
            recorded[o1.query(BitVec(n, x1)).value] = x1
        x2 = rng.randrange(size)
        while x2 in used2:
            x2 = rng.randrange(size)
        used2.add(x2)
        y2 = o2.query(BitVec(n, x2)).value
        if y2 in recorded:
            inferred = recorded[y2] ^ x2
            assert inferred == neg.mask, "collision did not reveal the planted negation"
            return o2.counts.classical


def collision_bench(n: int, trials: int, seed: int, gate_count: int | None = None) -> CollisionStats:
    """Median/mean collision cost at one width; deterministic for a seed."""
    rng = random.Random(seed)
    if gate_count is None:
        gate_count = 2 * n + 2
    counts = [collision_trial(n, gate_count, rng) for _ in range(trials)]
    return CollisionStats(
        n=n,
        trials=trials,
        median_queries=float(statistics.median(counts)),
        mean_queries=statistics.fmean(counts),
        min_queries=min(counts),
        max_queries=max(counts),
    )


def report(records, timing: bool = False) -> tuple[str, str]:
    """Render records as (csv_text, summary_text).

    Column order is fixed; timing is off by default so reruns with the same
    seed produce byte-identical CSV.
    """
    columns = CSV_COLUMNS + (("wall_time_s",) if timing else ())
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in records:
        row = [
            r.equiv,
            r.n,
            r.algorithm,
            r.trial,
            r.c1_classical,
            r.c1_inverse,
            r.c1_quantum,
            r.c2_classical,
            r.c2_inverse,
            r.c2_quantum,
            int(r.success),
        ]
        if timing:
            row.append(f"{r.wall_time_s:.6f}")
        writer.writerow(row)

    groups: dict[tuple, list[BenchRecord]] = {}
    for r in records:
        groups.setdefault((r.equiv, r.n, r.algorithm), []).append(r)
    lines = []
    for (equiv, n, algorithm), rs in sorted(groups.items()):
        ok = sum(1 for r in rs if r.success)
        queries = [
            r.c1_classical + r.c1_inverse + r.c1_quantum
            + r.c2_classical + r.c2_inverse + r.c2_quantum
            for r in rs
        ]
        lines.append(
            f"{equiv} n={n} {algorithm}: {ok}/{len(rs)} ok, "
            f"mean queries {statistics.fmean(queries):.1f}"
        )
    summary = "\n".join(lines) + ("\n" if lines else "")
    return buf.getvalue(), summary
