"""Oracle query model: counters, inverse gating, state queries."""
import random
import threading

import pytest

from revmatch import (
    BitVec,
    Circuit,
    InverseUnavailable,
    Oracle,
    WidthMismatch,
    WireInit,
    basis_state,
    not_gate,
    prepare,
    random_circuit,
)


def make_oracle(n=4, gates=8, seed=0, with_inverse=False) -> Oracle:
    return Oracle.from_circuit(random_circuit(n, gates, seed), with_inverse=with_inverse)


def test_counters_start_at_zero_and_accumulate():
    o = make_oracle()
    assert o.counts.classical == 0
    o.query(BitVec(4, 3))
    o.query(BitVec(4, 5))
    assert o.counts.classical == 2
    assert o.counts.inverse == 0 and o.counts.quantum == 0


def test_query_matches_direct_eval():
    c = random_circuit(5, 10, 2)
    o = Oracle(c)
    for x in range(32):
        assert o.query(BitVec(5, x)).value == c.eval_int(x)


def test_inverse_roundtrip_and_counter():
    o = make_oracle(with_inverse=True)
    x = BitVec(4, 9)
    assert o.query_inverse(o.query(x)) == x
    assert o.query(o.query_inverse(x)) == x
    assert o.counts.inverse == 2 and o.counts.classical == 2


def test_inverse_unavailable():
    o = make_oracle(with_inverse=False)
    assert not o.has_inverse
    with pytest.raises(InverseUnavailable):
        o.query_inverse(BitVec(4, 0))


def test_construction_rejects_wrong_inverse():
    c = random_circuit(4, 8, 3)
    bogus = Circuit(4, [not_gate(0)])
    with pytest.raises(ValueError):
        Oracle(c, bogus)


def test_sampled_inverse_check_above_exhaustive_width():
    c = random_circuit(11, 20, 4)
    Oracle(c, c.invert())  # sampled validation path must accept
    with pytest.raises(ValueError):
        Oracle(c, Circuit(11, [not_gate(0)]).then(c.invert()))


def test_query_state_classical_embedding():
    c = random_circuit(4, 8, 5)
    o = Oracle(c)
    s = basis_state(BitVec(4, 6))
    out = o.query_state(s)
    assert out.signs == {c.eval_int(6): 1}
    assert o.counts.quantum == 1


def test_all_plus_state_is_fixed_point():
    # Full support with uniform signs maps onto itself under any bijection.
    o = make_oracle(n=5, gates=12, seed=6)
    s = prepare([WireInit.PLUS] * 5)
    assert o.query_state(s) == s


def test_query_state_counts_per_call_even_when_cached():
    o = make_oracle(n=3, gates=5, seed=7)
    s = prepare([WireInit.ZERO, WireInit.PLUS, WireInit.PLUS])
    out1 = o.query_state(s)
    out2 = o.query_state(s)
    assert out1 == out2
    assert o.counts.quantum == 2


def test_width_mismatch_errors():
    o = make_oracle()
    with pytest.raises(WidthMismatch):
        o.query(BitVec(3, 0))
    with pytest.raises(WidthMismatch):
        o.query_state(prepare([WireInit.ZERO] * 3))


def test_concurrent_queries_lose_no_counts():
    o = make_oracle(n=6, gates=10, seed=8)

    def worker():
        rng = random.Random(threading.get_ident())
        for _ in range(200):
            o.query(BitVec(6, rng.randrange(64)))

    threads = [threading.Thread(target=worker) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert o.counts.classical == 8 * 200
