"""Text format round trips and grammar errors."""
import random

import pytest

from revmatch import (
    Circuit,
    PermutationMap,
    RealFormatError,
    Rewire,
    mct,
    not_gate,
    parse_real,
    perm_circuit,
    random_circuit,
    write_real,
)

EXAMPLE = """\
.version 2.0
.numvars 3
.variables a b c
# wide gate then a NOT
.begin
t3 a -b c
t1 b
.end
"""


def test_parse_example_circuit():
    c = parse_real(EXAMPLE)
    assert c.width == 3
    assert len(c.elements) == 2
    # matches the evaluation of the hand-built example circuit
    reference = Circuit(3, [mct(2, positive=[0], negative=[1]), not_gate(1)])
    assert c.table() == reference.table()


def test_single_not_gate():
    c = parse_real(".version 2.0\n.numvars 1\n.variables a\n.begin\nt1 a\n.end\n")
    assert c.table() == [1, 0]


def test_write_then_parse_identity():
    rng = random.Random(31)
    for n in (1, 3, 6):
        c = random_circuit(n, 10, rng)
        text = write_real(c)
        again = parse_real(text)
        assert again.elements == c.elements
        assert write_real(again) == text


def test_rewire_expands_to_cnot_triples():
    perm = PermutationMap((1, 2, 0))
    c = perm_circuit(perm)
    text = write_real(c)
    body = [l for l in text.splitlines() if l.startswith("t")]
    assert len(body) % 3 == 0 and body  # swap triples only
    assert all(l.startswith("t2 ") for l in body)
    parsed = parse_real(text)
    assert parsed.table() == c.table()


def test_rewire_roundtrip_random():
    rng = random.Random(5)
    for n in (2, 4, 7):
        perm = PermutationMap.random(n, rng)
        mixed = Circuit(
            n,
            list(random_circuit(n, 4, rng).elements)
            + [Rewire(perm)]
            + list(random_circuit(n, 4, rng).elements),
        )
        assert parse_real(write_real(mixed)).table() == mixed.table()


def test_custom_variable_names():
    c = Circuit(2, [mct(1, positive=[0])])
    text = write_real(c, var_names=["p", "q"])
    assert "t2 p q" in text
    assert parse_real(text).table() == c.table()


@pytest.mark.parametrize(
    "text, fragment",
    [
        (".numvars x\n.begin\n.end\n", "numvars"),
        (".numvars 2\n.variables a\n.begin\n.end\n", "expected 2"),
        (".numvars 1\n.variables a\n.begin\nt1 z\n.end\n", "unknown variable"),
        (".numvars 2\n.variables a b\n.begin\nt3 a a b\n.end\n", "duplicate control"),
        (".numvars 2\n.variables a b\n.begin\nt2 a a\n.end\n", "control equals target"),
        (".numvars 2\n.variables a b\n.begin\nt3 a b\n.end\n", "says 3 tokens"),
        (".numvars 2\n.variables a b\n.begin\nt1 -b\n.end\n", "polarity"),
        (".numvars 2\n.variables a b\n.begin\nx2 a b\n.end\n", "gate head"),
        (".variables a\n.numvars 1\n.begin\n.end\n", ".variables before"),
        (".numvars 1\n.variables a\nt1 a\n.begin\n.end\n", "outside"),
        (".numvars 1\n.variables a\n.begin\nt1 a\n", "missing .end"),
        ("", "missing .numvars"),
    ],
)
def test_malformed_inputs(text, fragment):
    with pytest.raises(RealFormatError, match=fragment):
        parse_real(text)
