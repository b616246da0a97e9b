"""Reader and writer for a line-based .real circuit subset.

Grammar::

    .version 2.0
    .numvars N
    .variables v0 v1 ...
    .begin
    t<K> <tok> ... <tok>      # K tokens; last is the target, the rest are
    .end                      # controls, '-' prefix for negative polarity

Lines starting with '#' are comments. Rewire elements are expanded on write
into CNOT swap triples, so written files contain MCT gates only. Gate order
and control polarities survive a write/parse round trip exactly.
"""
from __future__ import annotations

from .circuit import Circuit, ControlLine, MctGate, Rewire, cnot
from .errors import RealFormatError

_IDENT_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_")


def _swap_sequence(perm) -> list[tuple[int, int]]:
    """Transpositions that, applied in order, realize the wire permutation."""
    n = perm.width
    # pos_of[s] = current position of the value that started on wire s
    pos_of = list(range(n))
    at = list(range(n))  # at[p] = source currently sitting on wire p
    inv = perm.inverse().mapping
    swaps = []
    for p in range(n):
        want = inv[p]
        q = pos_of[want]
        if q != p:
            swaps.append((p, q))
            other = at[p]
            at[p], at[q] = want, other
            pos_of[want], pos_of[other] = p, q
    return swaps


def write_real(circuit: Circuit, var_names=None) -> str:
    """Serialize a circuit; rewires become CNOT swap triples."""
    n = circuit.width
    if var_names is None:
        var_names = [f"x{i}" for i in range(n)]
    else:
        var_names = list(var_names)
        if len(var_names) != n:
            raise ValueError(f"need {n} variable names, got {len(var_names)}")
    lines = [".version 2.0", f".numvars {n}", ".variables " + " ".join(var_names), ".begin"]

    def gate_line(gate: MctGate) -> str:
        toks = []
        for c in gate.controls:
            toks.append(("" if c.positive else "-") + var_names[c.wire])
        toks.append(var_names[gate.target])
        return f"t{len(toks)} " + " ".join(toks)

    for el in circuit.elements:
        if isinstance(el, MctGate):
            lines.append(gate_line(el))
        else:
            for a, b in _swap_sequence(el.perm):
                lines.append(gate_line(cnot(a, b)))
                lines.append(gate_line(cnot(b, a)))
                lines.append(gate_line(cnot(a, b)))
    lines.append(".end")
    return "\n".join(lines) + "\n"


def parse_real(text: str) -> Circuit:
    """Parse the .real subset; raises RealFormatError on malformed input."""
    numvars = None
    names: dict[str, int] = {}
    in_body = False
    ended = False
    gates = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        def err(msg: str):
            raise RealFormatError(f"line {lineno}: {msg}")

        if ended:
            err("content after .end")
        if line.startswith("."):
            parts = line.split()
            key = parts[0]
            if key == ".version":
                continue
            elif key == ".numvars":
                if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                    err("malformed .numvars")
                numvars = int(parts[1])
            elif key == ".variables":
                if numvars is None:
                    err(".variables before .numvars")
                if len(parts) - 1 != numvars:
                    err(f"expected {numvars} variable names, got {len(parts) - 1}")
                for i, name in enumerate(parts[1:]):
                    if not name or not set(name) <= _IDENT_OK:
                        err(f"bad variable name {name!r}")
                    if name in names:
                        err(f"duplicate variable name {name!r}")
                    names[name] = i
            elif key == ".begin":
                if numvars is None or not names:
                    err(".begin before complete header")
                in_body = True
            elif key == ".end":
                if not in_body:
                    err(".end outside body")
                ended = True
            else:
                err(f"unknown directive {key}")
            continue

        if not in_body:
            err(f"gate line outside .begin/.end: {line!r}")
        toks = line.split()
        head = toks[0]
        if not head.startswith("t") or not head[1:].isdigit():
            err(f"malformed gate head {head!r}")
        k = int(head[1:])
        if k != len(toks) - 1:
            err(f"gate head says {k} tokens, line has {len(toks) - 1}")
        if k < 1:
            err("gate needs at least a target")
        controls = []
        seen = set()
        for tok in toks[1:-1]:
            positive = True
            name = tok
            if tok.startswith("-"):
                positive = False
                name = tok[1:]
            if name not in names:
                err(f"unknown variable {name!r}")
            wire = names[name]
            if wire in seen:
                err(f"duplicate control {name!r}")
            seen.add(wire)
            controls.append(ControlLine(wire, positive))
        ttok = toks[-1]
        if ttok.startswith("-"):
            err("target cannot carry a polarity prefix")
        if ttok not in names:
            err(f"unknown variable {ttok!r}")
        target = names[ttok]
        if target in seen:
            err(f"control equals target {ttok!r}")
        gates.append(MctGate(target, tuple(controls)))

    if numvars is None:
        raise RealFormatError("missing .numvars header")
    if not ended:
        raise RealFormatError("missing .end")
    return Circuit(numvars, gates)
