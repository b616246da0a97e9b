"""CNF-to-matching reduction builders and assignment extraction.

A CNF formula is compiled into a pair of reversible circuits whose N-N
(respectively P-P, after a dual-rail rewrite) matching witnesses encode the
formula's satisfying assignment. Wire layout, top to bottom: one wire per
formula variable, one ancilla wire per clause, then two scratch wires. The
first circuit leaves every wire unchanged except the last, which picks up

    z XOR ( formula(x) AND all-clause-ancillas-zero )

and the second circuit is a single wide gate computing a fixed comparison
function into the same wire. Extraction reads the variable-wire part of a
recovered witness and validates the candidate against the formula directly,
so a bogus witness degrades to an "unsatisfiable" verdict rather than a
wrong answer.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, mct, not_gate
from .errors import DimacsError, WidthLimitExceeded, WidthMismatch, WitnessShapeError
from .matchers import EquivType, MatchWitness

MAX_VERIFY_WIDTH = 16
MAX_SAT_ENUM_VARS = 20


@dataclass(frozen=True)
class Cnf:
    """CNF formula with DIMACS-style signed literals over variables 1..num_vars."""

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise ValueError("formula needs at least one variable")
        clauses = tuple(tuple(c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        for ci, clause in enumerate(clauses):
            if not clause:
                raise ValueError(f"clause {ci} is empty")
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range in clause {ci}")
                if abs(lit) in seen:
                    raise ValueError(f"variable {abs(lit)} repeats in clause {ci}")
                seen.add(abs(lit))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    def evaluate(self, assignment) -> bool:
        """Truth value under an assignment given as 0/1 values for vars 1..n."""
        if len(assignment) != self.num_vars:
            raise ValueError("assignment length does not match variable count")
        for clause in self.clauses:
            if not any(
                assignment[abs(lit) - 1] == (1 if lit > 0 else 0) for lit in clause
            ):
                return False
        return True


def parse_dimacs(text: str) -> Cnf:
    """Parse DIMACS CNF: 'c' comments, 'p cnf V C' header, 0-terminated clauses."""
    num_vars = None
    declared = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 1 or declared < 0:
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: zero-length clause")
                clauses.append(tuple(current))
                current = []
            else:
                if abs(lit) > num_vars:
                    raise DimacsError(f"line {lineno}: literal {lit} out of range")
                current.append(lit)
    if current:
        raise DimacsError("unterminated final clause")
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    return Cnf(num_vars, tuple(clauses))


def write_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {cnf.num_clauses}"]
    for clause in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ReductionLayout:
    """Wire roles of a reduction instance, in top-to-bottom diagram order."""

    x_wires: tuple[int, ...]
    y_wires: tuple[int, ...]
    a_wires: tuple[int, ...]
    b_wire: int
    z_wire: int

    @property
    def width(self) -> int:
        return len(self.x_wires) + len(self.y_wires) + len(self.a_wires) + 2

    def var_wire(self, var: int) -> int:
        """Wire carrying formula variable `var` (1-based; dual-rail vars hit y)."""
        nx = len(self.x_wires)
        if 1 <= var <= nx:
            return self.x_wires[var - 1]
        if nx < var <= nx + len(self.y_wires):
            return self.y_wires[var - nx - 1]
        raise ValueError(f"variable {var} outside layout")

    def to_dict(self) -> dict:
        return {
            "x_wires": list(self.x_wires),
            "y_wires": list(self.y_wires),
            "a_wires": list(self.a_wires),
            "b_wire": self.b_wire,
            "z_wire": self.z_wire,
        }

    @classmethod
    def from_dict(cls, data: dict) -> ReductionLayout:
        return cls(
            tuple(data["x_wires"]),
            tuple(data["y_wires"]),
            tuple(data["a_wires"]),
            data["b_wire"],
            data["z_wire"],
        )


def _layout(var_count: int, clause_count: int, dual_vars: int = 0) -> ReductionLayout:
    x = tuple(range(var_count))
    y = tuple(range(var_count, var_count + dual_vars))
    base = var_count + dual_vars
    a = tuple(range(base, base + clause_count))
    return ReductionLayout(x, y, a, base + clause_count, base + clause_count + 1)


def clause_encoder(clause, clause_index: int, layout: ReductionLayout):
    """Gate pair flipping a clause ancilla by the clause's truth value.

    The wide gate fires exactly when every literal is false (a positive
    literal contributes a negative control and vice versa); the trailing NOT
    turns that into xor-with-clause-value.
    """
    target = layout.a_wires[clause_index]
    positive = []
    negative = []
    for lit in clause:
        wire = layout.var_wire(abs(lit))
        if lit > 0:
            negative.append(wire)
        else:
            positive.append(wire)
    return mct(target, positive=positive, negative=negative), not_gate(target)


def build_u_phi(cnf: Cnf, layout: ReductionLayout) -> Circuit:
    """Concatenated clause encoders; 2m elements, self-inverse."""
    gates = []
    for i, clause in enumerate(cnf.clauses):
        wide, flip = clause_encoder(clause, i, layout)
        gates.append(wide)
        gates.append(flip)
    return Circuit(layout.width, gates)


def _encode_formula(cnf: Cnf, layout: ReductionLayout) -> Circuit:
    """The satisfiability-encoding circuit over a given layout."""
    u = build_u_phi(cnf, layout).elements
    gate_b = mct(layout.b_wire, negative=layout.a_wires)
    gate_z = mct(layout.z_wire, positive=tuple(layout.a_wires) + (layout.b_wire,))
    elements = (gate_b,) + u + (gate_z,) + u + (gate_b,) + u + (gate_z,) + u
    return Circuit(layout.width, elements)


def build_nn_instance(cnf: Cnf):
    """Circuit pair whose N-N witnesses encode a satisfying assignment.

    Width n+m+2; the first circuit has exactly 8m+4 elements (NOT gates
    counted); the second is a single wide gate with positive controls on the
    variable wires and negative controls on the clause ancillas.
    """
    if not cnf.clauses:
        raise ValueError("empty formula")
    layout = _layout(cnf.num_vars, cnf.num_clauses)
    c1 = _encode_formula(cnf, layout)
    c2 = Circuit(
        layout.width,
        (mct(layout.z_wire, positive=layout.x_wires, negative=layout.a_wires),),
    )
    return c1, c2, layout


def dual_rail(cnf: Cnf) -> Cnf:
    """Add a complement variable per original one, pinned by two clauses each.

    The result has 2n variables and m+2n clauses and is satisfiable exactly
    when the input is; satisfying assignments correspond one to one.
    """
    n = cnf.num_vars
    clauses = list(cnf.clauses)
    for j in range(1, n + 1):
        clauses.append((j, n + j))
        clauses.append((-j, -(n + j)))
    return Cnf(2 * n, tuple(clauses))


def build_pp_instance(cnf: Cnf):
    """Circuit pair whose P-P witnesses encode a satisfying assignment.

    The formula is first dual-railed; width is 4n+m+2. The comparison
    circuit's single gate has positive controls on the first n wires and
    negative controls on everything else except the b scratch wire and the
    z target.
    """
    if not cnf.clauses:
        raise ValueError("empty formula")
    prime = dual_rail(cnf)
    layout = _layout(cnf.num_vars, prime.num_clauses, dual_vars=cnf.num_vars)
    c1 = _encode_formula(prime, layout)
    c2 = Circuit(
        layout.width,
        (
            mct(
                layout.z_wire,
                positive=layout.x_wires,
                negative=tuple(layout.y_wires) + tuple(layout.a_wires),
            ),
        ),
    )
    return c1, c2, layout


def verify_encoding(cnf: Cnf, c1: Circuit, layout: ReductionLayout) -> bool:
    """Exhaustively check the encoding contract of a built first circuit.

    Every wire except the last must pass through unchanged; the last must
    carry z xor (formula value and all clause ancillas zero). Pass the same
    formula the circuit was built from (the dual-railed one for P-P).
    """
    width = layout.width
    if width > MAX_VERIFY_WIDTH:
        raise WidthLimitExceeded(f"width {width} exceeds verify limit {MAX_VERIFY_WIDTH}")
    if c1.width != width:
        raise WidthMismatch("circuit width does not match layout")
    nvars = len(layout.x_wires) + len(layout.y_wires)
    if nvars != cnf.num_vars:
        raise ValueError("layout variable wires do not match formula")
    a_mask = 0
    for w in layout.a_wires:
        a_mask |= 1 << w
    var_wires = [layout.var_wire(v) for v in range(1, nvars + 1)]
    z_bit = 1 << layout.z_wire
    for v in range(1 << width):
        assignment = [(v >> w) & 1 for w in var_wires]
        f = 1 if (v & a_mask) == 0 and cnf.evaluate(assignment) else 0
        if c1.eval_int(v) != v ^ (f * z_bit):
            return False
    return True


def extract_assignment_nn(cnf: Cnf, witness: MatchWitness):
    """Assignment candidate from an N-N witness; None if it does not satisfy.

    A variable wire whose input negation flag is set was acting as a negative
    control, so the variable must be 0; otherwise it must be 1.
    """
    if witness.equiv != EquivType.parse("N-N"):
        raise WitnessShapeError(f"expected an N-N witness, got {witness.equiv}")
    expected_width = cnf.num_vars + cnf.num_clauses + 2
    if witness.width != expected_width:
        raise WitnessShapeError(
            f"witness width {witness.width} does not match instance width {expected_width}"
        )
    assignment = [1 - witness.nu_x.flags[i] for i in range(cnf.num_vars)]
    return assignment if cnf.evaluate(assignment) else None


def extract_assignment_pp(cnf: Cnf, witness: MatchWitness):
    """Assignment candidate from a P-P witness; None if it does not satisfy.

    A variable is 1 exactly when the input permutation sends its wire into
    the positive-control region (the first n wire positions).
    """
    if witness.equiv != EquivType.parse("P-P"):
        raise WitnessShapeError(f"expected a P-P witness, got {witness.equiv}")
    n = cnf.num_vars
    expected_width = 4 * n + cnf.num_clauses + 2
    if witness.width != expected_width:
        raise WitnessShapeError(
            f"witness width {witness.width} does not match instance width {expected_width}"
        )
    assignment = [1 if witness.pi_x.mapping[i] < n else 0 for i in range(n)]
    return assignment if cnf.evaluate(assignment) else None


def satisfying_assignments(cnf: Cnf, max_vars: int = MAX_SAT_ENUM_VARS):
    """All satisfying assignments by brute enumeration; independent SAT oracle."""
    if cnf.num_vars > max_vars:
        raise WidthLimitExceeded(f"{cnf.num_vars} variables exceeds enumeration cap {max_vars}")
    out = []
    for bits in range(1 << cnf.num_vars):
        assignment = [(bits >> i) & 1 for i in range(cnf.num_vars)]
        if cnf.evaluate(assignment):
            out.append(tuple(assignment))
    return out


def count_satisfying(cnf: Cnf, max_vars: int = MAX_SAT_ENUM_VARS) -> int:
    return len(satisfying_assignments(cnf, max_vars))
