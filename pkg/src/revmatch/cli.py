"""Command-line interface.

Subcommands: gen, match, verify, reduce, extract, bench, collide. All
randomness flows from --seed (default 0, never time-based) so every run is
reproducible. Circuits travel as .real files, witnesses and manifests as
JSON, benchmark records as CSV.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .circuit import Circuit
from .errors import NoAlgorithmError, RevMatchError
from .harness import (
    CollisionStats,
    Instance,
    collision_bench,
    gen_instance,
    report,
    run_match,
)
from .matchers import EquivType, MatchConfig, MatchWitness, brute_force_match, verify_witness
from .oracle import Oracle
from .realio import parse_real, write_real
from .reductions import (
    build_nn_instance,
    build_pp_instance,
    extract_assignment_nn,
    extract_assignment_pp,
    parse_dimacs,
)


def _read_circuit(path: str) -> Circuit:
    return parse_real(Path(path).read_text())


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _cmd_gen(args) -> int:
    inst = gen_instance(
        args.equiv,
        args.n,
        args.gates,
        args.seed,
        with_inverse1=args.inverses in ("c1", "both"),
        with_inverse2=args.inverses in ("c2", "both"),
    )
    out = Path(args.out)
    files = {"c1": "c1.real", "c2": "c2.real"}
    _write(out / "c1.real", write_real(inst.c1))
    _write(out / "c2.real", write_real(inst.c2))
    if inst.inv1 is not None:
        files["c1_inv"] = "c1_inv.real"
        _write(out / "c1_inv.real", write_real(inst.inv1))
    if inst.inv2 is not None:
        files["c2_inv"] = "c2_inv.real"
        _write(out / "c2_inv.real", write_real(inst.inv2))
    manifest = {
        "equiv": inst.equiv.label,
        "n": inst.n,
        "gates": inst.gate_count,
        "seed": inst.seed,
        "files": files,
        "planted": inst.planted.to_dict(),
    }
    _write(out / "manifest.json", json.dumps(manifest, indent=2) + "\n")
    print(f"wrote instance to {out}")
    return 0


def _oracle_from_args(path: str, inv_path: str | None) -> Oracle:
    forward = _read_circuit(path)
    inverse = _read_circuit(inv_path) if inv_path else None
    return Oracle(forward, inverse)


def _cmd_match(args) -> int:
    c1 = _read_circuit(args.c1)
    c2 = _read_circuit(args.c2)
    inv1 = _read_circuit(args.inv1) if args.inv1 else None
    inv2 = _read_circuit(args.inv2) if args.inv2 else None
    # Oracle construction cross-checks any provided inverse files.
    Oracle(c1, inv1)
    Oracle(c2, inv2)
    equiv = EquivType.parse(args.equiv)
    cfg = MatchConfig(epsilon=args.epsilon, seed=args.seed, failure_budget=args.budget)
    if args.mode == "brute":
        witness = brute_force_match(c1, c2, equiv)
        if witness is None:
            print("no witness exists")
            return 1
        counts_note = "brute-force search; no oracle queries"
    else:
        inst = Instance(equiv=equiv, c1=c1, c2=c2, inv1=inv1, inv2=inv2, seed=args.seed)
        witness, record = run_match(inst, cfg, mode=args.mode)
        if witness is None:
            print(f"matching failed (algorithm {record.algorithm})")
            return 1
        counts_note = (
            f"algorithm {record.algorithm}; queries c1=({record.c1_classical} classical, "
            f"{record.c1_inverse} inverse, {record.c1_quantum} quantum) "
            f"c2=({record.c2_classical}, {record.c2_inverse}, {record.c2_quantum}); "
            f"verified={record.success}"
        )
    text = json.dumps(witness.to_dict(), indent=2)
    print(text)
    print(counts_note, file=sys.stderr)
    if args.out:
        _write(Path(args.out) / "witness.json", text + "\n")
    return 0


def _cmd_verify(args) -> int:
    c1 = _read_circuit(args.c1)
    c2 = _read_circuit(args.c2)
    witness = MatchWitness.from_dict(json.loads(Path(args.witness).read_text()))
    ok = verify_witness(c1, c2, witness, samples=args.samples, seed=args.seed)
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _cmd_reduce(args) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    build = build_nn_instance if args.target == "nn" else build_pp_instance
    c1, c2, layout = build(cnf)
    out = Path(args.out)
    _write(out / "c1.real", write_real(c1))
    _write(out / "c2.real", write_real(c2))
    _write(out / "layout.json", json.dumps(layout.to_dict(), indent=2) + "\n")
    equiv = "N-N" if args.target == "nn" else "P-P"
    print(f"wrote width-{layout.width} {equiv} instance to {out}")
    return 0


def _cmd_extract(args) -> int:
    cnf = parse_dimacs(Path(args.cnf).read_text())
    witness = MatchWitness.from_dict(json.loads(Path(args.witness).read_text()))
    extract = extract_assignment_nn if args.target == "nn" else extract_assignment_pp
    assignment = extract(cnf, witness)
    if assignment is None:
        print("UNSAT")
        return 2
    print(json.dumps(assignment))
    return 0


def _cmd_bench(args) -> int:
    cfg = MatchConfig(epsilon=args.epsilon, seed=args.seed, failure_budget=args.budget)
    records = []
    import random as _random

    seed_rng = _random.Random(args.seed)
    for trial in range(args.trials):
        inst = gen_instance(
            args.equiv,
            args.n,
            args.gates,
            seed_rng.randrange(1 << 62),
            with_inverse1=args.inverses in ("c1", "both"),
            with_inverse2=args.inverses in ("c2", "both"),
        )
        _, record = run_match(inst, cfg, mode=args.mode, trial=trial)
        records.append(record)
    csv_text, summary = report(records, timing=args.timing)
    if args.out:
        out = Path(args.out)
        _write(out / "records.csv", csv_text)
        _write(out / "summary.txt", summary)
    print(summary, end="")
    return 0


def _cmd_collide(args) -> int:
    print("n,trials,median_queries,mean_queries,min,max")
    rows: list[CollisionStats] = []
    for n in args.n:
        stats = collision_bench(n, args.trials, args.seed, gate_count=args.gates)
        rows.append(stats)
        print(
            f"{stats.n},{stats.trials},{stats.median_queries},"
            f"{stats.mean_queries:.2f},{stats.min_queries},{stats.max_queries}"
        )
    if args.out:
        lines = ["n,trials,median_queries,mean_queries,min,max"]
        for s in rows:
            lines.append(
                f"{s.n},{s.trials},{s.median_queries},{s.mean_queries:.2f},"
                f"{s.min_queries},{s.max_queries}"
            )
        _write(Path(args.out) / "collide.csv", "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revmatch",
        description="Boolean matching of black-box reversible circuits",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--seed", type=int, default=0, help="master RNG seed")

    p = sub.add_parser("gen", help="generate a planted instance")
    p.add_argument("--equiv", required=True, help="equivalence label such as N-P")
    p.add_argument("--n", type=int, required=True, help="wire count")
    p.add_argument("--gates", type=int, default=16, help="reference circuit gate count")
    p.add_argument("--inverses", choices=["none", "c1", "c2", "both"], default="none")
    p.add_argument("--out", required=True, help="output directory")
    add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("match", help="recover a witness from circuit files")
    p.add_argument("--c1", required=True, help="subject circuit (.real)")
    p.add_argument("--c2", required=True, help="reference circuit (.real)")
    p.add_argument("--equiv", required=True)
    p.add_argument("--inv1", help="inverse of c1 (.real)")
    p.add_argument("--inv2", help="inverse of c2 (.real)")
    p.add_argument("--mode", choices=["auto", "classical", "quantum", "brute"], default="auto")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--budget", choices=["per-decision", "union-bound"], default="per-decision")
    p.add_argument("--out", help="directory for witness.json")
    add_common(p)
    p.set_defaults(func=_cmd_match)

    p = sub.add_parser("verify", help="check a witness against circuit files")
    p.add_argument("--c1", required=True)
    p.add_argument("--c2", required=True)
    p.add_argument("--witness", required=True, help="witness JSON file")
    p.add_argument("--samples", type=int, default=None, help="sampled check count (default exhaustive)")
    add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("reduce", help="compile a CNF into a matching instance")
    p.add_argument("--cnf", required=True, help="DIMACS file")
    p.add_argument("--target", choices=["nn", "pp"], required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("extract", help="read an assignment out of a witness")
    p.add_argument("--cnf", required=True)
    p.add_argument("--target", choices=["nn", "pp"], required=True)
    p.add_argument("--witness", required=True)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("bench", help="run planted trials and emit CSV records")
    p.add_argument("--equiv", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--gates", type=int, default=16)
    p.add_argument("--inverses", choices=["none", "c1", "c2", "both"], default="none")
    p.add_argument("--mode", choices=["auto", "classical", "quantum", "brute"], default="auto")
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--budget", choices=["per-decision", "union-bound"], default="per-decision")
    p.add_argument("--timing", action="store_true", help="include wall time in the CSV")
    p.add_argument("--out", help="output directory")
    add_common(p)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("collide", help="collision-search cost benchmark")
    p.add_argument("--n", type=int, nargs="+", required=True, help="one or more widths")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--gates", type=int, default=None)
    p.add_argument("--out", help="output directory")
    add_common(p)
    p.set_defaults(func=_cmd_collide)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NoAlgorithmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except RevMatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
