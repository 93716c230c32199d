import argparse
from collections.abc import Callable, Iterator, Sequence
import logging
import sys

from sympy import isprime

from .cohomology import a_invariants, pd_symbolic, reg_links
from .combinatorics import (
    Graph,
    Hypergraph,
    InvalidComplexError,
    InvalidGraphError,
    InvalidHypergraphError,
    SimplicialComplex,
    alexander_dual,
    dual_hypergraph,
    independence_complex,
    is_cone,
    is_full_simplex,
    is_matroid,
    is_pure,
)
from .exactalg import MAX_CHARACTERISTIC, FieldError, FieldSpec
from .ideals import (
    InvalidIdealError,
    betti_csv_header,
    betti_csv_rows,
    betti_table,
    complex_of,
    dim_quotient,
    edge_ideal,
    max_gen_degree,
    reg_via_betti,
    stanley_reisner,
    symbolic_power,
)
from .invariants import (
    b_invariant,
    epsilon_witness,
    matching_numbers,
    ordmatch_reduction_holds,
)
from .parsers import (
    Instance,
    InstanceKind,
    InstanceParseError,
    dumps,
    exact_json,
    exact_str,
    instance_to_json,
    load_instance,
)
from .polyhedra import PolyhedronError, delta_invariant
from .utils import available_threads, configure_logging, write_csv
from .verify import (
    DEFAULT_N_MAX,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    GuardRailError,
    UnknownCheckError,
    enumerate_instances,
    matroid_instances,
    parse_check_ids,
    random_instance,
    run_suite,
    write_csv_summary,
    write_jsonl,
)

logger = logging.getLogger(__name__)

DEFAULT_METHOD = "takayama"
DEFAULT_N = 1
EXIT_OK = 0
EXIT_DISAGREEMENT = 1
EXIT_INPUT_ERROR = 2

# Everything here ends the run with a one-line diagnostic and exit code 2. Any
# other exception is a bug and propagates.
_INPUT_ERRORS = (
    InstanceParseError,
    InvalidComplexError,
    InvalidGraphError,
    InvalidHypergraphError,
    InvalidIdealError,
    PolyhedronError,
    GuardRailError,
    UnknownCheckError,
    FieldError,
    OSError,
)


def characteristic(text: str) -> int:
    """argparse type for --char: 0 or a prime below 2^31."""
    try:
        value = int(text)
    except ValueError as exc:
        msg = f"characteristic must be an integer, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if value != 0 and (value >= MAX_CHARACTERISTIC or not isprime(value)):
        msg = f"characteristic must be 0 or a prime below 2^31, got {value}"
        raise argparse.ArgumentTypeError(msg)
    return value


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        msg = f"expected a positive integer, got {text!r}"
        raise argparse.ArgumentTypeError(msg) from exc
    if value < 1:
        msg = f"expected a positive integer, got {value}"
        raise argparse.ArgumentTypeError(msg)
    return value


def _add_instance_args(parser: argparse.ArgumentParser, kinds: Sequence[str]) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    for kind in kinds:
        group.add_argument(f"--{kind}", metavar="FILE", help=f"JSON {kind} instance")


def _add_common_args(
    parser: argparse.ArgumentParser, *, field: bool = True, threads: bool = False
) -> None:
    if field:
        parser.add_argument(
            "--char",
            type=characteristic,
            default=0,
            help="Characteristic of the coefficient field (0 for Q, or a prime)",
        )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v INFO, -vv DEBUG)",
    )
    if threads:
        parser.add_argument(
            "--threads",
            type=positive_int,
            default=available_threads(),
            help="Worker processes (default: logical CPU count)",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symreg",
        description="symreg: regularity of symbolic powers of square-free monomial ideals",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    reg = commands.add_parser("reg", help="Regularity of I_Δ^(n)")
    _add_instance_args(reg, ("complex", "graph", "hypergraph"))
    reg.add_argument("--n", type=positive_int, default=DEFAULT_N, help="Symbolic power")
    reg.add_argument(
        "--method",
        choices=("takayama", "betti", "both"),
        default=DEFAULT_METHOD,
        help="Local cohomology search, Betti oracle, or both (exit 1 if they disagree)",
    )
    reg.add_argument(
        "--witness", action="store_true", help="Also print a maximizing degree and all a_i"
    )
    _add_common_args(reg, threads=True)

    delta = commands.add_parser("delta", help="δ(I_Δ) from the symbolic polyhedron")
    _add_instance_args(delta, ("complex", "graph", "hypergraph"))
    _add_common_args(delta, field=False)

    power = commands.add_parser("symbolic-power", help="Minimal generators of I_Δ^(n)")
    _add_instance_args(power, ("complex", "graph", "hypergraph"))
    power.add_argument("--n", type=positive_int, default=DEFAULT_N, help="Symbolic power")
    power.add_argument("--betti-csv", metavar="PATH", help="Write the multigraded Betti table")
    _add_common_args(power)

    dual = commands.add_parser("dual", help="Alexander dual complex or dual hypergraph")
    _add_instance_args(dual, ("complex", "hypergraph"))
    _add_common_args(dual, field=False)

    invariants = commands.add_parser("invariants", help="Every combinatorial invariant")
    _add_instance_args(invariants, ("graph", "hypergraph", "complex"))
    _add_common_args(invariants, threads=True)

    verify = commands.add_parser("verify", help="Machine-check the regularity bounds")
    verify.add_argument(
        "--kind", choices=("complex", "graph", "hypergraph", "matroid"), required=True
    )
    verify.add_argument("--max-vertices", type=positive_int, required=True)
    verify.add_argument("--min-vertices", type=positive_int, default=1)
    verify.add_argument("--n-max", type=positive_int, default=DEFAULT_N_MAX)
    verify.add_argument(
        "--samples",
        type=int,
        default=DEFAULT_SAMPLES,
        help="Random instances per vertex count (0 enumerates exhaustively)",
    )
    verify.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Seed of the first sample")
    verify.add_argument("--checks", help="Comma-separated check names (default: all)")
    verify.add_argument("--up-to-iso", action="store_true", help="One instance per iso class")
    verify.add_argument("--out", required=True, metavar="PATH", help="JSON-lines report")
    verify.add_argument("--csv", metavar="PATH", help="Summary CSV (default: next to --out)")
    verify.add_argument(
        "--no-timing", action="store_true", help="Leave elapsed_us out of the report"
    )
    _add_common_args(verify, threads=True)

    enum = commands.add_parser("enumerate", help="List instances as JSON lines")
    enum.add_argument(
        "--kind", choices=("complex", "graph", "hypergraph", "matroid"), required=True
    )
    enum.add_argument("--r", type=positive_int, required=True)
    enum.add_argument("--up-to-iso", action="store_true")
    _add_common_args(enum, field=False)
    return parser


def _load(args: argparse.Namespace) -> Instance:
    kinds: tuple[InstanceKind, ...] = ("complex", "graph", "hypergraph")
    for kind in kinds:
        path = getattr(args, kind, None)
        if path is not None:
            return load_instance(path, kind)
    msg = "no instance given"
    raise InstanceParseError(msg, source="<arguments>")


def _complex_of_instance(instance: Instance) -> SimplicialComplex:
    match instance:
        case SimplicialComplex():
            return instance
        case Graph():
            return independence_complex(instance)
        case _:
            return complex_of(edge_ideal(instance))


def _betti_reg(delta: SimplicialComplex, n: int, field: FieldSpec) -> int | None:
    if is_full_simplex(delta):
        return None
    return reg_via_betti(symbolic_power(delta, n), field)


def cmd_reg(args: argparse.Namespace) -> int:
    delta = _complex_of_instance(_load(args))
    field = FieldSpec(args.char)
    out: dict[str, object] = {}
    takayama: int | None = None
    if args.method in ("takayama", "both") or args.witness:
        profile = a_invariants(delta, args.n, field, args.threads)
        quotient = profile.regularity_quotient()
        takayama = None if quotient is None or is_full_simplex(delta) else quotient + 1
        if args.witness:
            witness = profile.regularity_witness()
            out["witness"] = (
                None
                if witness is None or takayama is None
                else {"i": witness.i, "alpha": witness.alpha.to_json()}
            )
            out["a_invariants"] = profile.to_json()
    if args.method == "takayama":
        print(dumps({"reg": exact_json(takayama), **out}))
        return EXIT_OK
    betti = _betti_reg(delta, args.n, field)
    if args.method == "betti":
        print(dumps({"reg": exact_json(betti), **out}))
        return EXIT_OK
    if takayama != betti:
        logger.error("methods disagree: takayama=%s betti=%s", takayama, betti)
        disagreement = {
            "reg_takayama": exact_json(takayama),
            "reg_betti": exact_json(betti),
            "methods_agree": False,
        }
        print(dumps({**disagreement, **out}))
        return EXIT_DISAGREEMENT
    print(dumps({"reg": exact_json(takayama), "methods_agree": True, **out}))
    return EXIT_OK


def cmd_delta(args: argparse.Namespace) -> int:
    result = delta_invariant(_complex_of_instance(_load(args)))
    witness = [exact_str(x) for x in result.witness]
    print(dumps({"delta": exact_str(result.delta), "witness": witness}))
    return EXIT_OK


def cmd_symbolic_power(args: argparse.Namespace) -> int:
    delta = _complex_of_instance(_load(args))
    ideal = symbolic_power(delta, args.n)
    payload: dict[str, object] = {"n": args.n, **ideal.to_json()}
    if args.betti_csv is not None:
        table = betti_table(ideal, FieldSpec(args.char))
        write_csv(args.betti_csv, betti_csv_header(ideal.r), betti_csv_rows(table))
        payload["betti_csv"] = args.betti_csv
    print(dumps(payload))
    return EXIT_OK


def cmd_dual(args: argparse.Namespace) -> int:
    instance = _load(args)
    match instance:
        case SimplicialComplex():
            dual: SimplicialComplex | Hypergraph = alexander_dual(instance)
        case Hypergraph():
            dual = dual_hypergraph(instance)
        case _:
            msg = "dual takes a complex or a hypergraph"
            raise InvalidGraphError(msg)
    print(dumps(instance_to_json(dual)))
    return EXIT_OK


def _complex_invariants(
    delta: SimplicialComplex, field: FieldSpec, threads: int = 1
) -> dict[str, object]:
    info: dict[str, object] = {
        "facets": [list(f) for f in delta.facets],
        "dim_quotient": dim_quotient(delta),
        "is_pure": is_pure(delta),
        "is_matroid": is_matroid(delta),
        "is_cone": is_cone(delta),
    }
    if is_full_simplex(delta):
        info["zero_ideal"] = True
        return info
    ideal = stanley_reisner(delta)
    result = delta_invariant(delta)
    b = b_invariant(delta, field)
    info |= {
        "max_generator_degree": max_gen_degree(ideal),
        "reg": reg_links(delta, field) + 1,
        "pd_quotient": pd_symbolic(delta, 1, field, threads),
        "delta": exact_str(result.delta),
        "delta_witness": [exact_str(x) for x in result.witness],
        "b": b.value,
        "b_witness": [list(delta.facets[k]) for k in b.witness],
    }
    return info


def cmd_invariants(args: argparse.Namespace) -> int:
    instance = _load(args)
    field = FieldSpec(args.char)
    out: dict[str, object] = instance_to_json(instance)
    match instance:
        case Graph():
            out["matching"] = matching_numbers(instance).to_json()
            out["ordmatch_reduction_holds"] = ordmatch_reduction_holds(instance)
        case Hypergraph() if instance.edges:
            witness = epsilon_witness(instance)
            out["epsilon"] = len(witness)
            out["epsilon_witness"] = [list(e) for e in witness]
        case _:
            pass
    out["complex"] = _complex_invariants(_complex_of_instance(instance), field, args.threads)
    print(dumps(out))
    return EXIT_OK


def _verify_instances(args: argparse.Namespace) -> Iterator[Instance]:
    if args.min_vertices > args.max_vertices:
        msg = "--min-vertices exceeds --max-vertices"
        raise GuardRailError(msg)
    if args.kind == "matroid":
        for matroid in matroid_instances(args.max_vertices):
            if matroid.r >= args.min_vertices:
                yield matroid
        return
    for r in range(args.min_vertices, args.max_vertices + 1):
        if args.samples > 0:
            for k in range(args.samples):
                yield random_instance(args.kind, r, args.seed + k)
        else:
            yield from enumerate_instances(args.kind, r, up_to_iso=args.up_to_iso)


def cmd_verify(args: argparse.Namespace) -> int:
    checks = None if args.checks is None else parse_check_ids(args.checks.split(","))
    instances = list(_verify_instances(args))
    report = run_suite(instances, args.n_max, FieldSpec(args.char), checks, args.threads)
    written = write_jsonl(report, args.out, timing=not args.no_timing)
    summary_path = write_csv_summary(report, args.csv, args.out)
    failures = report.failures
    print(
        dumps(
            {
                "instances": len(instances),
                "results": written,
                "failures": len(failures),
                "passed": report.passed,
                "report": args.out,
                "summary": summary_path,
            }
        )
    )
    return EXIT_OK if report.passed else EXIT_DISAGREEMENT


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.kind == "matroid":
        found: Iterator[Instance] = (m for m in matroid_instances(args.r) if m.r == args.r)
    else:
        found = enumerate_instances(args.kind, args.r, up_to_iso=args.up_to_iso)
    for instance in found:
        print(dumps(instance_to_json(instance)))
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "reg": cmd_reg,
    "delta": cmd_delta,
    "symbolic-power": cmd_symbolic_power,
    "dual": cmd_dual,
    "invariants": cmd_invariants,
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point of the ``symreg`` console script; returns the exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except _INPUT_ERRORS as exc:
        print(f"symreg {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
