"""Instance generation and machine checking of the regularity bounds.

Every check compares exact integers or fractions. A failing check records a
reproducer (the instance as JSON) so that it can be rerun on its own.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, product
import json
import logging
import random
import time

from .cohomology import AInvariantProfile, ExtInt, a_invariants, reg_links, reg_symbolic
from .combinatorics import (
    MAX_ISO_VERTICES,
    Graph,
    Hypergraph,
    SimplicialComplex,
    alexander_dual,
    dual_hypergraph,
    face_of,
    independence_complex,
    is_cone,
    is_full_simplex,
    is_matroid,
    iso_canonical_form,
    maximal_masks,
    minimal_masks,
    minimal_nonface_masks,
    vertex_set,
)
from .exactalg import QQ, FieldSpec
from .ideals import (
    MonomialIdeal,
    complex_of,
    contraction,
    dim_quotient,
    edge_ideal,
    max_gen_degree,
    pd_quotient_via_betti,
    reg_via_betti,
    stanley_reisner,
    symbolic_power,
)
from .invariants import (
    BInvariant,
    MatchingNumbers,
    b_invariant,
    epsilon,
    matching_numbers,
    ordmatch_reduction_violation,
)
from .parsers import Instance, exact_json, instance_key, instance_kind, instance_to_json
from .polyhedra import (
    DeltaResult,
    affine_dimension,
    chamber_polytope,
    delta_invariant,
    is_bounded,
    polytope_delta,
    vertices,
)
from .utils import csv_path_for, write_csv, write_lines

logger = logging.getLogger(__name__)

DEFAULT_N_MAX = 3
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 0
MAX_N = 4
# Enumeration guard rails.
MAX_GRAPH_VERTICES = 7
MAX_SET_SYSTEM_VERTICES = 5
MAX_RANDOM_VERTICES = 12
MAX_MATROID_ELEMENTS = 6
# b walks every nonempty facet subset.
MAX_B_FACETS = 14


class GuardRailError(ValueError):
    """A request beyond the supported instance sizes."""


class UnknownCheckError(ValueError):
    """A check name outside the roster."""


class CheckId(StrEnum):
    THM_2_2 = "THM_2_2"
    THM_2_3 = "THM_2_3"
    COR_2_4 = "COR_2_4"
    THM_2_5_DUAL = "THM_2_5_DUAL"
    THM_2_6 = "THM_2_6"
    EX_2_7 = "EX_2_7"
    REM_LOWER_DN = "REM_LOWER_DN"
    LEM_1_3_TERAI = "LEM_1_3_TERAI"
    LEM_1_7_DS = "LEM_1_7_DS"
    LEM_1_8_LOWER = "LEM_1_8_LOWER"
    LEM_1_9_STRICT = "LEM_1_9_STRICT"
    LEM_2_1_RESTRICT = "LEM_2_1_RESTRICT"
    LEM_1_11_CHAMBER = "LEM_1_11_CHAMBER"
    THM_3_4_ORDMATCH = "THM_3_4_ORDMATCH"
    COR_3_2_ORDMATCH = "COR_3_2_ORDMATCH"
    REM_CW_EQUALITY = "REM_CW_EQUALITY"
    DELTA_EDGE_IDEAL = "DELTA_EDGE_IDEAL"
    ORACLE_EQ = "ORACLE_EQ"
    HOCHSTER_N1 = "HOCHSTER_N1"
    FAKHARI_DIAG = "FAKHARI_DIAG"


class CheckStatus(StrEnum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


REPORT_ONLY = frozenset({CheckId.FAKHARI_DIAG})
GRAPH_ONLY = frozenset(
    {
        CheckId.LEM_1_8_LOWER,
        CheckId.THM_3_4_ORDMATCH,
        CheckId.COR_3_2_ORDMATCH,
        CheckId.REM_CW_EQUALITY,
        CheckId.DELTA_EDGE_IDEAL,
        CheckId.FAKHARI_DIAG,
    }
)
# Recorded once, at n = 1.
N_INDEPENDENT = frozenset(
    {
        CheckId.LEM_1_3_TERAI,
        CheckId.LEM_1_7_DS,
        CheckId.HOCHSTER_N1,
        CheckId.THM_2_5_DUAL,
        CheckId.COR_3_2_ORDMATCH,
        CheckId.DELTA_EDGE_IDEAL,
    }
)
ROSTER_ORDER = {c: k for k, c in enumerate(CheckId)}


def parse_check_ids(names: Iterable[str]) -> frozenset[CheckId]:
    """Roster members named in ``names`` (case-insensitive)."""
    chosen: set[CheckId] = set()
    for raw in names:
        name = raw.strip().upper()
        if not name:
            continue
        try:
            chosen.add(CheckId(name))
        except ValueError as exc:
            known = ", ".join(c.value for c in CheckId)
            msg = f"unknown check {raw!r}; known checks: {known}"
            raise UnknownCheckError(msg) from exc
    return frozenset(chosen)


@dataclass(frozen=True, slots=True)
class CheckResult:
    instance_key: str
    kind: str
    check: CheckId
    n: int
    status: CheckStatus
    lhs: int | str | None = None
    rhs: int | str | None = None
    detail: dict[str, object] = field(default_factory=dict, hash=False)
    elapsed_us: int = 0
    reproducer: dict[str, object] | None = field(default=None, hash=False)

    @property
    def counts_as_failure(self) -> bool:
        return self.status is CheckStatus.FAIL and self.check not in REPORT_ONLY

    def to_json(self, *, timing: bool = True) -> dict[str, object]:
        record: dict[str, object] = {
            "instance": self.instance_key,
            "kind": self.kind,
            "check": self.check.value,
            "n": self.n,
            "status": self.status.value,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "detail": self.detail,
        }
        if self.check in REPORT_ONLY:
            record["report_only"] = True
        if self.reproducer is not None:
            record["reproducer"] = self.reproducer
        if timing:
            record["elapsed_us"] = self.elapsed_us
        return record


@dataclass(slots=True)
class VerificationReport:
    results: list[CheckResult] = field(default_factory=list)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.counts_as_failure]

    @property
    def passed(self) -> bool:
        return not self.failures

    def extend(self, other: VerificationReport) -> None:
        self.results.extend(other.results)

    def sorted(self) -> VerificationReport:
        return VerificationReport(
            sorted(self.results, key=lambda r: (r.instance_key, ROSTER_ORDER[r.check], r.n))
        )

    def summary(self) -> dict[CheckId, Counter[CheckStatus]]:
        table: dict[CheckId, Counter[CheckStatus]] = {}
        for r in self.results:
            table.setdefault(r.check, Counter())[r.status] += 1
        return dict(sorted(table.items(), key=lambda item: ROSTER_ORDER[item[0]]))

    def jsonl_lines(self, *, timing: bool = True) -> Iterator[str]:
        for r in self.results:
            yield json.dumps(r.to_json(timing=timing), separators=(",", ":"), sort_keys=False)

    def csv_rows(self) -> list[list[object]]:
        return [
            [
                check.value,
                counts[CheckStatus.PASS],
                counts[CheckStatus.FAIL],
                counts[CheckStatus.SKIP],
                check in REPORT_ONLY,
            ]
            for check, counts in self.summary().items()
        ]


CSV_HEADER = ("check", "pass", "fail", "skip", "report_only")


class _Skip(Exception):  # noqa: N818
    def __init__(self, reason: str) -> None:
        super().__init__(reason)
        self.reason = reason


type Outcome = tuple[bool, ExtInt | Fraction, ExtInt | Fraction, dict[str, object]]


@lru_cache(maxsize=1 << 12)
def _reg_cached(delta: SimplicialComplex, n: int, field: FieldSpec) -> ExtInt:
    return reg_symbolic(delta, n, field)


@lru_cache(maxsize=1 << 12)
def _delta_cached(delta: SimplicialComplex) -> DeltaResult:
    return delta_invariant(delta)


def _le(a: ExtInt | Fraction, b: ExtInt | Fraction) -> bool:
    """a ≤ b with None as −∞."""
    if a is None:
        return True
    if b is None:
        return False
    return a <= b


class InstanceContext:
    """Lazily computed data shared by the checks of one instance."""

    def __init__(self, instance: Instance, field: FieldSpec = QQ) -> None:
        self.instance = instance
        self.field = field
        self._profiles: dict[int, AInvariantProfile] = {}

    @cached_property
    def complex(self) -> SimplicialComplex:
        match self.instance:
            case SimplicialComplex():
                return self.instance
            case Graph():
                return independence_complex(self.instance)
            case _:
                return complex_of(edge_ideal(self.instance))

    @property
    def r(self) -> int:
        return self.complex.r

    @cached_property
    def zero_ideal(self) -> bool:
        return is_full_simplex(self.complex)

    @cached_property
    def ideal(self) -> MonomialIdeal:
        return stanley_reisner(self.complex)

    @cached_property
    def hypergraph(self) -> Hypergraph:
        """The clutter of minimal non-faces, whose edge ideal is I_Δ."""
        match self.instance:
            case Hypergraph():
                return self.instance
            case Graph():
                return self.instance.as_hypergraph()
            case _:
                nonfaces = minimal_nonface_masks(self.complex)
                return Hypergraph(self.r, tuple(face_of(m) for m in nonfaces))

    @cached_property
    def delta(self) -> DeltaResult:
        return _delta_cached(self.complex)

    @cached_property
    def b(self) -> BInvariant:
        if len(self.complex.facets) > MAX_B_FACETS:
            count = len(self.complex.facets)
            msg = f"b needs at most {MAX_B_FACETS} facets, this complex has {count}"
            raise _Skip(msg)
        return b_invariant(self.complex, self.field)

    @cached_property
    def dim_quotient(self) -> int:
        return dim_quotient(self.complex)

    @cached_property
    def d(self) -> int:
        return max_gen_degree(self.ideal)

    @cached_property
    def matching(self) -> MatchingNumbers:
        if not isinstance(self.instance, Graph):
            msg = "graph-only check"
            raise _Skip(msg)
        return matching_numbers(self.instance)

    def profile(self, n: int) -> AInvariantProfile:
        if n not in self._profiles:
            self._profiles[n] = a_invariants(self.complex, n, self.field)
        return self._profiles[n]

    def reg(self, n: int) -> int:
        value = self.profile(n).regularity_quotient()
        if value is None:
            msg = "zero ideal"
            raise _Skip(msg)
        return value + 1


def _require_edges(ctx: InstanceContext) -> Graph:
    graph = ctx.instance
    if not isinstance(graph, Graph):
        msg = "graph-only check"
        raise _Skip(msg)
    if graph.is_trivial():
        msg = "edgeless graph"
        raise _Skip(msg)
    return graph


def _check_thm_2_2(ctx: InstanceContext, n: int) -> Outcome:
    bound = ctx.delta.delta * (n - 1)
    values = ctx.profile(n).values
    finite = {i: v for i, v in values.items() if v is not None}
    worst = max(finite.values()) if finite else None
    ok = all(v <= bound for v in finite.values())
    return ok, worst, bound, {"a": {str(i): exact_json(v) for i, v in values.items()}}


def _check_thm_2_3(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    bound = ctx.delta.delta * (n - 1) + ctx.b.value
    return reg <= bound, reg, bound, {"b": ctx.b.value, "b_witness": list(ctx.b.witness)}


def _check_cor_2_4(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    bound = ctx.delta.delta * (n - 1) + ctx.dim_quotient + 1
    return reg <= bound, reg, bound, {"dim_quotient": ctx.dim_quotient}


def _check_lem_1_9_strict(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    bound = ctx.delta.delta * n + ctx.dim_quotient + 1
    return reg < bound, reg, bound, {}


def _check_thm_2_5_dual(ctx: InstanceContext, _n: int) -> Outcome:
    full = (1 << ctx.r) - 1
    covers = [face_of(full & ~f) for f in ctx.complex.facet_masks]
    if len(covers) > MAX_B_FACETS:
        msg = f"needs at most {MAX_B_FACETS} facets"
        raise _Skip(msg)
    best = 0
    for size in range(1, len(covers) + 1):
        for chosen in combinations(covers, size):
            pd = pd_quotient_via_betti(edge_ideal(Hypergraph(ctx.r, chosen)), ctx.field)
            best = max(best, pd)
    b = ctx.b.value
    return b == best, b, best, {}


def _check_thm_2_6(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    dual = dual_hypergraph(ctx.hypergraph)
    eps = epsilon(dual)
    bound = ctx.delta.delta * (n - 1) + ctx.r - eps
    return reg <= bound, reg, bound, {"epsilon_dual": eps, "vertices": ctx.r}


def _check_ex_2_7(ctx: InstanceContext, n: int) -> Outcome:
    delta = ctx.complex
    if not is_matroid(delta):
        msg = "not a matroid"
        raise _Skip(msg)
    if is_cone(delta):
        msg = "cone"
        raise _Skip(msg)
    if len(vertex_set(delta)) != ctx.r:
        msg = "ground set has non-vertices"
        raise _Skip(msg)
    reg = ctx.reg(n)
    s = ctx.dim_quotient
    expected = ctx.d * (n - 1) + s + 1
    delta_ok = ctx.delta.delta == ctx.d
    b_ok = ctx.b.value == s + 1
    detail: dict[str, object] = {
        "d": ctx.d,
        "s": s,
        "delta": exact_json(ctx.delta.delta),
        "b": ctx.b.value,
    }
    return reg == expected and delta_ok and b_ok, reg, expected, detail


def _check_rem_lower_dn(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    bound = ctx.d * n
    return reg >= bound, reg, bound, {}


def _check_lem_1_3_terai(ctx: InstanceContext, _n: int) -> Outcome:
    lhs = reg_via_betti(ctx.ideal, ctx.field)
    dual_ideal = stanley_reisner(alexander_dual(ctx.complex))
    rhs = pd_quotient_via_betti(dual_ideal, ctx.field)
    return lhs == rhs, lhs, rhs, {}


def _check_lem_1_7_ds(ctx: InstanceContext, _n: int) -> Outcome:
    h = ctx.hypergraph
    pd = pd_quotient_via_betti(edge_ideal(h), ctx.field)
    eps = epsilon(h)
    bound = ctx.r - eps
    return pd <= bound, pd, bound, {"epsilon": eps}


def _check_lem_2_1_restrict(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    worst: ExtInt = None
    worst_delta: Fraction | None = None
    unit = 0
    ok = True
    for size in range(ctx.r):
        for sigma in combinations(range(1, ctx.r + 1), size):
            j = contraction(ctx.ideal, sigma)
            if j.ideal.is_unit:
                unit += 1
                continue
            delta_j = complex_of(j.ideal)
            reg_j = _reg_cached(delta_j, n, ctx.field)
            if not _le(reg_j, reg):
                ok = False
            if reg_j is not None and (worst is None or reg_j > worst):
                worst = reg_j
            if not is_full_simplex(delta_j):
                dj = _delta_cached(delta_j).delta
                if dj > ctx.delta.delta:
                    ok = False
                worst_delta = dj if worst_delta is None else max(worst_delta, dj)
    detail: dict[str, object] = {
        "skipped_non_faces": unit,
        "max_delta_contraction": exact_json(worst_delta),
        "delta": exact_json(ctx.delta.delta),
    }
    return ok, worst, reg, detail


def _check_lem_1_11_chamber(ctx: InstanceContext, n: int) -> Outcome:
    profile = ctx.profile(n)
    ok = True
    worst: Fraction | None = None
    chambers: list[dict[str, object]] = []
    for i, witness in sorted(profile.witnesses.items()):
        g = witness.alpha.negative_support
        if len(g) == ctx.r:
            continue
        j = contraction(ctx.ideal, g)
        delta_j = complex_of(j.ideal)
        alpha = j.restrict(witness.alpha.alpha)
        chosen = [
            k
            for k, facet in enumerate(delta_j.facets)
            if sum(a for v, a in enumerate(alpha, start=1) if v not in facet) <= n - 1
        ]
        chamber = chamber_polytope(delta_j, chosen, 1)
        bounded = is_bounded(chamber)
        entry: dict[str, object] = {"i": i, "alpha": list(witness.alpha.alpha), "bounded": bounded}
        if not bounded:
            ok = False
            chambers.append(entry)
            continue
        delta_c = polytope_delta(chamber).delta
        delta_j_value = _delta_cached(delta_j).delta
        ok = ok and delta_c <= delta_j_value <= ctx.delta.delta
        worst = delta_c if worst is None else max(worst, delta_c)
        entry["delta_chamber"] = exact_json(delta_c)
        entry["delta_contraction"] = exact_json(delta_j_value)
        entry["dim_chamber"] = affine_dimension(vertices(chamber))
        chambers.append(entry)
    if not chambers:
        msg = "no witness with a proper negative support"
        raise _Skip(msg)
    return ok, worst, ctx.delta.delta, {"chambers": chambers}


def _check_lem_1_8_lower(ctx: InstanceContext, n: int) -> Outcome:
    _require_edges(ctx)
    reg = ctx.reg(n)
    bound = 2 * n + ctx.matching.induced - 1
    return reg >= bound, reg, bound, {"induced_matching": ctx.matching.induced}


def _check_thm_3_4_ordmatch(ctx: InstanceContext, n: int) -> Outcome:
    _require_edges(ctx)
    reg = ctx.reg(n)
    bound = 2 * n + ctx.matching.ordered - 1
    return reg <= bound, reg, bound, {"ordered_matching": ctx.matching.ordered}


def _check_cor_3_2_ordmatch(ctx: InstanceContext, _n: int) -> Outcome:
    graph = _require_edges(ctx)
    violation = ordmatch_reduction_violation(graph)
    b = ctx.b.value
    bound = ctx.matching.ordered + 1
    detail: dict[str, object] = {}
    if violation is not None:
        detail["reduction_violation"] = {"S": list(violation[0]), "v": violation[1]}
    return violation is None and b <= bound, b, bound, detail


def _check_rem_cw_equality(ctx: InstanceContext, n: int) -> Outcome:
    _require_edges(ctx)
    m = ctx.matching
    if m.ordered != m.induced:
        msg = "ordmatch differs from the induced matching number"
        raise _Skip(msg)
    reg = ctx.reg(n)
    expected = 2 * n + m.induced - 1
    return reg == expected, reg, expected, {}


def _check_delta_edge_ideal(ctx: InstanceContext, _n: int) -> Outcome:
    _require_edges(ctx)
    value = ctx.delta.delta
    return value == 2, value, Fraction(2), {"witness": [exact_json(x) for x in ctx.delta.witness]}


def _check_oracle_eq(ctx: InstanceContext, n: int) -> Outcome:
    reg = ctx.reg(n)
    oracle = reg_via_betti(symbolic_power(ctx.complex, n), ctx.field)
    return reg == oracle, reg, oracle, {}


def _check_hochster_n1(ctx: InstanceContext, _n: int) -> Outcome:
    links = reg_links(ctx.complex, ctx.field) + 1
    reg = ctx.reg(1)
    oracle = reg_via_betti(ctx.ideal, ctx.field)
    return links == reg == oracle, links, reg, {"betti": oracle}


def _check_fakhari_diag(ctx: InstanceContext, n: int) -> Outcome:
    _require_edges(ctx)
    reg = ctx.reg(n)
    bound = 2 * n + ctx.reg(1) - 2
    return reg <= bound, reg, bound, {}


CHECKS: dict[CheckId, Callable[[InstanceContext, int], Outcome]] = {
    CheckId.THM_2_2: _check_thm_2_2,
    CheckId.THM_2_3: _check_thm_2_3,
    CheckId.COR_2_4: _check_cor_2_4,
    CheckId.THM_2_5_DUAL: _check_thm_2_5_dual,
    CheckId.THM_2_6: _check_thm_2_6,
    CheckId.EX_2_7: _check_ex_2_7,
    CheckId.REM_LOWER_DN: _check_rem_lower_dn,
    CheckId.LEM_1_3_TERAI: _check_lem_1_3_terai,
    CheckId.LEM_1_7_DS: _check_lem_1_7_ds,
    CheckId.LEM_1_8_LOWER: _check_lem_1_8_lower,
    CheckId.LEM_1_9_STRICT: _check_lem_1_9_strict,
    CheckId.LEM_2_1_RESTRICT: _check_lem_2_1_restrict,
    CheckId.LEM_1_11_CHAMBER: _check_lem_1_11_chamber,
    CheckId.THM_3_4_ORDMATCH: _check_thm_3_4_ordmatch,
    CheckId.COR_3_2_ORDMATCH: _check_cor_3_2_ordmatch,
    CheckId.REM_CW_EQUALITY: _check_rem_cw_equality,
    CheckId.DELTA_EDGE_IDEAL: _check_delta_edge_ideal,
    CheckId.ORACLE_EQ: _check_oracle_eq,
    CheckId.HOCHSTER_N1: _check_hochster_n1,
    CheckId.FAKHARI_DIAG: _check_fakhari_diag,
}


def _exact_value(value: int | Fraction | None) -> int | str | None:
    return None if value is None else exact_json(value)


def run_checks(
    instance: Instance,
    n_max: int = DEFAULT_N_MAX,
    field: FieldSpec = QQ,
    checks: Iterable[CheckId] | None = None,
) -> VerificationReport:
    """Evaluate the requested checks (default: the whole roster) for n = 1..n_max."""
    if not 1 <= n_max <= MAX_N:
        msg = f"n_max must lie in 1..{MAX_N}, got {n_max}"
        raise GuardRailError(msg)
    selected = sorted(set(CheckId) if checks is None else set(checks), key=ROSTER_ORDER.get)
    ctx = InstanceContext(instance, field)
    key = instance_key(instance)
    kind = instance_kind(instance)
    report = VerificationReport()
    for check in selected:
        ns = (1,) if check in N_INDEPENDENT else tuple(range(1, n_max + 1))
        for n in ns:
            report.results.append(_evaluate(ctx, check, n, key, kind))
    return report


def _evaluate(ctx: InstanceContext, check: CheckId, n: int, key: str, kind: str) -> CheckResult:
    started = time.perf_counter_ns()
    try:
        if check in GRAPH_ONLY and kind != "graph":
            msg = "graph-only check"
            raise _Skip(msg)
        if ctx.zero_ideal:
            msg = "zero ideal"
            raise _Skip(msg)
        ok, lhs, rhs, detail = CHECKS[check](ctx, n)
    except _Skip as skip:
        elapsed = (time.perf_counter_ns() - started) // 1000
        logger.info("%s skipped at n=%d on %s: %s", check, n, key, skip.reason)
        return CheckResult(
            key,
            kind,
            check,
            n,
            CheckStatus.SKIP,
            detail={"reason": skip.reason},
            elapsed_us=elapsed,
        )
    elapsed = (time.perf_counter_ns() - started) // 1000
    status = CheckStatus.PASS if ok else CheckStatus.FAIL
    reproducer = instance_to_json(ctx.instance) if not ok else None
    result = CheckResult(
        key,
        kind,
        check,
        n,
        status,
        _exact_value(lhs),
        _exact_value(rhs),
        detail,
        elapsed,
        reproducer,
    )
    if result.counts_as_failure:
        logger.warning(
            "%s failed at n=%d: lhs=%s rhs=%s on %s", check, n, result.lhs, result.rhs, key
        )
    return result


@dataclass(frozen=True, slots=True)
class _Job:
    n_max: int
    field: FieldSpec
    checks: frozenset[CheckId] | None

    def __call__(self, instance: Instance) -> VerificationReport:
        return run_checks(instance, self.n_max, self.field, self.checks)


def run_suite(
    instances: Iterable[Instance],
    n_max: int = DEFAULT_N_MAX,
    field: FieldSpec = QQ,
    checks: Iterable[CheckId] | None = None,
    threads: int = 1,
) -> VerificationReport:
    """Run :func:`run_checks` over many instances and merge in instance-key order."""
    job = _Job(n_max, field, None if checks is None else frozenset(checks))
    batch = list(instances)
    logger.info("verifying %d instances with %d worker(s)", len(batch), max(threads, 1))
    merged = VerificationReport()
    if threads <= 1:
        for report in map(job, batch):
            merged.extend(report)
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for report in pool.map(job, batch, chunksize=max(1, len(batch) // (threads * 8))):
                merged.extend(report)
    merged = merged.sorted()
    logger.info("%d results, %d failures", len(merged.results), len(merged.failures))
    return merged


def _antichains(masks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every antichain drawn from ``masks``, in a fixed depth-first order."""

    def extend(start: int, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield chosen
        for k in range(start, len(masks)):
            m = masks[k]
            if all(m & c != c and m & c != m for c in chosen):
                yield from extend(k + 1, (*chosen, m))

    yield from extend(0, ())


def _subset_masks(r: int, *, include_empty: bool) -> list[int]:
    start = 0 if include_empty else 1
    return sorted(range(start, 1 << r), key=lambda m: (m.bit_count(), m))


def _enumerate_raw(kind: str, r: int) -> Iterator[Instance]:
    match kind:
        case "complex":
            for chain in _antichains(_subset_masks(r, include_empty=True)):
                if chain:
                    yield SimplicialComplex.from_masks(r, chain)
        case "hypergraph":
            for chain in _antichains(_subset_masks(r, include_empty=False)):
                yield Hypergraph(r, tuple(face_of(m) for m in chain))
        case "graph":
            pairs = list(combinations(range(1, r + 1), 2))
            for chooser in range(1 << len(pairs)):
                yield Graph(r, tuple(p for k, p in enumerate(pairs) if chooser >> k & 1))
        case _:
            msg = f"unknown instance kind {kind!r}"
            raise GuardRailError(msg)


def enumerate_instances(kind: str, r: int, *, up_to_iso: bool = False) -> Iterator[Instance]:
    """All instances of ``kind`` on ``1..r``, optionally one per isomorphism class."""
    limit = MAX_GRAPH_VERTICES if kind == "graph" else MAX_SET_SYSTEM_VERTICES
    if not 1 <= r <= limit:
        msg = f"enumeration of {kind} instances supports 1 <= r <= {limit}, got {r}"
        raise GuardRailError(msg)
    if up_to_iso and r > MAX_ISO_VERTICES:
        msg = f"isomorphism reduction supports r <= {MAX_ISO_VERTICES}"
        raise GuardRailError(msg)
    if not up_to_iso:
        yield from _enumerate_raw(kind, r)
        return
    seen: set[Instance] = set()
    for instance in _enumerate_raw(kind, r):
        canonical = iso_canonical_form(instance)
        if canonical not in seen:
            seen.add(canonical)
            yield canonical


def _below(rng: random.Random, n: int) -> int:
    """Uniform on 0..n-1 by rejection on ``getrandbits``."""
    k = n.bit_length()
    while True:
        value = rng.getrandbits(k)
        if value < n:
            return value


def _proper_subset(rng: random.Random, r: int) -> int:
    """Uniform over the non-empty proper subsets of 1..r, r >= 2."""
    full = (1 << r) - 1
    while True:
        mask = rng.getrandbits(r)
        if mask and mask != full:
            return mask


def _random_antichain(
    rng: random.Random, r: int, reduce: Callable[[Iterable[int]], list[int]]
) -> list[int]:
    """Reduce 2..r+1 random proper subsets; redraw until two members survive."""
    while True:
        count = 2 + _below(rng, r)
        family = reduce(_proper_subset(rng, r) for _ in range(count))
        if len(family) > 1:
            return family


def random_instance(kind: str, r: int, seed: int) -> Instance:
    """A reproducible pseudo-random instance.

    Uses ``random.Random(seed)`` (Mersenne Twister MT19937) and draws only through
    ``getrandbits``, so the same seed yields the same instance on every platform.
    Graphs include each edge, in lexicographic pair order, when one drawn bit is set.
    Complexes keep the maximal and hypergraphs the minimal members of a family of
    2..r+1 subsets, each uniform over the non-empty proper subsets of 1..r. Families
    that collapse to a single member are redrawn, so no complex is a simplex. On one
    vertex the only such instances are {∅} and the hypergraph ({1}).
    """
    if not 1 <= r <= MAX_RANDOM_VERTICES:
        msg = f"random instances support 1 <= r <= {MAX_RANDOM_VERTICES}, got {r}"
        raise GuardRailError(msg)
    rng = random.Random(seed)
    match kind:
        case "graph":
            pairs = combinations(range(1, r + 1), 2)
            return Graph(r, tuple(p for p in pairs if rng.getrandbits(1)))
        case "complex":
            if r == 1:
                return SimplicialComplex.from_masks(1, [0])
            return SimplicialComplex.from_masks(r, _random_antichain(rng, r, maximal_masks))
        case "hypergraph":
            if r == 1:
                return Hypergraph(1, ((1,),))
            family = _random_antichain(rng, r, minimal_masks)
            return Hypergraph(r, tuple(face_of(m) for m in family))
        case _:
            msg = f"unknown instance kind {kind!r}"
            raise GuardRailError(msg)


def uniform_matroid(k: int, m: int) -> SimplicialComplex:
    """U_{k,m}: every k-subset of 1..m is a facet."""
    return SimplicialComplex(m, tuple(combinations(range(1, m + 1), k)))


def partition_matroid(
    blocks: Sequence[Sequence[int]], capacities: Sequence[int]
) -> SimplicialComplex:
    """Bases pick exactly ``capacities[i]`` elements of ``blocks[i]``."""
    m = sum(len(b) for b in blocks)
    choices = [list(combinations(block, c)) for block, c in zip(blocks, capacities, strict=True)]
    bases: list[tuple[int, ...]] = [()]
    for options in choices:
        bases = [(*base, *pick) for base in bases for pick in options]
    return SimplicialComplex(m, tuple(bases))


def _compositions(total: int, smallest: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(smallest, total + 1):
        for rest in _compositions(total - first, smallest):
            yield (first, *rest)


def matroid_instances(m_max: int = 5) -> Iterator[SimplicialComplex]:
    """Uniform matroids U_{k,m} (1 ≤ k < m ≤ m_max) then cone-free partition matroids."""
    if not 2 <= m_max <= MAX_MATROID_ELEMENTS:
        msg = f"matroid generation supports 2 <= m_max <= {MAX_MATROID_ELEMENTS}, got {m_max}"
        raise GuardRailError(msg)
    seen: set[SimplicialComplex] = set()
    for m in range(2, m_max + 1):
        for k in range(1, m):
            matroid = uniform_matroid(k, m)
            seen.add(matroid)
            yield matroid
    for m in range(4, m_max + 1):
        for sizes in _compositions(m, 2):
            if len(sizes) < 2:
                continue
            blocks: list[tuple[int, ...]] = []
            start = 1
            for size in sizes:
                blocks.append(tuple(range(start, start + size)))
                start += size
            ranges = [range(1, size) for size in sizes]
            for capacities in product(*ranges):
                matroid = partition_matroid(blocks, capacities)
                if matroid not in seen:
                    seen.add(matroid)
                    yield matroid


def write_jsonl(report: VerificationReport, path: str, *, timing: bool = True) -> int:
    """One JSON object per check result; returns the number of records."""
    return write_lines(path, report.jsonl_lines(timing=timing))


def write_csv_summary(report: VerificationReport, path: str | None, report_path: str) -> str:
    """Per-check pass/fail/skip counts, next to the JSON-lines report by default."""
    target = str(csv_path_for(report_path)) if path is None else path
    write_csv(target, CSV_HEADER, report.csv_rows())
    return target
