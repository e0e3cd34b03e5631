"""The fixed theorem suite: even subdivisions x small abelian groups x all connection sets.

Rows come out in instance order whatever the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .cayley import all_symmetric_sets
from .errors import BudgetExceededError
from .graphs import SubdivisionPlan, builtin_graph
from .group import TAU_NUM, AbelianGroup, all_groups_up_to
from .sidorenko import SubdivisionEvaluator, strictness_from_report

SUITE_BASES = ("K3", "K4", "C5", "K2,3")
TREE_BASES = ("P1", "P2", "P3", "K1,3")
SUITE_EPSILONS = (0.1, 0.5, 1.0)
SUITE_MAX_ORDER = 8
SUITE_KERNEL_CAP = 10**5

CSV_COLUMNS = (
    "base", "lengths", "group", "set", "tH", "bound", "gap", "termMin", "termImagMax",
    "verdict", "kernelCheck", "strict@0.1", "strict@0.5", "strict@1.0", "method", "cost", "ok",
)


def suite_lengths(num_edges: int) -> list[tuple[int, ...]]:
    """Six length vectors over {1, 2}: all 1, all 2, first edge 2, alternating (two phases), last edge 2."""
    k = num_edges
    vectors = [
        (1,) * k,
        (2,) * k,
        (2,) + (1,) * (k - 1),
        tuple(1 + (i % 2) for i in range(k)),
        tuple(2 - (i % 2) for i in range(k)),
        (1,) * (k - 1) + (2,),
    ]
    out = []
    for v in vectors:
        if v not in out:
            out.append(v)
    return out


def suite_plans(trees: bool = False) -> list[tuple[str, SubdivisionPlan]]:
    plans = []
    for name in TREE_BASES if trees else SUITE_BASES:
        base = builtin_graph(name)
        for lengths in suite_lengths(base.num_edges):
            plans.append((name, SubdivisionPlan(base, lengths)))
    return plans


@dataclass
class SuiteRow:
    base: str
    lengths: tuple[int, ...]
    group: str
    set_label: str
    t_h: float
    bound: float
    gap: float
    term_min: float | None
    term_imag_max: float | None
    verdict: str
    kernel_check: str
    strict: dict[float, str] = field(default_factory=dict)
    method: str = ""
    cost: int = 0

    @property
    def ok(self) -> bool:
        if self.verdict != "pass" or self.kernel_check == "fail":
            return False
        if self.term_min is not None and (self.term_min < -TAU_NUM or self.term_imag_max > TAU_NUM):
            return False
        return all(v != "fail" for v in self.strict.values())

    def cells(self) -> list[str]:
        def num(x):
            return "" if x is None else repr(float(x))

        return [
            self.base, " ".join(map(str, self.lengths)), self.group, self.set_label,
            num(self.t_h), num(self.bound), num(self.gap), num(self.term_min), num(self.term_imag_max),
            self.verdict, self.kernel_check, *(self.strict.get(e, "n/a") for e in SUITE_EPSILONS),
            self.method, str(self.cost), "1" if self.ok else "0",
        ]

    def to_json(self) -> dict:
        return dict(zip(CSV_COLUMNS, self.cells()))


def _strict_cell(verdict) -> str:
    if verdict.passed:
        return "strict" if verdict.hypothesis else "pass"
    return "fail"


def _run_block(name: str, plan: SubdivisionPlan, group: AbelianGroup, fault: bool, kernel_cap: int) -> list[SuiteRow]:
    evaluator = SubdivisionEvaluator(plan, group, fault=fault)
    checks = evaluator.verify_structure(kernel_cap)
    if checks is None:
        kernel = "skipped"
    else:
        kernel = "pass" if all(c.passed for c in checks) else "fail"
    has_cycle = plan.base.cyclomatic_number > 0
    rows = []
    for s in all_symmetric_sets(group):
        report = evaluator.evaluate(s)
        strict: dict[float, str] = {}
        if has_cycle and len(s):
            for eps in SUITE_EPSILONS:
                strict[eps] = _strict_cell(strictness_from_report(report, s, eps))
        rows.append(SuiteRow(
            name, plan.lengths, str(group), s.label() or "{}", report.t_h, report.bound, report.gap,
            report.term_min, report.term_imag_max, report.verdict, kernel, strict, report.method, report.cost,
        ))
    return rows


def run_suite(trees: bool = False, fault: bool = False, threads: int = 1,
              max_order: int = SUITE_MAX_ORDER, kernel_cap: int = SUITE_KERNEL_CAP,
              max_instances: int | None = None) -> list[SuiteRow]:
    """All (plan, group, set) instances; ``fault`` corrupts one sign per doubled matrix."""
    blocks = [(name, plan, group) for name, plan in suite_plans(trees) for group in all_groups_up_to(max_order)]
    if max_instances is not None:
        total = sum(len(all_symmetric_sets(g)) for _, _, g in blocks)
        if total > max_instances:
            raise BudgetExceededError("suite", total, max_instances)

    def work(block):
        return _run_block(*block, fault, kernel_cap)

    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(work, blocks))
    else:
        results = [work(b) for b in blocks]
    return [row for rows in results for row in rows]


def summarize(rows: list[SuiteRow]) -> dict:
    failures = sum(1 for r in rows if not r.ok)
    gaps = [abs(r.gap) for r in rows]
    return {
        "instances": len(rows),
        "failures": failures,
        "maxAbsGap": max(gaps) if gaps else 0.0,
        "minTerm": min((r.term_min for r in rows if r.term_min is not None), default=None),
    }
