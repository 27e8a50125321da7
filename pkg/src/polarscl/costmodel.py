"""Gate-count, memory, latency and efficiency model of the list decoder
hardware, for the LLR-message design against the classic two-message
(log-likelihood) design.

All per-component counts are linear in the datapath width q and are kept as
exact rationals until a numeric q is supplied; totals are always recomputed
from the parts.  Conventions that make the model line up with the published
comparison table for the (n=1024, L=4) design point:

* processing elements: L n/2 of them, 17q gates each for the LLR design and
  34q for the two-message design (twice the datapath);
* metric units: L of them, 25/2 q gates, LLR design only;
* one sorting block of Batcher compare-and-swap units for 2L inputs at 4q
  gates per unit (a q-bit comparator plus the swap muxes);
* message memory: L(2n-1) values of q bits each, doubled for the two-message
  design; metric memory Lq and survivor-path memory Ln bits for both;
* latency 3n-2 cycles for the line-architecture component decoders and a
  critical path equal to the sorter depth, identical for both designs, hence
  equal normalized throughput.
"""

from dataclasses import dataclass
from fractions import Fraction

from .sortnet import build_batcher


@dataclass(frozen=True)
class GateExpr:
    """A count linear in the datapath width: q_coeff * q + const."""

    q_coeff: Fraction
    const: Fraction

    def __add__(self, other):
        return GateExpr(self.q_coeff + other.q_coeff, self.const + other.const)

    def times(self, count: int) -> "GateExpr":
        return GateExpr(self.q_coeff * count, self.const * count)

    def at(self, q: int):
        """Evaluate at a numeric width; exact int when the rationals cancel."""
        value = self.q_coeff * q + self.const
        return int(value) if value.denominator == 1 else float(value)

    def __str__(self):
        parts = []
        if self.q_coeff:
            parts.append(f"{self.q_coeff}q")
        if self.const or not parts:
            parts.append(str(self.const))
        return "+".join(parts)


def gate_expr(q_coeff=0, const=0) -> GateExpr:
    return GateExpr(Fraction(q_coeff), Fraction(const))


@dataclass(frozen=True)
class DesignCost:
    """One column of the comparison: per-component counts and totals."""

    design: str
    pe_count: int
    pe_gates_each: GateExpr
    pe_gates_total: GateExpr
    mcu_count: int
    mcu_gates_each: GateExpr
    mcu_gates_total: GateExpr
    sorter_cs_count: int
    sorter_depth_cs: int
    sorter_gates: GateExpr
    llr_memory_bits: GateExpr
    metric_memory_bits: GateExpr
    path_memory_bits: GateExpr
    total_gates: GateExpr
    latency_cycles: int
    normalized_throughput: float = 1.0

    def parts(self):
        return (
            self.pe_gates_total,
            self.mcu_gates_total,
            self.sorter_gates,
            self.llr_memory_bits,
            self.metric_memory_bits,
            self.path_memory_bits,
        )


def _validate(n: int, L: int) -> None:
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    if L < 1 or L & (L - 1):
        raise ValueError(f"L must be a power of two >= 1 (the sorter handles 2L inputs), got {L}")


def _common(n: int, L: int):
    net = build_batcher(2 * L)
    return {
        "pe_count": L * n // 2,
        "sorter_cs_count": net.comparator_count,
        "sorter_depth_cs": net.depth,
        "sorter_gates": gate_expr(4 * net.comparator_count),
        "metric_memory_bits": gate_expr(L),
        "path_memory_bits": gate_expr(0, L * n),
        "latency_cycles": 3 * n - 2,
    }


def llr_scl_cost(n: int, L: int) -> DesignCost:
    """Cost column of the LLR-message list decoder."""
    _validate(n, L)
    c = _common(n, L)
    pe_each = gate_expr(17)
    mcu_each = gate_expr(Fraction(25, 2))
    pe_total = pe_each.times(c["pe_count"])
    mcu_total = mcu_each.times(L)
    llr_mem = gate_expr(L * (2 * n - 1))
    total = pe_total + mcu_total + c["sorter_gates"] + llr_mem
    total = total + c["metric_memory_bits"] + c["path_memory_bits"]
    return DesignCost(
        design="llr_scl",
        pe_count=c["pe_count"],
        pe_gates_each=pe_each,
        pe_gates_total=pe_total,
        mcu_count=L,
        mcu_gates_each=mcu_each,
        mcu_gates_total=mcu_total,
        sorter_cs_count=c["sorter_cs_count"],
        sorter_depth_cs=c["sorter_depth_cs"],
        sorter_gates=c["sorter_gates"],
        llr_memory_bits=llr_mem,
        metric_memory_bits=c["metric_memory_bits"],
        path_memory_bits=c["path_memory_bits"],
        total_gates=total,
        latency_cycles=c["latency_cycles"],
    )


def ll_scl_cost(n: int, L: int) -> DesignCost:
    """Cost column of the two-message (log-likelihood) list decoder."""
    _validate(n, L)
    c = _common(n, L)
    pe_each = gate_expr(34)  # two messages: twice the LLR datapath
    zero = gate_expr(0)
    pe_total = pe_each.times(c["pe_count"])
    ll_mem = gate_expr(L * (4 * n - 2))
    total = pe_total + c["sorter_gates"] + ll_mem + c["metric_memory_bits"] + c["path_memory_bits"]
    return DesignCost(
        design="ll_scl",
        pe_count=c["pe_count"],
        pe_gates_each=pe_each,
        pe_gates_total=pe_total,
        mcu_count=0,
        mcu_gates_each=zero,
        mcu_gates_total=zero,
        sorter_cs_count=c["sorter_cs_count"],
        sorter_depth_cs=c["sorter_depth_cs"],
        sorter_gates=c["sorter_gates"],
        llr_memory_bits=ll_mem,
        metric_memory_bits=c["metric_memory_bits"],
        path_memory_bits=c["path_memory_bits"],
        total_gates=total,
        latency_cycles=c["latency_cycles"],
    )


@dataclass(frozen=True)
class CostReport:
    """Both design columns plus the derived ratios at a numeric width q."""

    n: int
    L: int
    q: int
    llr_scl: DesignCost
    ll_scl: DesignCost
    llr_total_gates: int
    ll_total_gates: int
    gate_reduction: float  # 1 - llr/ll
    normalized_efficiency_llr: float  # ll/llr, with ll_scl pinned at 1
    normalized_efficiency_ll: float = 1.0
    throughput_ratio: float = 1.0


def compare(n: int, L: int, q: int) -> CostReport:
    """Evaluate both designs at width ``q`` and derive the comparison ratios."""
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    llr = llr_scl_cost(n, L)
    ll = ll_scl_cost(n, L)
    llr_total = llr.total_gates.at(q)
    ll_total = ll.total_gates.at(q)
    return CostReport(
        n=n,
        L=L,
        q=q,
        llr_scl=llr,
        ll_scl=ll,
        llr_total_gates=llr_total,
        ll_total_gates=ll_total,
        gate_reduction=1.0 - llr_total / ll_total,
        normalized_efficiency_llr=ll_total / llr_total,
    )


def reference_check(n: int = 1024, L: int = 4, q: int = 6):
    """Compare the computed model against the published reference values for
    the (1024, 4) design point; returns a list of mismatch descriptions
    (empty = all good).  The efficiency anchor 1.98 +/- 0.005 assumes q = 6.
    """
    report = compare(n, L, q)
    llr, ll = report.llr_scl, report.ll_scl
    anchors = [
        ("pe_count", llr.pe_count, 2048),
        ("llr total gates", str(llr.total_gates), "43134q+4096"),
        ("ll total gates", str(ll.total_gates), "86088q+4096"),
        ("llr memory bits", str(llr.llr_memory_bits), "8188q"),
        ("latency cycles", llr.latency_cycles, 3070),
        ("sorter comparators", llr.sorter_cs_count, 19),
        ("sorter depth (C&S)", llr.sorter_depth_cs, 6),
    ]
    mismatches = [
        f"{name}: computed {got!r}, expected {want!r}"
        for name, got, want in anchors
        if got != want
    ]
    eff = report.normalized_efficiency_llr
    if abs(eff - 1.98) > 0.005:
        mismatches.append(f"normalized efficiency: computed {eff:.6f}, expected 1.98 +/- 0.005")
    return mismatches


def format_report(report: CostReport) -> str:
    """Aligned text table of both design columns."""
    llr, ll = report.llr_scl, report.ll_scl
    rows = [
        ("component", "llr_scl", "ll_scl"),
        ("PE count", str(llr.pe_count), str(ll.pe_count)),
        ("PE gates (each)", str(llr.pe_gates_each), str(ll.pe_gates_each)),
        ("PE gates (total)", str(llr.pe_gates_total), str(ll.pe_gates_total)),
        ("MCU count", str(llr.mcu_count), str(ll.mcu_count)),
        ("MCU gates (total)", str(llr.mcu_gates_total), str(ll.mcu_gates_total)),
        ("sorter C&S units", str(llr.sorter_cs_count), str(ll.sorter_cs_count)),
        ("sorter depth (C&S)", str(llr.sorter_depth_cs), str(ll.sorter_depth_cs)),
        ("sorter gates", str(llr.sorter_gates), str(ll.sorter_gates)),
        ("message memory bits", str(llr.llr_memory_bits), str(ll.llr_memory_bits)),
        ("metric memory bits", str(llr.metric_memory_bits), str(ll.metric_memory_bits)),
        ("path memory bits", str(llr.path_memory_bits), str(ll.path_memory_bits)),
        ("total gates", str(llr.total_gates), str(ll.total_gates)),
        (f"total gates @ q={report.q}", str(report.llr_total_gates), str(report.ll_total_gates)),
        ("latency (cycles)", str(llr.latency_cycles), str(ll.latency_cycles)),
        ("throughput (norm.)", "1", "1"),
        (
            "efficiency (norm.)",
            f"{report.normalized_efficiency_llr:.3f}",
            f"{report.normalized_efficiency_ll:.3f}",
        ),
        ("gate reduction", f"{report.gate_reduction:.1%}", "-"),
    ]
    w0 = max(len(r[0]) for r in rows)
    w1 = max(len(r[1]) for r in rows)
    return "\n".join(f"{a:<{w0}}  {b:>{w1}}  {c}" for a, b, c in rows)


def report_json(report: CostReport) -> dict:
    """JSON-friendly form: symbolic expressions as strings plus the ratios."""

    def column(d: DesignCost):
        return {
            "pe_count": d.pe_count,
            "pe_gates_each": str(d.pe_gates_each),
            "pe_gates_total": str(d.pe_gates_total),
            "mcu_count": d.mcu_count,
            "mcu_gates_total": str(d.mcu_gates_total),
            "sorter_cs_count": d.sorter_cs_count,
            "sorter_depth_cs": d.sorter_depth_cs,
            "sorter_gates": str(d.sorter_gates),
            "llr_memory_bits": str(d.llr_memory_bits),
            "metric_memory_bits": str(d.metric_memory_bits),
            "path_memory_bits": str(d.path_memory_bits),
            "total_gates": str(d.total_gates),
            "latency_cycles": d.latency_cycles,
            "normalized_throughput": d.normalized_throughput,
        }

    return {
        "n": report.n,
        "L": report.L,
        "q": report.q,
        "llr_scl": column(report.llr_scl),
        "ll_scl": column(report.ll_scl),
        "llr_total_gates": report.llr_total_gates,
        "ll_total_gates": report.ll_total_gates,
        "gate_reduction": report.gate_reduction,
        "normalized_efficiency_llr": report.normalized_efficiency_llr,
        "normalized_efficiency_ll": report.normalized_efficiency_ll,
        "throughput_ratio": report.throughput_ratio,
    }
