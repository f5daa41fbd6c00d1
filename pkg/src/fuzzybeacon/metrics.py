"""Per-node metric ledgers, result tables, and run comparison reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1

# Column order of the per-node result table. The two final-position columns
# follow the counters.
LEDGER_COLUMNS = (
    ("timesIntoBackoff", "times_into_backoff"),
    ("slotsBackoff", "slots_backoff"),
    ("macBusySeconds", "mac_busy_seconds"),
    ("phyBusySeconds", "phy_busy_seconds"),
    ("sentPackets", "sent_packets"),
    ("totalLostPackets", "total_lost_packets"),
    ("generatedWSM", "generated_wsm"),
    ("generatedBSM", "generated_bsm"),
    ("generatedWSA", "generated_wsa"),
    ("receivedWSM", "received_wsm"),
    ("receivedBSM", "received_bsm"),
    ("receivedWSA", "received_wsa"),
    ("droppedByGate", "dropped_by_gate"),
)

TABLE_HEADER = ("nodeId", "kind") + tuple(c for c, _ in LEDGER_COLUMNS) + ("finalX", "finalY")

_NAME_TO_ATTR = {col: attr for col, attr in LEDGER_COLUMNS}
_NAME_TO_ATTR.update({attr: attr for _, attr in LEDGER_COLUMNS})

_FLOAT_ATTRS = {"mac_busy_seconds", "phy_busy_seconds"}


class FrozenLedger(RuntimeError):
    """Write attempted on a ledger after its run completed."""


@dataclass
class MetricsLedger:
    """Monotone counters for one node; frozen once the run ends."""

    times_into_backoff: int = 0
    slots_backoff: int = 0
    mac_busy_seconds: float = 0.0
    phy_busy_seconds: float = 0.0
    sent_packets: int = 0
    total_lost_packets: int = 0
    generated_wsm: int = 0
    generated_bsm: int = 0
    generated_wsa: int = 0
    received_wsm: int = 0
    received_bsm: int = 0
    received_wsa: int = 0
    dropped_by_gate: int = 0
    _frozen: bool = field(default=False, repr=False, compare=False)

    def record(self, metric: str, amount: int | float = 1) -> None:
        """Increment a counter by a non-negative amount.

        ``metric`` accepts either spelling (table column or attribute name).
        """
        if self._frozen:
            raise FrozenLedger(f"ledger is frozen; cannot record {metric!r}")
        try:
            attr = _NAME_TO_ATTR[metric]
        except KeyError:
            raise KeyError(f"unknown metric {metric!r}") from None
        if amount < 0:
            raise ValueError(f"cannot record negative amount {amount!r} for {metric!r}")
        if attr in _FLOAT_ATTRS:
            setattr(self, attr, getattr(self, attr) + float(amount))
        else:
            setattr(self, attr, getattr(self, attr) + int(amount))

    def freeze(self) -> None:
        self._frozen = True

    @property
    def frozen(self) -> bool:
        return self._frozen

    def as_dict(self) -> dict[str, int | float]:
        return {col: getattr(self, attr) for col, attr in LEDGER_COLUMNS}


@dataclass
class NodeRecord:
    """One node's identity, final position, idle accounting, and ledger."""

    node_id: int
    kind: str
    final_x: float
    final_y: float
    ledger: MetricsLedger
    channel_idle_s: float = 0.0


@dataclass
class RunResult:
    """Frozen outcome of a completed simulation run."""

    scenario_fingerprint: dict
    scenario_name: str
    mode: str
    acceptance: str
    seed: int
    duration_s: float
    nodes: list[NodeRecord]
    channel_totals: dict[str, int]

    def summary(self) -> dict:
        totals: dict[str, float] = {col: 0 for col, _ in LEDGER_COLUMNS}
        for rec in self.nodes:
            for col, attr in LEDGER_COLUMNS:
                totals[col] += getattr(rec.ledger, attr)
        n = len(self.nodes)
        means = {col: (totals[col] / n if n else None) for col in totals}
        idle_values = [rec.channel_idle_s for rec in self.nodes]
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario_fingerprint,
            "scenario_name": self.scenario_name,
            "mode": self.mode,
            "acceptance": self.acceptance,
            "seed": self.seed,
            "duration_s": self.duration_s,
            "node_count": n,
            "totals": totals,
            "means": means,
            "mean_channel_idle_s": (sum(idle_values) / n if n else None),
            "total_channel_idle_s": sum(idle_values),
            "channel": dict(self.channel_totals),
        }


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_node_table(result: RunResult) -> str:
    """Per-node counters as deterministic comma-separated text."""
    lines = [",".join(TABLE_HEADER)]
    for rec in result.nodes:
        row = [str(rec.node_id), rec.kind]
        row.extend(_cell(getattr(rec.ledger, attr)) for _, attr in LEDGER_COLUMNS)
        row.append(_cell(float(rec.final_x)))
        row.append(_cell(float(rec.final_y)))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"


def write_node_table(result: RunResult, path: str | Path) -> None:
    try:
        Path(path).write_text(format_node_table(result), encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed writing node table to {path}: {exc}") from exc


def read_node_table(path: str | Path) -> list[dict]:
    """Parse a node table back into row dictionaries (exact round trip)."""
    p = Path(path)
    try:
        lines = p.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise OSError(f"failed reading node table from {p}: {exc}") from exc
    if not lines or tuple(lines[0].split(",")) != TABLE_HEADER:
        raise ValueError(f"{p}: unexpected or missing header")
    rows = []
    for line in lines[1:]:
        if not line:
            continue
        parts = line.split(",")
        row: dict[str, Any] = {"nodeId": int(parts[0]), "kind": parts[1]}
        for (col, attr), raw in zip(LEDGER_COLUMNS, parts[2:15]):
            row[col] = float(raw) if attr in _FLOAT_ATTRS else int(raw)
        row["finalX"] = float(parts[15])
        row["finalY"] = float(parts[16])
        rows.append(row)
    return rows


def write_summary(result: RunResult, path: str | Path) -> None:
    payload = json.dumps(result.summary(), indent=2, sort_keys=True)
    try:
        Path(path).write_text(payload + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed writing summary to {path}: {exc}") from exc


class ScenarioMismatch(ValueError):
    """Comparison attempted between runs of different scenarios or seeds."""


def _reduction_pct(baseline: float, other: float) -> float | None:
    if baseline > 0:
        return (baseline - other) / baseline * 100.0
    return None


def _increase_pct(baseline: float, other: float) -> float | None:
    if baseline > 0:
        return (other - baseline) / baseline * 100.0
    return None


def compare_runs(baseline: dict, fuzzy: dict) -> dict:
    """Baseline-vs-gated comparison report from two run summaries.

    Both runs must share the scenario and seed. Reductions are
    ``(baseline - other) / baseline`` in percent; undefined ratios (zero
    baseline) are reported as null, never as 0.
    """
    if baseline["scenario"] != fuzzy["scenario"] or baseline["seed"] != fuzzy["seed"]:
        raise ScenarioMismatch(
            "runs differ in scenario or seed: "
            f"{baseline['scenario_name']}/seed {baseline['seed']} vs "
            f"{fuzzy['scenario_name']}/seed {fuzzy['seed']}"
        )

    sum_reductions = {}
    mean_reductions = {}
    raw_deltas = {}
    for col, _ in LEDGER_COLUMNS:
        b, f = baseline["totals"][col], fuzzy["totals"][col]
        sum_reductions[col] = _reduction_pct(b, f)
        raw_deltas[col] = b - f
        bm, fm = baseline["means"][col], fuzzy["means"][col]
        mean_reductions[col] = _reduction_pct(bm, fm) if bm is not None else None

    b_idle = baseline.get("mean_channel_idle_s")
    f_idle = fuzzy.get("mean_channel_idle_s")
    idle_increase = (
        _increase_pct(b_idle, f_idle) if b_idle is not None and f_idle is not None else None
    )

    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": baseline["scenario"],
        "scenario_name": baseline["scenario_name"],
        "seed": baseline["seed"],
        "modes": {"baseline": baseline["mode"], "compared": fuzzy["mode"]},
        "acceptance": {"baseline": baseline["acceptance"], "compared": fuzzy["acceptance"]},
        "definitions": {
            "network_overhead": "total frames placed on air (sentPackets summed over nodes, rebroadcasts included)",
            "channel_idle": "run duration minus the union of frozen-backoff-slot and above-sensitivity reception intervals, per node",
            "reduction_pct": "(baseline - compared) / baseline * 100; null when the baseline total is zero",
        },
        "figures_of_merit": {
            "collided_packets_reduction_pct": sum_reductions["totalLostPackets"],
            "redundant_sent_reduction_pct": sum_reductions["sentPackets"],
            "network_overhead_reduction_pct": sum_reductions["sentPackets"],
            "channel_idle_increase_pct": idle_increase,
        },
        "reductions_from_sums": sum_reductions,
        "reductions_from_means": mean_reductions,
        "raw_total_deltas": raw_deltas,
        "baseline_totals": baseline["totals"],
        "compared_totals": fuzzy["totals"],
        "baseline_mean_channel_idle_s": b_idle,
        "compared_mean_channel_idle_s": f_idle,
    }


def write_report(report: dict, path: str | Path) -> None:
    payload = json.dumps(report, indent=2, sort_keys=True)
    try:
        Path(path).write_text(payload + "\n", encoding="utf-8")
    except OSError as exc:
        raise OSError(f"failed writing report to {path}: {exc}") from exc
