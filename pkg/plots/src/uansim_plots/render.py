"""Build the per-metric bar charts from one or more aggregate JSON files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

# canonical protocol order, identical in every figure
PROTOCOL_ORDER = ("rl-rpl-ua", "rpl-of0", "q-routing")

METRIC_LABELS = {
    "pdr_pct": "Packet delivery ratio (%)",
    "delay_s": "End-to-end delay (s)",
    "energy_per_packet_j": "Energy per delivered packet (J)",
    "overhead_ratio": "Control overhead ratio",
    "lifetime_s": "Network lifetime (s)",
}

BAR_COLORS = ("#2b6cb0", "#c05621", "#2f855a")


@dataclass
class FigureSpec:
    metric: str
    scenario: str
    protocols: tuple
    out_path: Path
    fmt: str = "svg"


class MissingProtocol(ValueError):
    pass


def load_aggregates(paths) -> dict:
    """Merge the scenario tables of one or more aggregate JSON files."""
    scenarios: dict = {}
    for path in paths:
        data = json.loads(Path(path).read_text())
        for label, protos in data.get("scenarios", {}).items():
            scenarios.setdefault(label, {}).update(protos)
    if not scenarios:
        raise ValueError("no scenarios found in the given aggregate files")
    return scenarios


def protocols_present(scenarios: dict) -> tuple:
    seen = set()
    for protos in scenarios.values():
        seen.update(protos)
    return tuple(p for p in PROTOCOL_ORDER if p in seen) or tuple(sorted(seen))


def series_for(scenarios: dict, scenario: str, metric: str, protocols) -> tuple:
    """(means, stds) in protocol order; std 0.0 where unavailable."""
    table = scenarios[scenario]
    means, stds = [], []
    for protocol in protocols:
        if protocol not in table or metric not in table[protocol]:
            raise MissingProtocol(
                f"scenario {scenario!r} has no {metric!r} for protocol {protocol!r}")
        cell = table[protocol][metric]
        means.append(cell["mean"])
        stds.append(cell["std"] if cell["std"] is not None else 0.0)
    return means, stds


def build_figure(scenarios: dict, spec: FigureSpec):
    means, stds = series_for(scenarios, spec.scenario, spec.metric, spec.protocols)
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    x = range(len(spec.protocols))
    ax.bar(x, means, yerr=stds, capsize=4,
           color=[BAR_COLORS[i % len(BAR_COLORS)] for i in x],
           edgecolor="black", linewidth=0.6)
    ax.set_xticks(list(x))
    ax.set_xticklabels(spec.protocols, rotation=12, fontsize=8)
    ax.set_ylabel(METRIC_LABELS.get(spec.metric, spec.metric))
    ax.set_title(f"{METRIC_LABELS.get(spec.metric, spec.metric)} — {spec.scenario}",
                 fontsize=9)
    ax.margins(y=0.15)
    fig.tight_layout()
    return fig


def render(scenarios: dict, spec: FigureSpec) -> Path:
    fig = build_figure(scenarios, spec)
    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out_path, format=spec.fmt)
    plt.close(fig)
    return spec.out_path


def render_all(scenarios: dict, out_dir, fmt: str = "svg",
               protocols=None) -> list:
    """One figure per (scenario, metric); returns the written paths."""
    out = Path(out_dir)
    protocols = tuple(protocols) if protocols else protocols_present(scenarios)
    written = []
    for scenario in sorted(scenarios):
        for metric in METRIC_LABELS:
            spec = FigureSpec(metric=metric, scenario=scenario,
                              protocols=protocols,
                              out_path=out / f"{metric}_{scenario}.{fmt}",
                              fmt=fmt)
            written.append(render(scenarios, spec))
    return written
