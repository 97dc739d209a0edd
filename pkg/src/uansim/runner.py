"""Experiment orchestration: protocol x trial sweep, CSV/JSON emission,
and a reproducibility manifest."""

from __future__ import annotations

import json
from pathlib import Path

from . import __version__
from .config import ScenarioConfig
from .engine import Trial
from .metrics import (TrialRecord, censored_count, end_to_end_delay,
                      energy_per_packet, lifetime, overhead, pdr)

CSV_HEADER = ("protocol,trial,seed,S,R,C,mean_delay_s,E_total_J,T_death_s,"
              "pdr_pct,energy_per_pkt_J,overhead_ratio")

METRIC_FUNS = {
    "pdr_pct": pdr,
    "delay_s": end_to_end_delay,
    "energy_per_packet_j": energy_per_packet,
    "overhead_ratio": overhead,
    "lifetime_s": lifetime,
}


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(value)


def csv_row(record: TrialRecord, trial: int) -> str:
    return ",".join([
        record.protocol, str(trial), str(record.seed),
        str(record.generated), str(record.delivered), str(record.control_tx),
        _fmt(record.mean_delay), _fmt(record.e_total), _fmt(record.t_death),
        _fmt(record.pdr_pct), _fmt(record.energy_per_packet),
        _fmt(record.overhead_ratio),
    ])


def aggregate_stats(records: list[TrialRecord]) -> dict:
    out = {}
    for name, fun in METRIC_FUNS.items():
        stats = fun(records)
        out[name] = {"mean": stats.mean, "std": stats.std, "k": stats.k}
    out["censored_trials"] = censored_count(records)
    return out


def run_experiment(config: ScenarioConfig, protocols: list[str], k: int,
                   base_seed: int, out_dir: str | Path,
                   trace: bool = False, trace_agent: bool = False) -> dict:
    """K trials per protocol with seeds base_seed+i; returns the manifest."""
    if k < 1:
        raise ValueError("trial count must be >= 1")
    config.validate()
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "trials.csv"
    agg_path = out / "aggregate.json"
    manifest_path = out / "manifest.json"

    records: dict[str, list[TrialRecord]] = {}
    trace_paths: list[str] = []
    with csv_path.open("w") as fh:
        fh.write(CSV_HEADER + "\n")
        for protocol in protocols:
            records[protocol] = []
            for trial in range(k):
                seed = base_seed + trial
                sink = None
                if trace:
                    lines = []
                    sink = lines.append
                record = run_trial_with_trace(config, protocol, seed, sink,
                                              trace_agent)
                if trace:
                    trace_path = out / f"trace_{protocol}_{trial}.log"
                    trace_path.write_text("\n".join(lines) + "\n")
                    trace_paths.append(trace_path.name)
                records[protocol].append(record)
                fh.write(csv_row(record, trial) + "\n")

    aggregate = {"scenarios": {config.label: {
        protocol: aggregate_stats(recs) for protocol, recs in records.items()
    }}}
    agg_path.write_text(json.dumps(aggregate, indent=2, sort_keys=True) + "\n")

    manifest = {
        "tool": "uansim",
        "version": __version__,
        "label": config.label,
        "config_sha256": config.sha256(),
        "config": config.to_dict(),
        "protocols": list(protocols),
        "trials": k,
        "base_seed": base_seed,
        "seeds": [base_seed + i for i in range(k)],
        "outputs": {"csv": csv_path.name, "aggregate": agg_path.name,
                    "traces": trace_paths},
    }
    manifest_path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def run_trial_with_trace(config: ScenarioConfig, protocol: str, seed: int,
                         trace_sink, trace_agent: bool) -> TrialRecord:
    trial = Trial(config, protocol, seed, trace=trace_sink)
    if trace_agent and trace_sink is not None:
        for node in trial.nodes:
            if hasattr(node.policy, "trace_hook"):
                node.policy.trace_hook = trace_sink
    return trial.run()


def load_records_from_csv(path: str | Path) -> list[dict]:
    """Parse the trials CSV back into dicts (used for cross-checks)."""
    import csv as _csv
    with Path(path).open() as fh:
        return list(_csv.DictReader(fh))
