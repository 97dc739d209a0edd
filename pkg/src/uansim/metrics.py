"""Evaluation metrics over per-trial counters: PDR, delay, energy, overhead, lifetime.

Each metric returns (mean, sample_std, k); sample_std is None when fewer than
two trials survive the metric's exclusion rules.
"""

from __future__ import annotations

import logging
import statistics
from dataclasses import dataclass, field

log = logging.getLogger(__name__)


@dataclass
class TrialRecord:
    protocol: str
    seed: int
    label: str = ""
    horizon: float = 0.0
    generated: int = 0            # S_k
    delivered: int = 0            # R_k
    control_tx: int = 0           # C_k (DIO + DAO frames on the air)
    delays: list = field(default_factory=list)   # per delivered packet, seconds
    e_total: float = 0.0          # J consumed network-wide
    t_death: float = 0.0          # first sensor death, or horizon if none
    censored: bool = True         # no death by horizon
    dropped_loss: int = 0
    dropped_queue: int = 0
    dropped_no_route: int = 0
    dropped_loop: int = 0
    dropped_node_death: int = 0
    in_flight: int = 0
    data_attempts: int = 0
    data_acked: int = 0
    duplicate_acks: int = 0
    duplicate_rx: int = 0
    collision_checks: int = 0
    dodag_walks: int = 0
    node_spent: list = field(default_factory=list)
    node_death_times: list = field(default_factory=list)

    @property
    def pdr_pct(self) -> float:
        return 100.0 * self.delivered / self.generated if self.generated else 0.0

    @property
    def mean_delay(self) -> float | None:
        return sum(self.delays) / len(self.delays) if self.delays else None

    @property
    def energy_per_packet(self) -> float | None:
        return self.e_total / self.delivered if self.delivered else None

    @property
    def overhead_ratio(self) -> float | None:
        return self.control_tx / self.delivered if self.delivered else None


@dataclass
class AggregateStats:
    mean: float
    std: float | None
    k: int


def _aggregate(values: list[float]) -> AggregateStats:
    mean = sum(values) / len(values)
    std = statistics.stdev(values) if len(values) >= 2 else None
    return AggregateStats(mean=mean, std=std, k=len(values))


def pdr(records: list[TrialRecord]) -> AggregateStats:
    ratios = []
    for r in records:
        if r.generated == 0:
            log.warning("pdr: excluding trial seed=%s (no packets generated)", r.seed)
            continue
        ratios.append(100.0 * r.delivered / r.generated)
    if not ratios:
        raise ValueError("pdr: no trial generated any packets")
    return _aggregate(ratios)


def end_to_end_delay(records: list[TrialRecord]) -> AggregateStats:
    per_trial = []
    for r in records:
        if not r.delays:
            log.warning("delay: excluding trial seed=%s (no deliveries)", r.seed)
            continue
        per_trial.append(sum(r.delays) / len(r.delays))
    if not per_trial:
        raise ValueError("delay: no trial delivered any packets")
    return _aggregate(per_trial)


def energy_per_packet(records: list[TrialRecord]) -> AggregateStats:
    per_trial = []
    for r in records:
        if r.delivered == 0:
            log.warning("energy: excluding trial seed=%s (no deliveries)", r.seed)
            continue
        per_trial.append(r.e_total / r.delivered)
    if not per_trial:
        raise ValueError("energy: no trial delivered any packets")
    return _aggregate(per_trial)


def overhead(records: list[TrialRecord]) -> AggregateStats:
    per_trial = []
    for r in records:
        if r.delivered == 0:
            log.warning("overhead: excluding trial seed=%s (no deliveries)", r.seed)
            continue
        per_trial.append(r.control_tx / r.delivered)
    if not per_trial:
        raise ValueError("overhead: no trial delivered any packets")
    return _aggregate(per_trial)


def lifetime(records: list[TrialRecord]) -> AggregateStats:
    # censored trials report the horizon; callers see the censored count separately
    values = [r.t_death for r in records]
    if not values:
        raise ValueError("lifetime: no trials")
    return _aggregate(values)


def censored_count(records: list[TrialRecord]) -> int:
    return sum(1 for r in records if r.censored)
