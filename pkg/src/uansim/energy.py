"""Per-node battery accounting: tx/rx/idle draw plus CPU cost per RL update."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class EnergyParams:
    p_tx_w: float = 0.5
    tx_time_per_packet_s: float = 1.5
    p_rx_w: float = 0.05
    p_idle_w: float = 0.001
    cpu_voltage_v: float = 1.8
    cpu_current_a: float = 0.003
    cpu_freq_hz: float = 16e6
    cycles_per_update: int = 1000
    initial_j: float = 5.0
    sink_energy_factor: float = 1000.0

    def validate(self):
        for name in ("p_tx_w", "tx_time_per_packet_s", "p_rx_w", "p_idle_w",
                     "cpu_voltage_v", "cpu_current_a", "cpu_freq_hz",
                     "cycles_per_update", "initial_j", "sink_energy_factor"):
            if getattr(self, name) <= 0 and name != "cycles_per_update":
                raise ValueError(f"energy.{name} must be > 0")
        if self.cycles_per_update < 0:
            raise ValueError("energy.cycles_per_update must be >= 0")


def tx_energy(params: EnergyParams, duration_s: float) -> float:
    if duration_s < 0:
        raise ValueError("duration must be >= 0")
    return params.p_tx_w * duration_s


def rx_energy(params: EnergyParams, duration_s: float) -> float:
    return params.p_rx_w * duration_s


def rl_update_energy(params: EnergyParams) -> float:
    return params.cpu_voltage_v * params.cpu_current_a * params.cycles_per_update / params.cpu_freq_hz


ALIVE = "alive"
DIED = "died"


@dataclass
class Battery:
    """Tracks spend rather than remainder so conservation is exact by construction."""
    initial: float = 5.0
    spent: float = 0.0
    death_time: float | None = None
    dead_debits: int = 0  # diagnostics: debits attempted after death

    @property
    def remaining(self) -> float:
        return max(self.initial - self.spent, 0.0)

    @property
    def alive(self) -> bool:
        return self.death_time is None

    def debit(self, amount: float, now: float) -> str:
        if amount < 0:
            raise ValueError("debit amount must be >= 0")
        if self.death_time is not None:
            self.dead_debits += 1
            return DIED
        headroom = self.initial - self.spent
        if amount >= headroom:
            self.spent += headroom  # clamp: never report negative remaining
            self.death_time = now
            return DIED
        self.spent += amount
        return ALIVE
