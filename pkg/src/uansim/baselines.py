"""Comparison parent-selection policies: standard RPL OF0 and delay Q-routing.

Both run over exactly the same channel/MAC/energy/RPL plumbing as the RL
protocol; only selection and learning differ.
"""

from __future__ import annotations

from . import rpl


def of0_select(neighbors: list) -> int:
    """Minimum-rank neighbor; ties break on lowest node id."""
    if not neighbors:
        raise ValueError("of0_select needs a non-empty eligible set")
    return min(neighbors, key=lambda n: (n.rank, n.nid)).nid


class Of0Policy:
    """Hop-count RPL: legacy nodes that ignore the extended DIO fields."""

    name = "rpl-of0"
    pays_update_cost = False

    def select(self, node, eligible: list, now: float) -> int:
        return of0_select(eligible)

    def of_for_rank(self, entry: rpl.NeighborEntry) -> float:
        return 1.0

    def advertised_of(self, node) -> float:
        return 1.0

    def ack_annotation(self, node) -> float:
        return 0.0

    def notify_outcome(self, node, outcome, now: float):
        pass

    def on_neighbor_evicted(self, nid: int):
        pass

    def send_state(self, node, now: float):
        return None


def qrouting_update(estimate: float, observed: float, min_downstream: float,
                    eta: float = 0.1) -> float:
    if observed < 0:
        raise ValueError("observed delay must be >= 0")
    return estimate + eta * (observed + min_downstream - estimate)


class QRoutingPolicy:
    """Classic delay Q-routing: per-neighbor delivery-time estimates.

    Estimates start at 0 (optimistic), so every neighbor gets tried without an
    explicit exploration schedule. ACKs piggyback the receiver's own best
    estimate as the downstream term.
    """

    name = "q-routing"
    pays_update_cost = True

    def __init__(self, eta: float = 0.1, hysteresis: float = 0.05):
        self.eta = eta
        self.hysteresis = hysteresis
        self.delay_table: dict = {}     # nid -> estimated delivery time, s
        self.last_downstream: dict = {}  # nid -> last piggybacked estimate
        self.updates = 0

    def estimate(self, nid: int) -> float:
        return self.delay_table.get(nid, 0.0)

    def select(self, node, eligible: list, now: float) -> int:
        best = min(eligible, key=lambda n: (self.estimate(n.nid), n.rank, n.nid))
        incumbent = node.rpl.parent_id
        if incumbent is not None and best.nid != incumbent:
            cur = next((n for n in eligible if n.nid == incumbent), None)
            if cur is not None:
                e_cur = self.estimate(cur.nid)
                if self.estimate(best.nid) >= e_cur - self.hysteresis * abs(e_cur):
                    return incumbent
        return best.nid

    def of_for_rank(self, entry: rpl.NeighborEntry) -> float:
        return 1.0

    def advertised_of(self, node) -> float:
        return 1.0

    def ack_annotation(self, node) -> float:
        """Own min-downstream estimate, piggybacked on ACKs we transmit."""
        if node.is_sink:
            return 0.0
        if not self.delay_table:
            return 0.0
        return min(self.delay_table.values())

    def notify_outcome(self, node, outcome, now: float):
        if outcome.success:
            observed = outcome.delay
            downstream = outcome.min_downstream
            self.last_downstream[outcome.dest] = downstream
        else:
            observed = outcome.delay  # timeout time elapsed for the attempt
            downstream = self.last_downstream.get(outcome.dest, 0.0)
        self.delay_table[outcome.dest] = qrouting_update(
            self.estimate(outcome.dest), observed, downstream, self.eta)
        self.updates += 1

    def on_neighbor_evicted(self, nid: int):
        self.delay_table.pop(nid, None)
        self.last_downstream.pop(nid, None)

    def send_state(self, node, now: float):
        return None
