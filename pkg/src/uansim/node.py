"""Composite per-node simulation state."""

from __future__ import annotations

from dataclasses import dataclass, field

from .energy import Battery
from .mac import MacState
from .mobility import Position3D, WaypointState
from .rpl import NeighborFeatures, RplState


@dataclass
class NodeState:
    nid: int
    is_sink: bool
    pos: Position3D
    battery: Battery
    mac: MacState
    rpl: RplState = field(default_factory=RplState)
    policy: object = None
    waypoint: WaypointState | None = None
    # uplink bookkeeping feeding the agent's observed state
    data_attempts: int = 0
    data_acked: int = 0
    last_success_t: float = 0.0
    next_traffic_t: float | None = None

    @property
    def alive(self) -> bool:
        return self.battery.alive

    def own_features(self, now: float) -> NeighborFeatures:
        """Feature vector advertised in this node's DIOs."""
        e = self.battery.remaining / self.battery.initial if self.battery.initial else 0.0
        if self.is_sink:
            r = 1.0
        else:
            parent = self.rpl.neighbors.get(self.rpl.parent_id)
            r = parent.ack_ewma if parent is not None else 0.0
        q = min(self.mac.occupancy() / self.mac.capacity, 1.0) if self.mac.capacity else 0.0
        pdr = self.data_acked / self.data_attempts if self.data_attempts else 1.0
        t = max(now - self.last_success_t, 0.0)
        return NeighborFeatures(e=e, r=r, q=q, pdr=pdr, t=t)
