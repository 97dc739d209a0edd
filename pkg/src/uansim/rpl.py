"""RPL control plane: extended DIO/DAO messages, neighbor table, rank math.

Parent selection itself is pluggable (RL agent or a baseline policy); this
module owns the protocol-agnostic plumbing shared by every protocol.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

DATA = "DATA"
DIO = "DIO"
DAO = "DAO"
ACK = "ACK"

UNATTACHED = math.inf
ROOT_RANK = 0.0

# ack-ewma smoothing per ACK outcome
EWMA_ALPHA = 0.2
# T feature is clipped at this many seconds when a [0,1] value is needed
T_CLIP_S = 60.0


@dataclass
class NeighborFeatures:
    e: float = 1.0     # normalized residual energy
    r: float = 1.0     # link reliability (1/ETX as a probability)
    q: float = 0.0     # buffer occupancy fraction
    pdr: float = 1.0   # historical delivery ratio
    t: float = 0.0     # seconds since last successful transmission


@dataclass
class Message:
    kind: str
    src: int
    dst: int | None            # None = broadcast
    packet_id: int
    created_at: float
    size: int
    # DIO payload
    rank: float | None = None
    of_value: float | None = None
    features: NeighborFeatures | None = None
    # DATA payload
    origin: int | None = None
    hops: int = 0
    # ACK payload: (sender, packet_id) pairs accepted since the last slot,
    # plus the receiver's min-downstream delay estimate (Q-routing piggyback)
    ack_pairs: tuple = ()
    min_downstream: float = 0.0


@dataclass
class NeighborEntry:
    nid: int
    features: NeighborFeatures
    rank: float
    of_value: float
    last_dio_at: float
    ack_ewma: float = 1.0      # optimistic init, matches the fresh-node PDR convention
    outcome_window: deque = field(default_factory=lambda: deque(maxlen=10))
    unusable_until: float = 0.0  # set when a whole retry ladder fails (local repair)


@dataclass
class RplState:
    rank: float = UNATTACHED
    parent_id: int | None = None
    neighbors: dict = field(default_factory=dict)   # nid -> NeighborEntry
    dio_due: bool = False
    dao_due: bool = False
    joins: int = 0
    parent_changes: int = 0
    dio_tx: int = 0
    dao_tx: int = 0
    accepted_ids: set = field(default_factory=set)  # duplicate suppression

    @property
    def attached(self) -> bool:
        return self.rank != UNATTACHED


def clip_t(t_seconds: float) -> float:
    return min(max(t_seconds, 0.0), T_CLIP_S) / T_CLIP_S


def compute_rank(parent_rank: float, of_value: float,
                 min_hop_increase: float = 1.0, scale: float = 1.0) -> float:
    if not 0.0 <= of_value <= 1.0:
        raise ValueError("of_value must be in [0, 1]")
    return parent_rank + min_hop_increase + scale * (1.0 - of_value)


def make_dio(src: int, packet_id: int, now: float, size: int, rank: float,
             of_value: float, features: NeighborFeatures) -> Message:
    return Message(kind=DIO, src=src, dst=None, packet_id=packet_id,
                   created_at=now, size=size, rank=rank, of_value=of_value,
                   features=features)


def make_dao(src: int, dst: int, packet_id: int, now: float, size: int) -> Message:
    return Message(kind=DAO, src=src, dst=dst, packet_id=packet_id,
                   created_at=now, size=size)


def upsert_neighbor(state: RplState, dio: Message, now: float) -> NeighborEntry:
    """Insert/update the sender's entry from a received DIO."""
    entry = state.neighbors.get(dio.src)
    if entry is None:
        entry = NeighborEntry(nid=dio.src, features=dio.features, rank=dio.rank,
                              of_value=dio.of_value, last_dio_at=now)
        state.neighbors[dio.src] = entry
    else:
        entry.features = dio.features
        entry.rank = dio.rank
        entry.of_value = dio.of_value
        entry.last_dio_at = now
    return entry


def sweep_expired(state: RplState, now: float, expiry_window: float) -> list[int]:
    """Evict neighbors silent for the expiry window; returns evicted ids."""
    evicted = [nid for nid, e in state.neighbors.items()
               if now - e.last_dio_at > expiry_window]
    for nid in evicted:
        del state.neighbors[nid]
    return evicted


def record_ack_outcome(entry: NeighborEntry, success: bool):
    sample = 1.0 if success else 0.0
    entry.ack_ewma = (1.0 - EWMA_ALPHA) * entry.ack_ewma + EWMA_ALPHA * sample
    entry.outcome_window.append(sample)


def eligible_parents(state: RplState, self_id: int, parent_of,
                     now: float = 0.0) -> list[NeighborEntry]:
    """Neighbors usable as parent: advertised rank below ours, reachable,
    and no cycle.

    parent_of(nid) exposes current parent pointers so a candidate whose
    upward chain passes through us is rejected (keeps the DODAG acyclic at
    every instant, for every policy). Neighbors under an unreachability
    cooldown are skipped.
    """
    out = []
    for nid in sorted(state.neighbors):
        entry = state.neighbors[nid]
        if entry.rank == UNATTACHED or entry.rank >= state.rank:
            continue
        if entry.unusable_until > now:
            continue
        if _creates_cycle(nid, self_id, parent_of):
            continue
        out.append(entry)
    return out


def _creates_cycle(candidate: int, self_id: int, parent_of, limit: int = 10_000) -> bool:
    hop = candidate
    for _ in range(limit):
        if hop == self_id:
            return True
        hop = parent_of(hop)
        if hop is None:
            return False
    return True
