"""Collision-free TDMA MAC: slot schedule, per-node transmit queue,
acknowledgement matching and the retransmission ladder."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .rpl import Message


@dataclass
class TdmaSchedule:
    slot_length: float
    frame_length: float
    slot_of: dict          # node id -> slot index
    order: list            # slot index -> node id

    def owner(self, slot_number: int) -> int:
        return self.order[slot_number % len(self.order)]

    def slot_start(self, slot_number: int) -> float:
        return slot_number * self.slot_length


def build_schedule(node_count: int, tx_time: float, max_prop: float,
                   guard: float) -> TdmaSchedule:
    """Slots sized for the per-slot airtime budget plus worst-case propagation."""
    if node_count < 1:
        raise ValueError("node_count must be >= 1")
    if min(tx_time, max_prop, guard) < 0:
        raise ValueError("durations must be >= 0")
    slot = tx_time + max_prop + guard
    order = list(range(node_count))
    return TdmaSchedule(slot_length=slot, frame_length=slot * node_count,
                        slot_of={nid: i for i, nid in enumerate(order)},
                        order=order)


@dataclass
class PendingTx:
    packet_id: int
    frame: Message
    dest: int
    attempts: int = 0
    enqueued_at: float = 0.0
    last_sent_at: float = 0.0
    energy_spent: float = 0.0
    in_flight: bool = False
    send_state: tuple | None = None


@dataclass
class TxOutcome:
    packet_id: int
    dest: int
    success: bool
    delay: float            # send -> ACK for successes, timeout span otherwise
    energy: float           # cumulative ladder tx energy
    attempts: int
    send_state: tuple | None = None
    min_downstream: float = 0.0
    final: bool = True      # False for a timed-out attempt that will be retried


RETRY = "retry"
DROP = "drop"


class MacState:
    """Per-node MAC bookkeeping; the engine drives slots and the channel."""

    def __init__(self, capacity: int = 16, max_retries: int = 3):
        self.capacity = capacity
        self.max_retries = max_retries
        self.queue: deque = deque()          # DATA payloads awaiting a slot
        self.pending: dict = {}              # packet id -> PendingTx
        self.ack_backlog: list = []          # (sender, packet id) accepted since last slot
        self.duplicate_acks = 0

    def occupancy(self) -> int:
        in_flight = sum(1 for p in self.pending.values() if p.in_flight)
        return len(self.queue) + in_flight

    def enqueue_data(self, frame: Message, now: float) -> bool:
        """False when the queue is full (caller drops and skips the ACK)."""
        if self.occupancy() >= self.capacity:
            return False
        self.queue.append(frame)
        if frame.packet_id not in self.pending:
            self.pending[frame.packet_id] = PendingTx(
                packet_id=frame.packet_id, frame=frame, dest=-1, enqueued_at=now)
        return True

    def next_data(self) -> Message | None:
        return self.queue.popleft() if self.queue else None

    def mark_sent(self, frame: Message, dest: int, now: float, energy: float,
                  send_state) -> PendingTx:
        entry = self.pending[frame.packet_id]
        entry.dest = dest
        entry.attempts += 1
        entry.last_sent_at = now
        entry.energy_spent += energy
        entry.in_flight = True
        entry.send_state = send_state
        return entry

    def on_ack(self, packet_id: int, now: float, min_downstream: float = 0.0):
        """TxOutcome for a matched pending frame; None for a late/stray ACK."""
        entry = self.pending.get(packet_id)
        if entry is None or not entry.in_flight:
            self.duplicate_acks += 1
            return None
        del self.pending[packet_id]
        return TxOutcome(packet_id=packet_id, dest=entry.dest, success=True,
                         delay=now - entry.last_sent_at, energy=entry.energy_spent,
                         attempts=entry.attempts, send_state=entry.send_state,
                         min_downstream=min_downstream)

    def on_timeout(self, packet_id: int, attempt: int, now: float,
                   frame_length: float):
        """(RETRY|DROP, TxOutcome) when the timeout is still live, else None."""
        entry = self.pending.get(packet_id)
        if entry is None or not entry.in_flight or entry.attempts != attempt:
            return None
        outcome = TxOutcome(packet_id=packet_id, dest=entry.dest, success=False,
                            delay=frame_length, energy=entry.energy_spent,
                            attempts=entry.attempts, send_state=entry.send_state,
                            final=entry.attempts >= self.max_retries)
        if entry.attempts >= self.max_retries:
            del self.pending[packet_id]
            return DROP, outcome
        entry.in_flight = False
        self.queue.appendleft(entry.frame)   # retry ahead of fresh traffic
        return RETRY, outcome

    def drain(self) -> list:
        """All unresolved DATA payloads (used when the node dies)."""
        frames = [p.frame for p in self.pending.values()]
        self.queue.clear()
        self.pending.clear()
        return frames
