"""Deterministic discrete-event core: clock, event queue, seeded RNG streams,
and the full per-trial orchestration of channel, MAC, RPL and policies."""

from __future__ import annotations

import hashlib
import heapq
import math
import random

from . import channel as ch
from . import mobility as mob
from . import rpl
from .agent import RlPolicy
from .baselines import Of0Policy, QRoutingPolicy
from .config import ScenarioConfig
from .energy import Battery, DIED, rl_update_energy, rx_energy, tx_energy
from .mac import DROP, MacState, TxOutcome, build_schedule
from .metrics import TrialRecord
from .node import NodeState

TRAFFIC_GEN = "TrafficGen"
SLOT_START = "SlotStart"
FRAME_ARRIVAL = "FrameArrival"
ACK_TIMEOUT = "AckTimeout"
DIO_TIMER = "DioTimer"
MOBILITY_UPDATE = "MobilityUpdate"
METRICS_SNAPSHOT = "MetricsSnapshot"

STREAM_NAMES = ("topology", "mobility", "channel", "agent", "traffic")


def stream_seed(seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


class RngStreams:
    """One independent generator per subsystem; identical (seed, config) runs
    draw identical sequences regardless of host."""

    def __init__(self, seed: int):
        for name in STREAM_NAMES:
            setattr(self, name, random.Random(stream_seed(seed, name)))


class EventQueue:
    """Priority queue ordered by (time, insertion sequence)."""

    def __init__(self):
        self._heap: list = []
        self._seq = 0
        self.clock = 0.0

    def schedule(self, at: float, kind: str, payload: tuple = ()):
        if at < self.clock:
            raise RuntimeError(f"event {kind} scheduled in the past: {at} < {self.clock}")
        heapq.heappush(self._heap, (at, self._seq, kind, payload))
        self._seq += 1

    def pop(self):
        at, _seq, kind, payload = heapq.heappop(self._heap)
        if at < self.clock:
            raise RuntimeError("clock went backwards")
        self.clock = at
        return at, kind, payload

    def __len__(self):
        return len(self._heap)


def traffic_times(period: float, offset: float, horizon: float,
                  stop: float | None = None) -> list[float]:
    """CBR generation instants: offset + k*period, strictly before horizon/stop."""
    end = horizon if stop is None else min(horizon, stop)
    times = []
    t = offset
    while t < end:
        times.append(t)
        t += period
    return times


class PacketRegistry:
    """Single terminal state per generated packet; conservation is structural."""

    DROP_REASONS = ("loss", "queue", "no-route", "loop", "node-death")

    def __init__(self):
        self._next_pid = 1
        self.state: dict = {}   # pid -> None | ("delivered", delay) | ("dropped", reason)
        self.generated = 0
        self.delivered = 0
        self.delays: list = []
        self.deliveries: list = []   # (pid, origin, hops, delay)
        self.dropped = {reason: 0 for reason in self.DROP_REASONS}
        self.duplicate_deliveries = 0

    def new_packet(self) -> int:
        pid = self._next_pid
        self._next_pid += 1
        self.state[pid] = None
        self.generated += 1
        return pid

    def control_id(self) -> int:
        # control frames share the id space but are not tracked packets
        pid = self._next_pid
        self._next_pid += 1
        return pid

    def deliver(self, pid: int, delay: float, origin: int = -1,
                hops: int = 0) -> bool:
        if self.state.get(pid, "absent") is None:
            self.state[pid] = ("delivered", delay)
            self.delivered += 1
            self.delays.append(delay)
            self.deliveries.append((pid, origin, hops, delay))
            return True
        self.duplicate_deliveries += 1
        return False

    def drop(self, pid: int, reason: str):
        if self.state.get(pid, "absent") is None:
            self.state[pid] = ("dropped", reason)
            self.dropped[reason] += 1

    def in_flight(self) -> int:
        return sum(1 for v in self.state.values() if v is None)


class Trial:
    """One protocol, one seed, one scenario: strictly single-threaded."""

    def __init__(self, config: ScenarioConfig, protocol: str, seed: int,
                 trace=None):
        config.validate()
        self.cfg = config
        self.protocol = protocol
        self.seed = seed
        self.trace = trace
        self.rng = RngStreams(seed)
        self.events = EventQueue()
        self.registry = PacketRegistry()
        self.horizon = config.horizon_s

        cp = config.channel
        self.dio_size = config.rpl.dio_size_b
        self.dao_size = config.rpl.dao_size_b
        self.ack_size = config.mac.ack_size_b
        self.data_air = ch.airtime_s(config.traffic.payload_b, cp)
        self.dio_air = ch.airtime_s(self.dio_size, cp)
        self.dao_air = ch.airtime_s(self.dao_size, cp)
        self.ack_air = ch.airtime_s(self.ack_size, cp)
        self.cutoff = {
            size: ch.delivery_cutoff_m(size * 8, cp)
            for size in {config.traffic.payload_b, self.dio_size, self.dao_size,
                         self.ack_size}
        }
        diagonal = math.sqrt(3.0) * config.area_side_m
        # no frame survives past the delivery cutoff, so the slot only needs to
        # cover propagation over the farthest deliverable link
        self.max_prop = min(diagonal, max(self.cutoff.values())) / cp.sound_speed
        budget = self.data_air + self.ack_air + max(self.dio_air, self.dao_air)
        self.schedule = build_schedule(config.node_count, budget, self.max_prop,
                                       config.mac.guard_s)
        self.e_tx_data = tx_energy(config.energy, self.data_air)
        self.expiry_window = config.rpl.expiry_periods * max(
            config.rpl.dio_period_s, self.schedule.frame_length)

        positions = mob.deploy(config.node_count, config.area_side_m, self.rng.topology)
        self.nodes: list[NodeState] = []
        for nid in range(config.node_count):
            is_sink = nid == 0
            initial = config.energy.initial_j * (config.energy.sink_energy_factor
                                                 if is_sink else 1.0)
            node = NodeState(
                nid=nid, is_sink=is_sink, pos=positions[nid],
                battery=Battery(initial=initial),
                mac=MacState(capacity=config.mac.queue_capacity,
                             max_retries=config.mac.max_retries),
                policy=self._make_policy(protocol),
            )
            if is_sink:
                node.rpl.rank = rpl.ROOT_RANK
            if config.mobility.model == mob.RANDOM_WAYPOINT and not is_sink:
                node.waypoint = mob.fresh_waypoint(config.area_side_m,
                                                   config.mobility, self.rng.mobility)
            self.nodes.append(node)

        self.control_tx = 0
        self.duplicate_rx = 0
        self.daos_rx = 0
        self.channel_busy_until = 0.0
        self.collision_checks = 0
        self.dodag_walks = 0
        self.last_idle_t = 0.0

        self._schedule_initial()

    def _make_policy(self, protocol: str):
        if protocol == "rl-rpl-ua":
            return RlPolicy(self.cfg.rl, self.rng.agent, self.horizon,
                            self.schedule.frame_length, self.e_tx_data)
        if protocol == "rpl-of0":
            return Of0Policy()
        if protocol == "q-routing":
            return QRoutingPolicy(eta=self.cfg.rl.eta,
                                  hysteresis=self.cfg.rl.hysteresis)
        raise ValueError(f"unknown protocol: {protocol!r}")

    def _schedule_initial(self):
        if self.horizon <= 0:
            return
        for node in self.nodes:
            self.events.schedule(0.0, DIO_TIMER, (node.nid,))
        for node in self.nodes[1:]:
            if self.cfg.traffic.offset_mode == "uniform":
                offset = self.rng.traffic.uniform(0.0, self.cfg.traffic.period_s)
            else:
                offset = 0.0
            if offset < self.horizon:
                node.next_traffic_t = offset
                self.events.schedule(offset, TRAFFIC_GEN, (node.nid,))
        if self.cfg.mobility.model == mob.RANDOM_WAYPOINT:
            self._schedule_if(self.cfg.mobility.update_interval_s, MOBILITY_UPDATE, ())
        self._schedule_if(self.cfg.snapshot_interval_s, METRICS_SNAPSHOT, ())
        self.events.schedule(0.0, SLOT_START, (0,))

    # -- energy ----------------------------------------------------------

    def _debit(self, node: NodeState, amount: float, now: float) -> str:
        was_alive = node.battery.alive
        state = node.battery.debit(amount, now)
        if state == DIED and was_alive:
            self._on_node_death(node, now)
        return state

    def _on_node_death(self, node: NodeState, now: float):
        self._log(now, f"death node={node.nid}")
        for frame in node.mac.drain():
            self.registry.drop(frame.packet_id, "node-death")
        node.rpl.dio_due = False
        node.rpl.dao_due = False
        node.mac.ack_backlog.clear()

    # -- event loop --------------------------------------------------------

    def run(self) -> TrialRecord:
        handlers = {
            SLOT_START: self._on_slot_start,
            FRAME_ARRIVAL: self._on_frame_arrival,
            ACK_TIMEOUT: self._on_ack_timeout,
            DIO_TIMER: self._on_dio_timer,
            TRAFFIC_GEN: self._on_traffic_gen,
            MOBILITY_UPDATE: self._on_mobility_update,
            METRICS_SNAPSHOT: self._on_snapshot,
        }
        while len(self.events):
            at, kind, payload = self.events.pop()
            handlers[kind](at, *payload)
        self._idle_debit(self.horizon)
        return self._finish()

    def _schedule_if(self, at: float, kind: str, payload: tuple = ()):
        if at <= self.horizon:
            self.events.schedule(at, kind, payload)

    def _log(self, now: float, line: str):
        if self.trace is not None:
            self.trace(f"{now:.6f} {line}")

    # -- slot machinery ------------------------------------------------------

    def _on_slot_start(self, now: float, slot_number: int):
        node = self.nodes[self.schedule.owner(slot_number)]
        if node.alive:
            self._sweep_neighbors(node, now)
            t = now
            if node.mac.ack_backlog:
                pairs = tuple(node.mac.ack_backlog)
                node.mac.ack_backlog = []
                ack = rpl.Message(kind=rpl.ACK, src=node.nid, dst=None,
                                  packet_id=self.registry.control_id(),
                                  created_at=now, size=self.ack_size,
                                  ack_pairs=pairs,
                                  min_downstream=node.policy.ack_annotation(node))
                if self._transmit(node, ack, t, self.ack_air, broadcast=True):
                    self._log(t, f"ack tx src={node.nid} n={len(pairs)}")
                    if self.cfg.mac.count_acks_in_overhead:
                        self.control_tx += 1
                t += self.ack_air
            if node.alive and node.rpl.dio_due and (node.is_sink or node.rpl.attached):
                dio = rpl.make_dio(node.nid, self.registry.control_id(), now,
                                   self.dio_size, node.rpl.rank,
                                   node.policy.advertised_of(node),
                                   node.own_features(now))
                if self._transmit(node, dio, t, self.dio_air, broadcast=True):
                    node.rpl.dio_due = False
                    node.rpl.dio_tx += 1
                    self.control_tx += 1
                    self._log(t, f"dio tx src={node.nid} rank={node.rpl.rank:.3f}")
                t += self.dio_air
            elif node.alive and node.rpl.dao_due and node.rpl.parent_id is not None:
                dao = rpl.make_dao(node.nid, node.rpl.parent_id,
                                   self.registry.control_id(), now, self.dao_size)
                if self._transmit(node, dao, t, self.dao_air, broadcast=False):
                    node.rpl.dao_due = False
                    node.rpl.dao_tx += 1
                    self.control_tx += 1
                    self._log(t, f"dao tx src={node.nid} dst={node.rpl.parent_id}")
                t += self.dao_air
            if node.alive and node.mac.queue and node.rpl.parent_id is not None:
                self._send_data(node, t)
        next_slot = slot_number + 1
        self._schedule_if(self.schedule.slot_start(next_slot), SLOT_START,
                          (next_slot,))

    def _send_data(self, node: NodeState, t_send: float):
        frame = node.mac.queue[0]
        dest = node.rpl.parent_id
        out = rpl.Message(kind=rpl.DATA, src=node.nid, dst=dest,
                          packet_id=frame.packet_id, created_at=frame.created_at,
                          size=frame.size, origin=frame.origin, hops=frame.hops)
        send_state = node.policy.send_state(node, t_send)
        if not self._transmit(node, out, t_send, self.data_air, broadcast=False):
            return  # died mid-slot; the queued frame is handled by the death drain
        node.mac.queue.popleft()
        pending = node.mac.mark_sent(frame, dest, t_send, self.e_tx_data, send_state)
        node.data_attempts += 1
        self._schedule_if(t_send + self.schedule.frame_length, ACK_TIMEOUT,
                          (node.nid, frame.packet_id, pending.attempts))
        self._log(t_send, f"data tx src={node.nid} dst={dest} "
                          f"pid={frame.packet_id} attempt={pending.attempts}")

    def _transmit(self, sender: NodeState, frame: rpl.Message, t_start: float,
                  airtime: float, broadcast: bool) -> bool:
        """Put one frame on the air; returns False if the sender died trying."""
        if self._debit(sender, tx_energy(self.cfg.energy, airtime), t_start) == DIED:
            return False
        if t_start < self.channel_busy_until - 1e-9:
            raise AssertionError(
                f"TDMA collision: tx at {t_start} while channel busy until "
                f"{self.channel_busy_until}")
        self.channel_busy_until = t_start + airtime
        self.collision_checks += 1
        cutoff = self.cutoff[frame.size]
        bits = frame.size * 8
        if broadcast:
            receivers = [n for n in self.nodes if n.nid != sender.nid and n.alive]
        else:
            target = self.nodes[frame.dst]
            receivers = [target] if target.alive else []
        for receiver in receivers:
            d = mob.distance(sender.pos, receiver.pos)
            if d > cutoff:
                continue
            result = ch.frame_delivery(d, bits, self.cfg.channel, self.rng.channel)
            if result is not ch.LOST:
                self._schedule_if(t_start + airtime + result.delay,
                                  FRAME_ARRIVAL, (receiver.nid, frame))
        return True

    # -- receive paths -----------------------------------------------------

    def _on_frame_arrival(self, now: float, receiver_id: int, frame: rpl.Message):
        node = self.nodes[receiver_id]
        if not node.alive:
            return
        airtime = ch.airtime_s(frame.size, self.cfg.channel)
        if self._debit(node, rx_energy(self.cfg.energy, airtime), now) == DIED:
            return
        if frame.kind == rpl.DIO:
            self._handle_dio(node, frame, now)
        elif frame.kind == rpl.DATA:
            self._handle_data(node, frame, now)
        elif frame.kind == rpl.ACK:
            self._handle_ack(node, frame, now)
        elif frame.kind == rpl.DAO:
            self.daos_rx += 1

    def _handle_dio(self, node: NodeState, frame: rpl.Message, now: float):
        if frame.src == node.nid:
            return
        rpl.upsert_neighbor(node.rpl, frame, now)
        self._maybe_reselect(node, now, explore=False)

    def _handle_data(self, node: NodeState, frame: rpl.Message, now: float):
        pid = frame.packet_id
        if node.is_sink:
            # frame.hops counts links already traversed; add the final one
            self.registry.deliver(pid, now - frame.created_at, frame.origin,
                                  frame.hops + 1)
            node.mac.ack_backlog.append((frame.src, pid))
            self._log(now, f"delivered pid={pid} origin={frame.origin} hops={frame.hops + 1}")
            return
        if pid in node.rpl.accepted_ids:
            self.duplicate_rx += 1
            node.mac.ack_backlog.append((frame.src, pid))  # re-ACK, do not re-queue
            return
        hops = frame.hops + 1
        if hops > self.cfg.node_count:
            self.registry.drop(pid, "loop")
            return
        fwd = rpl.Message(kind=rpl.DATA, src=node.nid, dst=None, packet_id=pid,
                          created_at=frame.created_at, size=frame.size,
                          origin=frame.origin, hops=hops)
        if node.mac.enqueue_data(fwd, now):
            node.rpl.accepted_ids.add(pid)
            node.mac.ack_backlog.append((frame.src, pid))
        # full queue: no ACK; the sender still holds the live copy and retries

    def _handle_ack(self, node: NodeState, frame: rpl.Message, now: float):
        acker = frame.src
        matched = False
        for snd, pid in frame.ack_pairs:
            if snd != node.nid:
                continue
            pending = node.mac.pending.get(pid)
            if pending is not None and pending.in_flight and pending.dest != acker:
                node.mac.duplicate_acks += 1   # stale ACK from a previous parent
                continue
            outcome = node.mac.on_ack(pid, now, min_downstream=frame.min_downstream)
            if outcome is None:
                continue
            matched = True
            node.data_acked += 1
            node.last_success_t = now
            self._complete_outcome(node, outcome, now)
        if matched and node.alive:
            self._maybe_reselect(node, now, explore=True)

    def _complete_outcome(self, node: NodeState, outcome: TxOutcome, now: float):
        entry = node.rpl.neighbors.get(outcome.dest)
        if entry is not None:
            rpl.record_ack_outcome(entry, outcome.success)
        node.policy.notify_outcome(node, outcome, now)
        if node.policy.pays_update_cost:
            self._debit(node, rl_update_energy(self.cfg.energy), now)

    def _on_ack_timeout(self, now: float, nid: int, pid: int, attempt: int):
        node = self.nodes[nid]
        if not node.alive:
            return
        result = node.mac.on_timeout(pid, attempt, now, self.schedule.frame_length)
        if result is None:
            return
        action, outcome = result
        self._log(now, f"timeout node={nid} pid={pid} attempt={attempt} -> {action}")
        self._complete_outcome(node, outcome, now)
        if action == DROP:
            self.registry.drop(pid, "loss")
            # a whole ladder failed: treat the neighbor as unreachable for a
            # while (local repair) instead of hammering a dead or hopeless link
            entry = node.rpl.neighbors.get(outcome.dest)
            if entry is not None:
                entry.unusable_until = now + self.cfg.rpl.unreachable_cooldown_s
            if node.rpl.parent_id == outcome.dest:
                node.rpl.parent_id = None
                node.rpl.rank = rpl.UNATTACHED
        if node.alive:
            self._maybe_reselect(node, now, explore=True)

    # -- control plane -------------------------------------------------------

    def _on_dio_timer(self, now: float, nid: int):
        node = self.nodes[nid]
        if node.alive:
            node.rpl.dio_due = True
            self._schedule_if(now + self.cfg.rpl.dio_period_s, DIO_TIMER, (nid,))

    def _sweep_neighbors(self, node: NodeState, now: float):
        evicted = rpl.sweep_expired(node.rpl, now, self.expiry_window)
        for nid in evicted:
            node.policy.on_neighbor_evicted(nid)
        if node.rpl.parent_id is not None and node.rpl.parent_id in evicted:
            node.rpl.parent_id = None
            node.rpl.rank = rpl.UNATTACHED
            self._maybe_reselect(node, now, explore=False)

    def _parent_of(self, nid: int):
        return self.nodes[nid].rpl.parent_id

    def _maybe_reselect(self, node: NodeState, now: float, explore: bool):
        """Re-run parent selection and refresh the node's rank.

        Exploration only applies at transmission-outcome cadence; selections
        triggered by observations (DIOs, sweeps) are greedy so that parent
        flapping stays bounded.
        """
        if node.is_sink or not node.alive:
            return
        eligible = rpl.eligible_parents(node.rpl, node.nid, self._parent_of, now)
        if eligible:
            if explore or not isinstance(node.policy, RlPolicy):
                choice = node.policy.select(node, eligible, now)
            else:
                choice = node.policy.select_greedy(node, eligible, now)
            if choice != node.rpl.parent_id:
                was_attached = node.rpl.parent_id is not None
                node.rpl.parent_id = choice
                if was_attached:
                    node.rpl.parent_changes += 1
                else:
                    node.rpl.joins += 1
                node.rpl.dao_due = True
                self._log(now, f"parent node={node.nid} -> {choice}")
        entry = node.rpl.neighbors.get(node.rpl.parent_id)
        if entry is not None:
            of = min(max(node.policy.of_for_rank(entry), 0.0), 1.0)
            node.rpl.rank = rpl.compute_rank(entry.rank, of,
                                             self.cfg.rpl.min_hop_increase,
                                             self.cfg.rpl.rank_scale)

    # -- traffic / mobility / snapshots --------------------------------------

    def _on_traffic_gen(self, now: float, nid: int):
        node = self.nodes[nid]
        if not node.alive:
            return
        pid = self.registry.new_packet()
        payload = rpl.Message(kind=rpl.DATA, src=nid, dst=None, packet_id=pid,
                              created_at=now, size=self.cfg.traffic.payload_b,
                              origin=nid, hops=0)
        if node.rpl.parent_id is None:
            self.registry.drop(pid, "no-route")
        elif not node.mac.enqueue_data(payload, now):
            self.registry.drop(pid, "queue")
        nxt = now + self.cfg.traffic.period_s
        if nxt < self.horizon:
            self.events.schedule(nxt, TRAFFIC_GEN, (nid,))

    def _on_mobility_update(self, now: float):
        params = self.cfg.mobility
        side = self.cfg.area_side_m
        bound = params.v_max * params.update_interval_s + 1e-9
        for node in self.nodes[1:]:
            if node.waypoint is not None and node.alive:
                old = node.pos
                node.pos, node.waypoint = mob.advance(
                    node.waypoint, old, params.update_interval_s,
                    side, params, self.rng.mobility)
                if mob.distance(node.pos, old) > bound:
                    raise AssertionError("mobility step exceeded v_max*dt")
                if not all(0.0 <= c <= side for c in node.pos):
                    raise AssertionError("node left the deployment cube")
        self._schedule_if(now + params.update_interval_s, MOBILITY_UPDATE, ())

    def _on_snapshot(self, now: float):
        self._idle_debit(now)
        self._assert_loop_free()
        for node in self.nodes:
            if node.mac.occupancy() > node.mac.capacity:
                raise AssertionError("queue occupancy exceeded capacity")
        self._log(now, f"snapshot S={self.registry.generated} "
                       f"R={self.registry.delivered} C={self.control_tx} "
                       f"alive={sum(1 for n in self.nodes if n.alive)}")
        self._schedule_if(now + self.cfg.snapshot_interval_s, METRICS_SNAPSHOT, ())

    def _idle_debit(self, now: float):
        dt = now - self.last_idle_t
        if dt <= 0:
            return
        self.last_idle_t = now
        for node in self.nodes:
            if node.alive:
                self._debit(node, self.cfg.energy.p_idle_w * dt, now)

    def _assert_loop_free(self):
        self.dodag_walks += 1
        for node in self.nodes:
            seen = set()
            hop = node.nid
            while hop is not None:
                if hop in seen:
                    raise AssertionError(f"routing cycle through node {hop}")
                seen.add(hop)
                if len(seen) > self.cfg.node_count:
                    raise AssertionError("parent chain longer than node count")
                hop = self.nodes[hop].rpl.parent_id

    # -- wrap-up ------------------------------------------------------------

    def _finish(self) -> TrialRecord:
        reg = self.registry
        sensors = self.nodes[1:]
        deaths = [n.battery.death_time for n in sensors
                  if n.battery.death_time is not None]
        censored = not deaths
        t_death = min(deaths) if deaths else self.horizon
        e_total = math.fsum(n.battery.spent for n in self.nodes)

        drops_total = sum(reg.dropped.values())
        if reg.generated != reg.delivered + drops_total + reg.in_flight():
            raise AssertionError("packet conservation violated")
        initial_total = math.fsum(n.battery.initial for n in self.nodes)
        remaining_total = math.fsum(n.battery.remaining for n in self.nodes)
        if abs(e_total - (initial_total - remaining_total)) > 1e-9:
            raise AssertionError("energy conservation violated")
        if sensors and isinstance(sensors[0].policy, RlPolicy):
            p = self.cfg.rl
            bound = (p.alpha + p.beta + p.gamma_w) / (1.0 - p.discount) + p.q0 + 1e-9
            for node in sensors:
                if node.policy.table.max_abs() > bound:
                    raise AssertionError("Q-value bound violated")

        return TrialRecord(
            protocol=self.protocol, seed=self.seed, label=self.cfg.label,
            horizon=self.horizon,
            generated=reg.generated, delivered=reg.delivered,
            control_tx=self.control_tx, delays=list(reg.delays),
            e_total=e_total, t_death=t_death, censored=censored,
            dropped_loss=reg.dropped["loss"], dropped_queue=reg.dropped["queue"],
            dropped_no_route=reg.dropped["no-route"],
            dropped_loop=reg.dropped["loop"],
            dropped_node_death=reg.dropped["node-death"],
            in_flight=reg.in_flight(),
            data_attempts=sum(n.data_attempts for n in self.nodes),
            data_acked=sum(n.data_acked for n in self.nodes),
            duplicate_acks=sum(n.mac.duplicate_acks for n in self.nodes),
            duplicate_rx=self.duplicate_rx,
            collision_checks=self.collision_checks,
            dodag_walks=self.dodag_walks,
            node_spent=[n.battery.spent for n in self.nodes],
            node_death_times=[n.battery.death_time for n in self.nodes],
        )


def run_trial(config: ScenarioConfig, protocol: str, seed: int,
              trace=None) -> TrialRecord:
    return Trial(config, protocol, seed, trace=trace).run()
