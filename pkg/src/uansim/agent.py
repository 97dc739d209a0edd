"""Per-node tabular Q-learning: state binning, reward, Q-update, epsilon-greedy
parent choice, and adaptive objective-function weights."""

from __future__ import annotations

import math
import random
from collections import deque
from dataclasses import dataclass

from . import rpl


@dataclass
class LearningParams:
    eta: float = 0.1             # learning rate
    discount: float = 0.9        # future-reward discount
    epsilon0: float = 0.1        # exploration, linearly decayed ...
    epsilon_final: float = 0.01  # ... to this value at the horizon
    alpha: float = 1.0           # reward weight on delivery
    beta: float = 0.6            # reward weight on delay
    gamma_w: float = 0.4         # reward weight on energy
    q0: float = 0.5              # optimistic initial action value
    bins: tuple = (3, 3, 3, 3, 3)
    adapt_window: int = 50
    weight_floor: float = 0.05
    pdr_mode: str = "windowed"   # or "per-attempt"
    hysteresis: float = 0.05
    static_weights: bool = False

    def validate(self):
        if not 0 < self.eta <= 1:
            raise ValueError("rl.eta must be in (0, 1]")
        if not 0 <= self.discount < 1:
            raise ValueError("rl.discount must be in [0, 1)")
        for name in ("epsilon0", "epsilon_final"):
            if not 0 <= getattr(self, name) <= 1:
                raise ValueError(f"rl.{name} must be in [0, 1]")
        if self.pdr_mode not in ("windowed", "per-attempt"):
            raise ValueError(f"rl.pdr_mode unknown: {self.pdr_mode!r}")
        if any(b < 1 for b in self.bins) or len(self.bins) != 5:
            raise ValueError("rl.bins must be five positive integers")


@dataclass
class ObservedState:
    e: float
    lqi: float
    q: float
    pdr: float
    t: float  # raw seconds


@dataclass
class ObjectiveWeights:
    w1: float = 0.25  # residual energy
    w2: float = 0.25  # link reliability
    w3: float = 0.25  # queue availability
    w4: float = 0.25  # delivery history

    def as_tuple(self):
        return (self.w1, self.w2, self.w3, self.w4)


def observe_state(node, now: float) -> ObservedState:
    battery = node.battery
    e = battery.remaining / battery.initial if battery.initial > 0 else 0.0
    parent = node.rpl.neighbors.get(node.rpl.parent_id)
    lqi = parent.ack_ewma if parent is not None else 0.0
    q = min(node.mac.occupancy() / node.mac.capacity, 1.0) if node.mac.capacity else 0.0
    pdr = node.data_acked / node.data_attempts if node.data_attempts else 1.0
    t = max(now - node.last_success_t, 0.0)
    return ObservedState(e=e, lqi=lqi, q=q, pdr=pdr, t=t)


def _bin(value: float, count: int) -> int:
    # uniform-width bins over [0,1]; 1.0 maps to the top bin
    if value >= 1.0:
        return count - 1
    if value <= 0.0:
        return 0
    return int(value * count)


def discretize(s: ObservedState, bins: tuple = (3, 3, 3, 3, 3)) -> tuple:
    return (
        _bin(s.e, bins[0]),
        _bin(s.lqi, bins[1]),
        _bin(s.q, bins[2]),
        _bin(s.pdr, bins[3]),
        _bin(rpl.clip_t(s.t), bins[4]),
    )


def reward(params: LearningParams, pdr_t: float, delay_norm: float,
           energy_norm: float) -> float:
    return params.alpha * pdr_t - params.beta * delay_norm - params.gamma_w * energy_norm


class QTable:
    """Sparse action-value table keyed by (discrete state, neighbor id)."""

    def __init__(self, q0: float = 0.5):
        self.q0 = q0
        self.entries: dict = {}

    def get(self, s: tuple, a: int) -> float:
        return self.entries.get((s, a), self.q0)

    def max_next(self, s: tuple, actions) -> float:
        best = None
        for a in actions:
            v = self.get(s, a)
            if best is None or v > best:
                best = v
        return self.q0 if best is None else best

    def update(self, s: tuple, a: int, r: float, s_next: tuple, actions,
               params: LearningParams) -> float:
        if not math.isfinite(r):
            raise ValueError("reward must be finite")
        old = self.get(s, a)
        new = old + params.eta * (r + params.discount * self.max_next(s_next, actions) - old)
        self.entries[(s, a)] = new
        return new

    def drop_action(self, a: int):
        for key in [k for k in self.entries if k[1] == a]:
            del self.entries[key]

    def max_abs(self) -> float:
        return max((abs(v) for v in self.entries.values()), default=0.0)


def select_parent(table: QTable, s: tuple, neighbors: list, epsilon: float,
                  rng: random.Random, incumbent: int | None = None,
                  hysteresis: float = 0.0) -> int:
    """Epsilon-greedy over eligible neighbors; ties break on (rank, id).

    With an incumbent present and eligible, a greedy challenger must beat its
    value by the hysteresis margin to trigger a switch.
    """
    if not neighbors:
        raise ValueError("select_parent needs a non-empty eligible set")
    if len(neighbors) == 1:
        return neighbors[0].nid
    if epsilon > 0.0 and rng.random() < epsilon:
        return neighbors[rng.randrange(len(neighbors))].nid
    best = min(neighbors, key=lambda n: (-table.get(s, n.nid), n.rank, n.nid))
    if incumbent is not None and best.nid != incumbent:
        cur = next((n for n in neighbors if n.nid == incumbent), None)
        if cur is not None:
            q_cur = table.get(s, cur.nid)
            if table.get(s, best.nid) <= q_cur + hysteresis * abs(q_cur):
                return incumbent
    return best.nid


def of_value(features: rpl.NeighborFeatures, w: ObjectiveWeights) -> float:
    """Composite objective: weighted (energy, reliability, queue room, PDR)."""
    return (w.w1 * features.e + w.w2 * features.r
            + w.w3 * (1.0 - features.q) + w.w4 * features.pdr)


def _pearson(xs: list, ys: list) -> float:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    syy = sum((y - my) ** 2 for y in ys)
    if sxx == 0.0 or syy == 0.0:
        return 0.0
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return sxy / math.sqrt(sxx * syy)


def adapt_weights(history, w: ObjectiveWeights, floor: float = 0.05,
                  min_samples: int = 50) -> ObjectiveWeights:
    """Re-weight the objective terms by their positive correlation with reward."""
    samples = list(history)
    if len(samples) < min_samples:
        return w
    rewards = [r for _, r in samples]
    terms = [
        [f.e for f, _ in samples],
        [f.r for f, _ in samples],
        [1.0 - f.q for f, _ in samples],
        [f.pdr for f, _ in samples],
    ]
    raw = [max(0.0, _pearson(t, rewards)) + floor for t in terms]
    total = sum(raw)
    return ObjectiveWeights(*(v / total for v in raw))


class RlPolicy:
    """Q-learning parent selection for one node (fully decentralized)."""

    name = "rl-rpl-ua"
    pays_update_cost = True

    def __init__(self, params: LearningParams, rng: random.Random, horizon: float,
                 frame_length: float, e_tx_ref: float):
        self.params = params
        self.rng = rng
        self.horizon = horizon
        self.frame_length = frame_length
        self.e_tx_ref = e_tx_ref
        self.table = QTable(q0=params.q0)
        self.weights = ObjectiveWeights()
        self.history: deque = deque(maxlen=params.adapt_window)
        self.outcomes_seen = 0
        self.updates = 0
        self.trace_hook = None

    def epsilon(self, now: float) -> float:
        frac = min(now / self.horizon, 1.0) if self.horizon > 0 else 1.0
        return self.params.epsilon0 + (self.params.epsilon_final - self.params.epsilon0) * frac

    def select(self, node, eligible: list, now: float) -> int:
        return select_parent(self.table, discretize(observe_state(node, now), self.params.bins),
                             eligible, self.epsilon(now), self.rng,
                             incumbent=node.rpl.parent_id,
                             hysteresis=self.params.hysteresis)

    def select_greedy(self, node, eligible: list, now: float) -> int:
        """Observation-triggered reselection: no exploration draw."""
        return select_parent(self.table, discretize(observe_state(node, now), self.params.bins),
                             eligible, 0.0, self.rng,
                             incumbent=node.rpl.parent_id,
                             hysteresis=self.params.hysteresis)

    def effective_features(self, entry: rpl.NeighborEntry) -> rpl.NeighborFeatures:
        """Advertised features with R replaced by our own link estimate.

        The reliability term is the evaluator's 1/ETX toward that neighbor;
        a DIO can only carry the sender's upstream figure, which says nothing
        about this particular link.
        """
        f = entry.features
        return rpl.NeighborFeatures(e=f.e, r=entry.ack_ewma, q=f.q, pdr=f.pdr, t=f.t)

    def of_for_rank(self, entry: rpl.NeighborEntry) -> float:
        return of_value(self.effective_features(entry), self.weights)

    def advertised_of(self, node) -> float:
        parent = node.rpl.neighbors.get(node.rpl.parent_id)
        return self.of_for_rank(parent) if parent is not None else 1.0

    def ack_annotation(self, node) -> float:
        return 0.0

    def notify_outcome(self, node, outcome, now: float):
        entry = node.rpl.neighbors.get(outcome.dest)
        if self.params.pdr_mode == "windowed" and entry is not None and entry.outcome_window:
            pdr_t = sum(entry.outcome_window) / len(entry.outcome_window)
        else:
            pdr_t = 1.0 if outcome.success else 0.0
        delay_norm = min(outcome.delay / self.frame_length, 1.0) if self.frame_length > 0 else 0.0
        energy_norm = outcome.energy / self.e_tx_ref if self.e_tx_ref > 0 else 0.0
        r = reward(self.params, pdr_t, delay_norm, energy_norm)

        s = outcome.send_state
        if s is None:
            s = discretize(observe_state(node, now), self.params.bins)
        s_next = discretize(observe_state(node, now), self.params.bins)
        new_q = self.table.update(s, outcome.dest, r, s_next,
                                  sorted(node.rpl.neighbors), self.params)
        self.updates += 1
        if self.trace_hook is not None:
            self.trace_hook(f"{now:.6f} agent node={node.nid} s={s} a={outcome.dest} "
                            f"r={r:.4f} q={new_q:.4f}")

        if entry is not None and not self.params.static_weights:
            self.history.append((self.effective_features(entry), r))
            self.outcomes_seen += 1
            if self.outcomes_seen % self.params.adapt_window == 0:
                self.weights = adapt_weights(self.history, self.weights,
                                             floor=self.params.weight_floor,
                                             min_samples=self.params.adapt_window)

    def on_neighbor_evicted(self, nid: int):
        self.table.drop_action(nid)

    def send_state(self, node, now: float) -> tuple:
        return discretize(observe_state(node, now), self.params.bins)
