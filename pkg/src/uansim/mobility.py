"""Node placement in the deployment cube and 3D random-waypoint movement."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

STATIC = "static"
RANDOM_WAYPOINT = "rwp"

Position3D = tuple[float, float, float]  # (x, y, z); z is depth, 0 = surface


@dataclass
class MobilityParams:
    model: str = STATIC
    v_min: float = 0.1
    v_max: float = 0.3
    pause_s: float = 0.0
    update_interval_s: float = 1.0

    def validate(self):
        if self.model not in (STATIC, RANDOM_WAYPOINT):
            raise ValueError(f"mobility.model unknown: {self.model!r}")
        if not 0 < self.v_min <= self.v_max:
            raise ValueError("mobility speeds must satisfy 0 < v_min <= v_max")
        if self.pause_s < 0:
            raise ValueError("mobility.pause_s must be >= 0")
        if self.update_interval_s <= 0:
            raise ValueError("mobility.update_interval_s must be > 0")


@dataclass
class WaypointState:
    target: Position3D
    speed: float
    pause_remaining: float = 0.0


def sink_position(side: float) -> Position3D:
    return (side / 2.0, side / 2.0, 0.0)


def deploy(node_count: int, side: float, rng: random.Random) -> list[Position3D]:
    """Node 0 is the sink at the surface center; sensors uniform in the cube."""
    if node_count < 2:
        raise ValueError("node_count must be >= 2")
    positions = [sink_position(side)]
    for _ in range(node_count - 1):
        positions.append((rng.uniform(0.0, side), rng.uniform(0.0, side),
                          rng.uniform(0.0, side)))
    return positions


def fresh_waypoint(side: float, params: MobilityParams, rng: random.Random) -> WaypointState:
    target = (rng.uniform(0.0, side), rng.uniform(0.0, side), rng.uniform(0.0, side))
    speed = rng.uniform(params.v_min, params.v_max)
    return WaypointState(target=target, speed=speed, pause_remaining=params.pause_s)


def advance(state: WaypointState, pos: Position3D, dt: float, side: float,
            params: MobilityParams, rng: random.Random) -> tuple[Position3D, WaypointState]:
    """Move toward the target for dt seconds; on arrival pick a new target/speed."""
    if dt <= 0:
        raise ValueError("dt must be > 0")
    if state.speed == 0.0:
        return pos, state
    dx = state.target[0] - pos[0]
    dy = state.target[1] - pos[1]
    dz = state.target[2] - pos[2]
    dist = math.sqrt(dx * dx + dy * dy + dz * dz)
    step = state.speed * dt
    if step >= dist:
        # arrived: snap to target, choose the next leg at the following update
        return state.target, fresh_waypoint(side, params, rng)
    frac = step / dist
    return (pos[0] + dx * frac, pos[1] + dy * frac, pos[2] + dz * frac), state


def distance(a: Position3D, b: Position3D) -> float:
    return math.sqrt((a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2 + (a[2] - b[2]) ** 2)
