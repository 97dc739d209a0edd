import pytest

from uansim.channel import ChannelParams, FIXED_RANGE
from uansim.config import MacParams, ScenarioConfig, TrafficSpec


@pytest.fixture
def chain_config():
    """Deterministic 3-node chain scenario: fixed-range channel, zero traffic
    offsets, paper modem rate. Positions get overridden by the test."""
    cfg = ScenarioConfig(label="chain")
    cfg.node_count = 3
    cfg.area_side_m = 300.0
    cfg.horizon_s = 40.0
    cfg.traffic = TrafficSpec(period_s=15.0, offset_mode="zero")
    cfg.channel = ChannelParams(per_model=FIXED_RANGE, max_range_m=120.0)
    cfg.mac = MacParams()
    return cfg.validate()
