import logging
import math
import random

import pytest

from uansim import metrics
from uansim.metrics import TrialRecord


def record(**kw):
    base = dict(protocol="p", seed=0, horizon=1000.0)
    base.update(kw)
    return TrialRecord(**base)


# -- hand-computed examples -----------------------------------------------------

def test_pdr_two_trials():
    recs = [record(generated=10, delivered=9), record(generated=10, delivered=8)]
    stats = metrics.pdr(recs)
    assert stats.mean == pytest.approx(85.0)
    assert stats.std == pytest.approx(math.sqrt(50.0), rel=1e-12)


def test_pdr_identical_trials_zero_std():
    recs = [record(generated=10, delivered=9)] * 3
    assert metrics.pdr(recs).std == pytest.approx(0.0, abs=1e-12)


def test_pdr_single_trial_has_no_std():
    stats = metrics.pdr([record(generated=10, delivered=7)])
    assert stats.mean == pytest.approx(70.0)
    assert stats.std is None
    assert stats.k == 1


def test_pdr_excludes_empty_trials_loudly(caplog):
    recs = [record(generated=0, delivered=0), record(generated=10, delivered=5)]
    with caplog.at_level(logging.WARNING):
        stats = metrics.pdr(recs)
    assert stats.k == 1
    assert any("excluding" in m for m in caplog.messages)


def test_delay_trial_mean():
    stats = metrics.end_to_end_delay([record(delivered=2, delays=[1.0, 3.0])])
    assert stats.mean == pytest.approx(2.0)


def test_delay_across_trials():
    recs = [record(delivered=1, delays=[1.5]), record(delivered=1, delays=[2.5])]
    stats = metrics.end_to_end_delay(recs)
    assert stats.mean == pytest.approx(2.0)
    assert stats.std == pytest.approx(math.sqrt(0.5), rel=1e-12)


def test_delay_equal_trials_zero_std():
    recs = [record(delivered=1, delays=[2.0]), record(delivered=2, delays=[1.0, 3.0])]
    assert metrics.end_to_end_delay(recs).std == pytest.approx(0.0, abs=1e-12)


def test_energy_per_packet_value():
    stats = metrics.energy_per_packet([record(delivered=100, e_total=75.0)])
    assert stats.mean == pytest.approx(0.75)


def test_energy_per_packet_spread():
    recs = [record(delivered=10, e_total=7.0), record(delivered=10, e_total=8.0)]
    stats = metrics.energy_per_packet(recs)
    assert stats.mean == pytest.approx(0.75)
    assert stats.std == pytest.approx(math.sqrt(0.005), rel=1e-9)


def test_overhead_examples():
    stats = metrics.overhead([record(delivered=100, control_tx=12)])
    assert stats.mean == pytest.approx(0.12)
    assert metrics.overhead([record(delivered=5, control_tx=0)]).mean == 0.0
    two = metrics.overhead([record(delivered=100, control_tx=10),
                            record(delivered=100, control_tx=14)])
    assert two.mean == pytest.approx(0.12)
    assert two.std == pytest.approx(math.sqrt(0.0008), rel=1e-9)


def test_lifetime_examples():
    recs = [record(t_death=700.0, censored=False),
            record(t_death=740.0, censored=False)]
    stats = metrics.lifetime(recs)
    assert stats.mean == pytest.approx(720.0)
    assert stats.std == pytest.approx(math.sqrt(800.0), rel=1e-12)


def test_lifetime_censoring():
    recs = [record(t_death=1000.0, censored=True)]
    stats = metrics.lifetime(recs)
    assert stats.mean == 1000.0
    assert stats.std is None
    assert metrics.censored_count(recs) == 1


# -- brute-force oracle over synthetic trials -----------------------------------

def brute_mean_std(values):
    k = len(values)
    mean = sum(values) / k
    if k < 2:
        return mean, None
    return mean, math.sqrt(sum((v - mean) ** 2 for v in values) / (k - 1))


def synthetic_trials(rng, k):
    recs = []
    for i in range(k):
        generated = rng.randrange(50, 500)
        delivered = rng.randrange(1, generated + 1)
        delays = [rng.uniform(0.5, 60.0) for _ in range(delivered)]
        recs.append(record(
            seed=i, generated=generated, delivered=delivered,
            control_tx=rng.randrange(0, 200), delays=delays,
            e_total=rng.uniform(10.0, 25000.0),
            t_death=rng.uniform(100.0, 1000.0), censored=rng.random() < 0.2,
        ))
    return recs


def test_metrics_match_brute_force_recomputation():
    rng = random.Random(99)
    for trial_batch in range(100):
        recs = synthetic_trials(rng, rng.randrange(2, 25))
        checks = [
            (metrics.pdr(recs), [100.0 * r.delivered / r.generated for r in recs]),
            (metrics.end_to_end_delay(recs),
             [sum(r.delays) / len(r.delays) for r in recs]),
            (metrics.energy_per_packet(recs),
             [r.e_total / r.delivered for r in recs]),
            (metrics.overhead(recs), [r.control_tx / r.delivered for r in recs]),
            (metrics.lifetime(recs), [r.t_death for r in recs]),
        ]
        for stats, raw in checks:
            mean, std = brute_mean_std(raw)
            assert stats.mean == pytest.approx(mean, rel=1e-9)
            assert stats.std == pytest.approx(std, rel=1e-9)
            assert stats.k == len(raw)
