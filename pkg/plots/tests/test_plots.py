import hashlib
import json

import pytest

from uansim_plots.cli import main
from uansim_plots.render import (FigureSpec, MissingProtocol, build_figure,
                                 load_aggregates, render_all, series_for)

METRICS = ("pdr_pct", "delay_s", "energy_per_packet_j", "overhead_ratio",
           "lifetime_s")


def cell(mean, std=1.0):
    return {"mean": mean, "std": std, "k": 20}


def fake_aggregate(scenario, protocols=("rl-rpl-ua", "rpl-of0", "q-routing"),
                   offset=0.0):
    table = {}
    for i, protocol in enumerate(protocols):
        table[protocol] = {m: cell(10.0 * (i + 1) + j + offset)
                           for j, m in enumerate(METRICS)}
        table[protocol]["censored_trials"] = 2
    return {"scenarios": {scenario: table}}


@pytest.fixture
def two_scenario_file(tmp_path):
    merged = fake_aggregate("extended-static")
    merged["scenarios"].update(fake_aggregate("extended-mobile", offset=0.5)["scenarios"])
    path = tmp_path / "aggregate.json"
    path.write_text(json.dumps(merged, indent=2, sort_keys=True))
    return path


def test_three_protocols_three_bars(tmp_path):
    scenarios = load_aggregates_from(fake_aggregate("s"), tmp_path)
    spec = FigureSpec("pdr_pct", "s", ("rl-rpl-ua", "rpl-of0", "q-routing"),
                      tmp_path / "f.svg")
    fig = build_figure(scenarios, spec)
    assert len(fig.axes[0].patches) == 3


def load_aggregates_from(data, tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps(data))
    return load_aggregates([path])


def test_bar_heights_equal_means_exactly(tmp_path):
    data = fake_aggregate("s")
    scenarios = load_aggregates_from(data, tmp_path)
    protocols = ("rl-rpl-ua", "rpl-of0", "q-routing")
    for metric in METRICS:
        spec = FigureSpec(metric, "s", protocols, tmp_path / f"{metric}.svg")
        fig = build_figure(scenarios, spec)
        heights = [patch.get_height() for patch in fig.axes[0].patches]
        expected = [data["scenarios"]["s"][p][metric]["mean"] for p in protocols]
        assert heights == expected  # exact float equality


def test_zero_std_renders(tmp_path):
    data = fake_aggregate("s")
    for protocol in data["scenarios"]["s"]:
        if protocol == "censored_trials":
            continue
        for metric in METRICS:
            data["scenarios"]["s"][protocol][metric]["std"] = 0.0
    scenarios = load_aggregates_from(data, tmp_path)
    means, stds = series_for(scenarios, "s", "pdr_pct",
                             ("rl-rpl-ua", "rpl-of0", "q-routing"))
    assert stds == [0.0, 0.0, 0.0]
    spec = FigureSpec("pdr_pct", "s", ("rl-rpl-ua", "rpl-of0", "q-routing"),
                      tmp_path / "z.svg")
    build_figure(scenarios, spec)  # must not raise


def test_none_std_treated_as_zero(tmp_path):
    data = fake_aggregate("s")
    data["scenarios"]["s"]["rl-rpl-ua"]["pdr_pct"]["std"] = None
    scenarios = load_aggregates_from(data, tmp_path)
    _, stds = series_for(scenarios, "s", "pdr_pct", ("rl-rpl-ua",))
    assert stds == [0.0]


def test_missing_protocol_named(tmp_path):
    scenarios = load_aggregates_from(fake_aggregate("s", protocols=("rl-rpl-ua",)),
                                     tmp_path)
    with pytest.raises(MissingProtocol, match="q-routing"):
        series_for(scenarios, "s", "pdr_pct", ("rl-rpl-ua", "q-routing"))


def test_one_invocation_renders_ten_figures(two_scenario_file, tmp_path):
    before = hashlib.sha256(two_scenario_file.read_bytes()).hexdigest()
    out = tmp_path / "figures"
    code = main(["--in", str(two_scenario_file), "--out", str(out)])
    assert code == 0
    files = sorted(p.name for p in out.iterdir())
    assert len(files) == 10
    assert all(name.endswith(".svg") for name in files)
    # rendering is read-only
    assert hashlib.sha256(two_scenario_file.read_bytes()).hexdigest() == before


def test_cli_merges_multiple_inputs(tmp_path):
    a = tmp_path / "a.json"
    a.write_text(json.dumps(fake_aggregate("static")))
    b = tmp_path / "b.json"
    b.write_text(json.dumps(fake_aggregate("mobile")))
    out = tmp_path / "figs"
    code = main(["--in", str(a), "--in", str(b), "--out", str(out),
                 "--format", "png"])
    assert code == 0
    assert len(list(out.glob("*.png"))) == 10


def test_cli_reports_missing_protocol(two_scenario_file, tmp_path, capsys):
    code = main(["--in", str(two_scenario_file), "--out", str(tmp_path / "x"),
                 "--protocols", "rl-rpl-ua,nonexistent"])
    assert code == 1
    assert "nonexistent" in capsys.readouterr().err


def test_protocol_order_consistent(two_scenario_file, tmp_path):
    scenarios = load_aggregates([two_scenario_file])
    out = render_all(scenarios, tmp_path / "f")
    assert len(out) == 10
