import copy
import json

import pytest

from slagverify.cli import main
from slagverify.config import (
    ConfigError,
    config_to_dict,
    dump_config,
    load_config,
    parse_config,
)
from slagverify.examples_gen import generate_example
from slagverify.pipeline import report_json, verify_all


def test_parse_config_roundtrip():
    data = generate_example(2)
    cfg = parse_config(data)
    assert cfg.n == 2
    assert len(cfg.polytopes) == 4
    again = parse_config(config_to_dict(cfg))
    assert report_json(verify_all(cfg)) == report_json(verify_all(again))


def test_parse_config_errors():
    data = generate_example(2)
    broken = copy.deepcopy(data)
    del broken["torus"]
    with pytest.raises(ConfigError):
        parse_config(broken)
    broken = copy.deepcopy(data)
    broken["polytopes"][1]["name"] = broken["polytopes"][0]["name"]
    with pytest.raises(ConfigError):
        parse_config(broken)
    broken = copy.deepcopy(data)
    broken["polytopes"][0]["base"] = {"type": "dodecahedron"}
    with pytest.raises(ConfigError):
        parse_config(broken)
    broken = copy.deepcopy(data)
    broken["quiver"] = [["D1", "Dx"]]
    with pytest.raises(ConfigError):
        parse_config(broken)
    broken = copy.deepcopy(data)
    broken["torus"]["u"] = [[2, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    with pytest.raises((ConfigError, ValueError)):
        parse_config(broken)


def test_dump_and_load(tmp_path):
    path = tmp_path / "cfg.json"
    dump_config(generate_example(3, N=2), str(path))
    cfg = load_config(str(path))
    assert verify_all(cfg)["ok"]


def test_explicit_quiver_must_match_geometry():
    data = generate_example(2)
    data["quiver"] = [["D1", "D2"], ["D2", "D3"], ["D3", "D4"], ["D4", "D1"]]
    cfg = parse_config(data)
    assert verify_all(cfg)["ok"]
    data["quiver"] = [["D2", "D1"], ["D2", "D3"], ["D3", "D4"], ["D4", "D1"]]
    report = verify_all(parse_config(data))
    assert not report["ok"]


def test_cli_example_and_check(tmp_path, capsys):
    cfg_path = tmp_path / "ex2.json"
    assert main(["example", "2", "-o", str(cfg_path)]) == 0
    report_path = tmp_path / "report.json"
    rc = main(["check", str(cfg_path), "--report", str(report_path),
               "--mode", "main"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "verified" in out
    report = json.loads(report_path.read_text())
    assert report["ok"]
    assert report["topology"] == "2ℙ² # 2ℙ̄² # (S¹×S³)"


def test_cli_check_reports_violation(tmp_path, capsys):
    data = generate_example(2)
    # nudge one hyperplane level so the polytopes no longer fit
    data["lambda"][2] = [0.0, 0.0, 0.9]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    rc = main(["check", str(path)])
    out = capsys.readouterr().out
    assert rc == 1
    assert "FAIL" in out


def test_cli_input_errors(tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    assert main(["check", str(bad)]) == 2
    capsys.readouterr()
    assert main(["example", "9"]) == 2
    capsys.readouterr()


def test_cli_example_parameters(capsys):
    assert main(["example", "1", "--n", "3"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["torus"]["n"] == 3
    assert len(data["polytopes"]) == 6


def test_cli_quiver(tmp_path, capsys):
    edges = tmp_path / "edges.txt"
    edges.write_text("a -> b\nb -> c\nc -> a\n")
    assert main(["quiver", str(edges)]) == 0
    out = capsys.readouterr().out
    assert "h0: 1  h1: 1" in out
    assert "cycle cover: yes" in out
    edges.write_text("a -> b\nb -> c\n")
    assert main(["quiver", str(edges)]) == 1
    out = capsys.readouterr().out
    assert "cycle cover: no" in out


def test_cli_plot_is_deterministic(tmp_path):
    cfg_path = tmp_path / "ex2.json"
    main(["example", "2", "-o", str(cfg_path)])
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    assert main(["plot", str(cfg_path), "-o", str(out1)]) == 0
    assert main(["plot", str(cfg_path), "-o", str(out2)]) == 0
    data = out1.read_bytes()
    assert data.startswith(b"<?xml")
    assert data == out2.read_bytes()


def test_report_is_deterministic_text():
    cfg = parse_config(generate_example(1, n=2))
    a = report_json(verify_all(cfg))
    b = report_json(verify_all(cfg))
    assert a == b
    assert json.loads(a) == verify_all(cfg)
