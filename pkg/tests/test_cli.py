import json

import pytest

from zdcodes.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ring_info_text(capsys):
    code, out, _ = run(capsys, "ring-info", "Z12")
    assert code == 0
    assert "order 12" in out and "|Z*|: 7" in out and "local: False" in out


def test_ring_info_json(capsys):
    code, out, _ = run(capsys, "ring-info", "Z9", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["order"] == 9 and obj["nonzero_zero_divisors"] == 2 and obj["local"]


def test_ring_info_reduced_product(capsys):
    code, out, _ = run(capsys, "ring-info", "Z2 x Z2", "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["reduced"] is True and obj["order"] == 4


def test_parse_error_exit_1(capsys):
    code, _, err = run(capsys, "ring-info", "Zx")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "ring-info", "F6")
    assert code == 1 and "prime power" in err


def test_zdg_export_dot(capsys):
    code, out, _ = run(capsys, "zdg-export", "Z12", "--format", "dot")
    assert code == 0
    assert out.count(" -- ") == 8 and out.count("label=") == 7
    code, out2, _ = run(capsys, "zdg-export", "Z12", "--format", "dot")
    assert out == out2  # byte-stable


def test_zdg_export_json(capsys):
    code, out, _ = run(capsys, "zdg-export", "Z2 x Z8", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["n"] == 11
    code, out, _ = run(capsys, "zdg-export", "Z4", "--format", "dot")
    assert code == 0 and "0 [label=" in out


def test_zdg_export_to_file(tmp_path, capsys):
    target = tmp_path / "g.json"
    code, _, _ = run(capsys, "zdg-export", "Z12", "--format", "json", "-o", str(target))
    assert code == 0
    assert json.loads(target.read_text())["n"] == 7


@pytest.mark.parametrize(
    "target,admits",
    [
        ("path:5", False),
        ("path:4", True),
        ("cycle:8", True),
        ("cycle:6", False),
        ("complete:2", True),
        ("complete:4", False),
        ("kmn:2,3", True),
        ("star:5", True),
        ("corona:path:6", False),
        ("fig1", True),
        ("Z12", True),
        ("Z9", True),
        ("Z16", True),
        ("Z2 x Z8", False),
        ("Z4 x Z4", False),
    ],
)
def test_tpc_decide_consensus(capsys, target, admits):
    code, out, _ = run(capsys, "tpc-decide", target)
    assert code == 0, out
    assert ("admits" in out.splitlines()[-1]) == admits or admits
    verdict = "does not admit" if not admits else "admits"
    assert verdict in out.splitlines()[-1]
    assert "consensus" in out


def test_tpc_decide_witnesses(capsys):
    code, out, _ = run(capsys, "tpc-decide", "Z12", "--json")
    obj = json.loads(out)
    assert code == 0 and obj["admits"] and obj["witness"] == ["4", "6"]
    code, out, _ = run(capsys, "tpc-decide", "cycle:8", "--json")
    obj = json.loads(out)
    assert obj["witness"] == [0, 1, 4, 5]


def test_tpc_decide_graph_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    path.write_text(json.dumps({"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}))
    code, out, _ = run(capsys, "tpc-decide", f"file:{path}")
    assert code == 0 and "admits" in out


def test_verify_exit_codes(capsys):
    code, out, _ = run(capsys, "verify", "paths", "--max-n", "12")
    assert code == 0
    assert "0 unexpected" in out
    code, out, _ = run(capsys, "verify", "cycles", "--json")
    assert code == 0
    reports = json.loads(out)
    assert reports[0]["suite"] == "cycles" and reports[0]["exit_code"] == 0
    assert reports[0]["agreements"] + len(reports[0]["discrepancies"]) == reports[0]["instances"]


def test_verify_trees_small(capsys):
    code, out, _ = run(
        capsys, "verify", "trees", "--samples", "50", "--traces", "20", "--probe-max", "7"
    )
    assert code == 0 and "probe" in out


def test_verify_jobs_fanout(capsys):
    code, out, _ = run(capsys, "verify", "zn-sweep", "--max-n", "40", "--jobs", "2", "--json")
    assert code == 0
    rep = json.loads(out)[0]
    assert rep["instances"] == 37 and rep["exit_code"] == 0


def test_tree_gen_trace(tmp_path, capsys):
    trace = tmp_path / "t.json"
    trace.write_text(json.dumps({"initial": 4, "steps": [{"op": "A2", "v": 2}]}))
    code, out, _ = run(capsys, "tree-gen", "--trace", str(trace), "--json")
    assert code == 0
    obj = json.loads(out)
    assert obj["vertices"] == 5 and obj["admits"]

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"initial": 5}))
    code, _, err = run(capsys, "tree-gen", "--trace", str(bad))
    assert code == 1 and "1 mod 4" in err


def test_tree_gen_random_deterministic(capsys):
    code, out1, _ = run(capsys, "tree-gen", "--random", "42", "40", "--json")
    assert code == 0
    code, out2, _ = run(capsys, "tree-gen", "--random", "42", "40", "--json")
    assert out1 == out2


def test_tree_gen_output_file(tmp_path, capsys):
    target = tmp_path / "tree.json"
    code, out, _ = run(capsys, "tree-gen", "--random", "7", "30", "-o", str(target))
    assert code == 0
    assert json.loads(target.read_text())["n"] >= 2


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    assert out.count("exceptional") == 7
    code, out, _ = run(capsys, "catalog", "--json")
    rows = json.loads(out)
    assert len(rows) == 8 and sum(r["exceptional"] for r in rows) == 7


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"ring_cap": 10}))
    code, _, err = run(capsys, "--config", str(cfg), "ring-info", "Z12")
    assert code == 1 and "cap" in err
    # the override is process-local and cleared once the command returns
    code, _, _ = run(capsys, "ring-info", "Z12")
    assert code == 0


def test_catalog_ring_through_expression(capsys):
    code, out, _ = run(capsys, "tpc-decide", "@Z4X-X2")
    assert code == 0 and "does not admit" in out
    code, out, _ = run(capsys, "tpc-decide", "Z2 x @Z2XY-RAD2")
    assert code == 0 and "does not admit" in out


def test_decider_discrepancy_exits_2(capsys, monkeypatch):
    import zdcodes.cli as cli_mod

    # sabotage one route: a disagreement between deciders must surface as exit 2
    monkeypatch.setattr(cli_mod.zdg, "tpc_pair_solver", lambda z, find_all=False: None)
    code, out, _ = run(capsys, "tpc-decide", "Z12")
    assert code == 2 and "DISCREPANCY" in out


def test_verify_unexpected_discrepancy_exits_2(capsys, monkeypatch):
    from zdcodes import suites

    def broken(max_n=24):
        rep = suites.SuiteReport("paths")
        rep.finding("path:3", "synthetic regression")
        return rep

    monkeypatch.setitem(suites.SUITES, "paths", broken)
    code, out, _ = run(capsys, "verify", "paths")
    assert code == 2 and "UNEXPECTED" in out
