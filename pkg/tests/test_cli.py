import json

import pytest

from gammoids.cli import main
from gammoids.complexity import uniform_rep
from gammoids.matroid import equals, matroid_from_dict, matroid_to_dict, uniform
from gammoids.representation import rep_from_dict, rep_to_dict


@pytest.fixture
def rep_file(tmp_path):
    path = tmp_path / "u24_rep.json"
    path.write_text(json.dumps(rep_to_dict(uniform_rep(2, 4))))
    return str(path)


@pytest.fixture
def matroid_file(tmp_path):
    path = tmp_path / "u12.json"
    path.write_text(json.dumps(matroid_to_dict(uniform(1, 2))))
    return str(path)


def test_eval_uniform_rep(rep_file, capsys):
    assert main(["eval", rep_file]) == 0
    out = capsys.readouterr()
    m = matroid_from_dict(json.loads(out.out))
    assert equals(m, uniform(2, 4))
    assert "rank 2" in out.err


def test_eval_round_trip_through_files(rep_file, tmp_path, capsys):
    out_path = tmp_path / "m.json"
    assert main(["eval", rep_file, "-o", str(out_path)]) == 0
    m = matroid_from_dict(json.loads(out_path.read_text()))
    assert equals(m, uniform(2, 4))


def test_eval_arc_free_full_target_rep(tmp_path, capsys):
    path = tmp_path / "free.json"
    path.write_text(json.dumps({
        "digraph": {"vertices": ["a", "b"], "arcs": []},
        "targets": ["a", "b"],
        "ground": ["a", "b"],
    }))
    assert main(["eval", str(path)]) == 0
    m = matroid_from_dict(json.loads(capsys.readouterr().out))
    assert m.rank == 2 and len(m.bases) == 1  # free matroid


def test_eval_malformed_json(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"digraph": [')
    assert main(["eval", str(bad)]) == 1
    assert "invalid JSON" in capsys.readouterr().err


def test_eval_missing_file(capsys):
    assert main(["eval", "/nonexistent/nope.json"]) == 1


def test_transform_dualize_verify(rep_file, capsys):
    assert main(["transform", rep_file, "dualize", "--verify"]) == 0
    out = capsys.readouterr()
    rep = rep_from_dict(json.loads(out.out))
    assert sorted(rep.target_labels()) == ["3", "4"]
    assert "verified" in out.err


def test_transform_restrict_identity(rep_file, capsys):
    assert main(["transform", rep_file, "restrict", "--subset", "1,2,3,4", "--verify"]) == 0
    rep = rep_from_dict(json.loads(capsys.readouterr().out))
    assert rep == uniform_rep(2, 4)


def test_transform_contract_to_three_set(rep_file, tmp_path, capsys):
    out_path = tmp_path / "contracted.json"
    code = main(["transform", rep_file, "contract", "--subset", "2,3,4",
                 "--verify", "-o", str(out_path)])
    assert code == 0
    # evaluate the emitted file: must be the rank-one uniform matroid
    assert main(["eval", str(out_path)]) == 0
    m = matroid_from_dict(json.loads(capsys.readouterr().out))
    assert m.rank == 1 and len(m.bases) == 3


def test_transform_standardize_default_base(rep_file, capsys):
    assert main(["transform", rep_file, "standardize", "--verify"]) == 0


def test_transform_rebase_requires_base(rep_file, capsys):
    assert main(["transform", rep_file, "rebase"]) == 1


def test_arc_complexity_command(matroid_file, capsys):
    assert main(["arc-complexity", matroid_file]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["value"] == 1 and blob["exhaustive"]


def test_arc_complexity_budget_exit(tmp_path, capsys):
    path = tmp_path / "u24.json"
    path.write_text(json.dumps(matroid_to_dict(uniform(2, 4))))
    assert main(["arc-complexity", str(path), "--limits.max-arcs", "3"]) == 3
    blob = json.loads(capsys.readouterr().out)
    assert blob["error"] == "budget-exhausted"


def test_fwidth_command(matroid_file, capsys):
    assert main(["fwidth", matroid_file, "--f", "fhat"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["value"] == "1/2"


def test_in_class_command(matroid_file, capsys):
    assert main(["in-class", matroid_file, "--q", "1/2"]) == 0
    assert json.loads(capsys.readouterr().out)["member"] is True
    assert main(["in-class", matroid_file, "--q", "1/4"]) == 0
    assert json.loads(capsys.readouterr().out)["member"] is False


def test_in_class_with_table_function(matroid_file, tmp_path, capsys):
    table = tmp_path / "table.json"
    table.write_text(json.dumps([1] + [2 * x for x in range(1, 10)]))
    assert main(["in-class", matroid_file, "--f", f"table:{table}", "--q", "1/4"]) == 0
    assert json.loads(capsys.readouterr().out)["member"] is True  # width 1/4 under 2x


def test_conjecture_uniform_command(capsys):
    assert main(["conjecture-uniform", "1", "3"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["verified"] and blob["value"] == 2


def test_conjecture_uniform_budget(capsys):
    assert main(["conjecture-uniform", "2", "4", "--limits.max-arcs", "3"]) == 3


def test_check_command_small(capsys):
    code = main(["check", "swap-invariance", "--max-vertices", "3"])
    assert code == 0
    out = capsys.readouterr()
    results = json.loads(out.out)
    assert results[0]["passed"] and results[0]["cases"] == 3088
    assert "swap-invariance" in out.err


def test_check_command_routing(capsys):
    assert main(["check", "routing-oracle", "--instances", "60", "--seed", "5"]) == 0


def test_check_rejects_unknown_suite():
    with pytest.raises(SystemExit) as exc:
        main(["check", "no-such-suite"])
    assert exc.value.code == 2


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["transform"])  # missing arguments
    assert exc.value.code == 2
