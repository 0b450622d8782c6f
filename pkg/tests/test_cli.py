import json
import subprocess
import sys

import pytest

from ordercone.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def l1_file(tmp_path, capsys):
    path = tmp_path / "l1.json"
    assert run(capsys, "gen", "--kind", "l1", "--m", "2", "--out", str(path))[0] == 0
    return path


def test_gen_is_byte_identical(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    hashes = []
    for p in paths:
        code, out, _ = run(capsys, "gen", "--kind", "direct-sum", "--n1", "2", "--n2", "1", "--seed", "7",
                           "--out", str(p))
        assert code == 0
        hashes.append(out.strip())
    assert paths[0].read_bytes() == paths[1].read_bytes()
    assert hashes[0] == hashes[1] and len(hashes[0]) == 64
    assert "projection" in json.loads(paths[0].read_text())


def test_gen_l1_four_rays(l1_file):
    assert len(json.loads(l1_file.read_text())["cone"]["generators"]) == 4


def test_gen_bad_params_exit_2(capsys):
    assert run(capsys, "gen", "--kind", "l1", "--m", "1")[0] == 2
    assert run(capsys, "gen", "--kind", "simplicial")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--kind", "nope"])
    assert exc.value.code == 2


def test_check_disjoint_with_negative_vector(l1_file, capsys):
    code, out, _ = run(capsys, "check", str(l1_file), "disjoint", "1,0,1", "-1,0,1")
    assert code == 0 and json.loads(out)["holds"] is True
    code, out, _ = run(capsys, "check", str(l1_file), "disjoint", "1,0,1", "0,1,1")
    verdict = json.loads(out)
    assert code == 1 and verdict["holds"] is False and verdict["witness"]["witness"]


def test_check_order_projection_on_direct_sum(tmp_path, capsys):
    p = tmp_path / "ds.json"
    run(capsys, "gen", "--kind", "direct-sum", "--n1", "2", "--n2", "2", "--seed", "1", "--out", str(p))
    code, out, _ = run(capsys, "check", str(p), "order-projection")
    assert code == 0 and json.loads(out)["holds"]


def test_check_leq_on_orthant(tmp_path, capsys):
    p = tmp_path / "o.json"
    run(capsys, "gen", "--kind", "direct-sum", "--n1", "1", "--n2", "1", "--blocks", "orthant,orthant",
        "--no-basis-change", "--out", str(p))
    assert run(capsys, "check", str(p), "leq", "0,0", "1,2")[0] == 0
    assert run(capsys, "check", str(p), "leq", "1,0", "0,1")[0] == 1


@pytest.mark.parametrize(
    "args",
    [("disjoint", "1,0", "0,1,1"), ("disjoint", "1,x,1", "0,1,1"), ("disjoint", "1,0,1"),
     ("inf-zero", "-1,0,0", "0,1,1"), ("order-projection",)],
)
def test_check_input_errors_exit_2(l1_file, capsys, args):
    assert run(capsys, "check", str(l1_file), *args)[0] == 2


def test_check_missing_file(tmp_path, capsys):
    assert run(capsys, "check", str(tmp_path / "none.json"), "leq", "0", "1")[0] == 2


def test_verify_paper_json(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify-paper", "--dims", "2..3", "--trials", "4", "--seed", "1",
                       "--probes", "4", "--json", "--out", str(out_path))
    report = json.loads(out)
    assert code == 0 and report["fail_count"] == 0
    assert report["global_seed"] == 1 and report["version"]
    assert json.loads(out_path.read_text())["claims"] == report["claims"]


def test_verify_paper_rejects_zero_trials(capsys):
    assert run(capsys, "verify-paper", "--trials", "0")[0] == 2


def test_sabotage_dumps_replay(tmp_path, capsys):
    code, out, _ = run(capsys, "verify-paper", "--dims", "2..3", "--trials", "3", "--seed", "5",
                       "--probes", "4", "--json", "--sabotage", "flip-disjoint")
    report = json.loads(out)
    assert code == 1 and report["fail_count"] > 0
    replayed = 0
    for i, dump in enumerate(report["failures"]):
        path = tmp_path / f"dump{i}.json"
        path.write_text(json.dumps(dump["instance"]))
        for q in dump["queries"]:
            vecs = [",".join(v) for v in q["vectors"]]
            qcode, qout, _ = run(capsys, "check", str(path), q["query"], *vecs)
            assert json.loads(qout)["holds"] == q["holds"]
            assert qcode == (0 if q["holds"] else 1)
            replayed += 1
    assert replayed > 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "ordercone", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("ordercone ")
