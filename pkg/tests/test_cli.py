import json

import pytest

from iafeas import (
    NetworkConfig,
    allocation_from_json_dict,
    parse_dump,
    verify_allocation,
)
from iafeas.cli import main


def write_cfg(tmp_path, name, pairs, **extra):
    obj = {"pairs": [{"M": m, "N": n, "d": d} for m, n, d in pairs]}
    obj.update(extra)
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(autouse=True)
def no_ambient_seed(monkeypatch):
    monkeypatch.delenv("IA_KIT_SEED", raising=False)


def test_check_feasible_exit_zero(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "ring.json", [(2, 2, 1)] * 3)
    code, out, _ = run(capsys, "check", cfg)
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "FEASIBLE"
    assert rep["label"] == "(2x2,1)^3"
    assert rep["sound"] is True
    assert rep["shape"] == {"constraints": 6, "variables": 6}


def test_check_infeasible_exit_one(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "ring4.json", [(2, 2, 1)] * 4)
    code, out, _ = run(capsys, "check", cfg)
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] == "INFEASIBLE"
    assert rep["rule"].startswith("necessary:")
    assert rep["witness"]["lhs"] < rep["witness"]["rhs"]


def test_check_undetermined_exit_two(tmp_path, capsys):
    # every counting test passes, yet the coefficient matrix loses rank:
    # the single-antenna pair forces the other two into a square deficient
    # subsystem that no necessary condition sees
    cfg = write_cfg(tmp_path, "gap.json", [(1, 1, 1), (4, 4, 2), (4, 4, 2)])
    code, out, _ = run(capsys, "check", cfg)
    assert code == 2
    rep = json.loads(out)
    assert rep["verdict"] == "UNDETERMINED"
    assert rep["rule"] == "inconclusive"
    assert rep["necessary"]["passed"] is True
    assert rep["rank"]["full_row_rank"] is False


def test_check_square_deficient_pair_is_caught_by_link_budget(tmp_path, capsys):
    # (3x3,2)^2 is proper and square (C = V = 8) but already the single
    # link needs max(M_1, N_2) >= d_1 + d_2
    cfg = write_cfg(tmp_path, "edge.json", [(3, 3, 2)] * 2)
    code, out, _ = run(capsys, "check", cfg)
    assert code == 1
    rep = json.loads(out)
    assert rep["verdict"] == "INFEASIBLE"
    assert rep["rule"] == "necessary:antenna_budget"
    assert (rep["witness"]["lhs"], rep["witness"]["rhs"]) == (3, 4)
    assert rep["rank"]["full_row_rank"] is False


def test_check_malformed_exit_three(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "check", str(bad))
    assert code == 3
    assert "error" in err

    code, _, _ = run(capsys, "check", str(tmp_path / "absent.json"))
    assert code == 3

    noise = tmp_path / "noise.json"
    noise.write_text(json.dumps({"pairs": [[2, 2, 1]]}))
    code, _, _ = run(capsys, "check", str(noise))
    assert code == 3

    code, _, _ = run(capsys, "nonsense")
    assert code == 3
    code, _, _ = run(capsys)
    assert code == 3


def test_check_solver_section(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "ring.json", [(2, 2, 1)] * 3)
    code, out, _ = run(capsys, "check", cfg, "--solve")
    assert code == 0
    rep = json.loads(out)
    solver = rep["solver"]
    assert solver["alt_min"]["converged"] is True
    assert solver["gauss_newton"]["converged"] is True
    assert solver["agrees"] is True


def test_check_rerun_is_byte_identical(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "mixed.json", [(2, 3, 1), (4, 3, 2), (3, 2, 1)])
    code1, out1, _ = run(capsys, "check", cfg)
    code2, out2, _ = run(capsys, "check", cfg)
    assert (code1, out1) == (code2, out2)


def test_seed_precedence(tmp_path, capsys, monkeypatch):
    plain = write_cfg(tmp_path, "plain.json", [(2, 2, 1)] * 3)
    seeded = write_cfg(tmp_path, "seeded.json", [(2, 2, 1)] * 3, seed=9)

    def dump(*argv):
        code, out, _ = run(capsys, *argv)
        assert code == 0
        return out

    ref = {s: dump("hall", plain, "--seed", str(s)) for s in (0, 5, 7, 9)}
    assert len(set(ref.values())) == 4

    # no flag, no file seed, no env: seed 0
    assert dump("hall", plain) == ref[0]
    # env var fills in when nothing else is given
    monkeypatch.setenv("IA_KIT_SEED", "7")
    assert dump("hall", plain) == ref[7]
    # the file seed beats the environment
    assert dump("hall", seeded) == ref[9]
    # the flag beats both
    assert dump("hall", seeded, "--seed", "5") == ref[5]


def test_hall_complex_dump(tmp_path, capsys):
    cfg = write_cfg(tmp_path, "mixed.json", [(2, 2, 1), (2, 2, 1), (4, 2, 2)])
    code, out, _ = run(capsys, "hall", cfg)
    assert code == 0
    C, V, token, trips = parse_dump(out)
    assert (C, V, token) == (10, 8, "complex")
    assert all(1 <= r <= C and 1 <= c <= V for r, c, _ in trips)


def test_hall_prime_dump(tmp_path, capsys):
    flagged = write_cfg(tmp_path, "ring.json", [(2, 2, 1)] * 3)
    code, out, _ = run(capsys, "hall", flagged, "--field", "prime", "--prime", "1048583")
    assert code == 0
    C, V, token, trips = parse_dump(out)
    assert (C, V, token) == (6, 6, "prime:1048583")
    assert all(isinstance(v, int) and 0 <= v < 1048583 for _, _, v in trips)

    # moduli outside [2**20, 2**31) are refused
    code, _, err = run(capsys, "hall", flagged, "--field", "prime", "--prime", "97")
    assert code == 3 and "2**20" in err

    # the config file can pin the field itself
    filed = write_cfg(
        tmp_path, "ring_gf.json", [(2, 2, 1)] * 3, field={"prime": 2147483647}
    )
    code, out, _ = run(capsys, "hall", filed)
    assert code == 0
    assert out.splitlines()[0] == "6 6 prime:2147483647"


def test_alloc_balanced(tmp_path, capsys):
    cfg_file = write_cfg(tmp_path, "div.json", [(6, 4, 2)] * 3)
    code, out, _ = run(capsys, "alloc", cfg_file)
    assert code == 0
    blob = json.loads(out)
    assert blob["verdict"] == "balanced"
    assert blob["variant"] == "bundled"
    assert blob["certificate"] is True

    cfg = NetworkConfig.symmetric(3, 6, 4, 2)
    alloc = allocation_from_json_dict(cfg, blob["allocation"])
    assert verify_allocation(cfg, alloc).certificate

    code, out, _ = run(capsys, "alloc", cfg_file, "--plain")
    assert code == 0
    assert json.loads(out)["variant"] == "plain"


def test_alloc_stuck(tmp_path, capsys):
    cfg_file = write_cfg(tmp_path, "ring4.json", [(2, 2, 1)] * 4)
    code, out, _ = run(capsys, "alloc", cfg_file)
    assert code == 1
    blob = json.loads(out)
    assert blob["verdict"] == "stuck"
    assert blob["witness"]["lhs"] < blob["witness"]["rhs"]
    assert blob["tree"]["nodes"]


def test_sweep_grid(capsys):
    code, out, _ = run(capsys, "sweep", "--K", "3:4", "--M", "2", "--d", "1")
    assert code == 0
    lines = [json.loads(t) for t in out.splitlines()]
    body, footer = lines[:-1], lines[-1]["footer"]
    assert [b["label"] for b in body] == ["(2x2,1)^3", "(2x2,1)^4"]
    assert [b["verdict"] for b in body] == ["FEASIBLE", "INFEASIBLE"]
    assert all(b["sound"] for b in body)
    assert footer == {
        "configs": 2,
        "feasible": 1,
        "infeasible": 1,
        "undetermined": 0,
        "soundness_violations": 0,
    }


def test_sweep_configs_file_and_workers(tmp_path, capsys):
    lst = tmp_path / "list.json"
    lst.write_text(
        json.dumps(
            [
                {"pairs": [[2, 2, 1], [2, 2, 1], [2, 2, 1]]},
                [[1, 1, 1], [4, 4, 2], [4, 4, 2]],
                [[7, 8, 3], [7, 8, 3], [7, 8, 3], [7, 8, 3]],
            ]
        )
    )
    code1, out1, _ = run(capsys, "sweep", "--configs", str(lst))
    assert code1 == 0
    footer = json.loads(out1.splitlines()[-1])["footer"]
    assert footer["configs"] == 3
    assert footer["undetermined"] == 1
    assert footer["soundness_violations"] == 0

    code2, out2, _ = run(capsys, "sweep", "--configs", str(lst), "--workers", "2")
    assert code2 == 0
    assert out2 == out1


def test_sweep_bad_grids(tmp_path, capsys):
    code, _, err = run(capsys, "sweep")
    assert code == 3 and "sweep needs" in err

    code, _, _ = run(capsys, "sweep", "--K", "3", "--M", "2")
    assert code == 3

    code, _, _ = run(capsys, "sweep", "--K", "5:4", "--M", "2", "--d", "1")
    assert code == 3

    code, _, _ = run(capsys, "sweep", "--K", "x", "--M", "2", "--d", "1")
    assert code == 3

    lst = tmp_path / "list.json"
    lst.write_text(json.dumps([{"streams": 2}]))
    code, _, _ = run(capsys, "sweep", "--configs", str(lst))
    assert code == 3

    lst.write_text("[]")
    code, _, _ = run(capsys, "sweep", "--configs", str(lst))
    assert code == 3
