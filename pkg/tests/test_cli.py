from __future__ import annotations

import json

import pytest

from hamlab.cli import main
from hamlab.digraph import parse, serialize
from hamlab.generators import gen_kstar, gen_random_strong, gen_two_cliques


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- gen -------------------------------------------------------------------------


def test_gen_kstar_writes_8_arc_file(capsys):
    code, out, _ = run_cli(capsys, "gen", "kstar", "2", "2")
    assert code == 0
    d = parse(out)
    assert d.n == 4 and d.arc_count() == 8
    assert out == serialize(gen_kstar(2, 2))


def test_gen_to_output_file(capsys, tmp_path):
    target = tmp_path / "d.txt"
    code, out, _ = run_cli(capsys, "gen", "two-cliques", "3", "-o", str(target))
    assert code == 0 and out == ""
    assert parse(target.read_text()).out == gen_two_cliques(3).out


def test_gen_cycle_rejects_order_one(capsys):
    code, _, err = run_cli(capsys, "gen", "cycle", "1")
    assert code == 2 and "error:" in err


def test_gen_rejects_bad_family_and_arity(capsys):
    assert run_cli(capsys, "gen", "moebius", "3")[0] == 2
    assert run_cli(capsys, "gen", "kstar", "3")[0] == 2
    assert run_cli(capsys, "gen", "kstar", "a", "b")[0] == 2


def test_gen_random_strong_is_seed_reproducible(capsys):
    code, out1, _ = run_cli(capsys, "gen", "random-strong", "6", "0.4", "--seed", "9")
    assert code == 0
    code, out2, _ = run_cli(capsys, "gen", "random-strong", "6", "0.4", "--seed", "9")
    assert out1 == out2
    assert out1 == serialize(gen_random_strong(6, 0.4, 9))


# --- check ------------------------------------------------------------------------


def test_check_table_output(capsys, tmp_path):
    f = tmp_path / "k.txt"
    f.write_text(serialize(gen_kstar(3, 3)))
    code, out, _ = run_cli(capsys, "check", str(f))
    assert code == 0
    assert "order 6, arcs 18" in out
    assert "ak margin: 2" in out
    assert "kstar_balanced=3x3" in out
    assert "hamiltonian=yes" in out
    assert "pre_hamiltonian=no" in out


def test_check_json_output(capsys, tmp_path):
    f = tmp_path / "k.txt"
    f.write_text(serialize(gen_two_cliques(3)))
    code, out, _ = run_cli(capsys, "check", str(f), "--json")
    assert code == 0
    data = json.loads(out)
    assert set(data) == {"conditions", "classification"}
    assert data["conditions"]["ak_margin"] == {"kind": "bounded", "max_k": -1}
    assert data["classification"]["hamiltonian"] is False


def test_check_single_vertex_is_vacuous(capsys, tmp_path):
    f = tmp_path / "one.txt"
    f.write_text("1\n")
    code, out, _ = run_cli(capsys, "check", str(f))
    assert code == 0
    assert "order 1, arcs 0" in out


def test_check_malformed_file(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("3\n0 9\n")
    assert run_cli(capsys, "check", str(f))[0] == 2
    assert run_cli(capsys, "check", str(tmp_path / "missing.txt"))[0] == 2


# --- verify ------------------------------------------------------------------------


def test_verify_thm110_n4(capsys):
    code, out, err = run_cli(capsys, "verify", "thm110", "--n", "4")
    assert code == 0
    assert "scanned 4096" in out
    assert "counterexamples 0" in out
    assert "progress:" in err


def test_verify_json_result(capsys):
    code, out, _ = run_cli(capsys, "verify", "thm15", "--n", "4", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["scanned"] == 4096
    assert data["hypothesis_hits"] == 660
    assert data["counterexamples"] == []
    assert data["complete"] is True


def test_verify_bypass_names_one_class(capsys):
    code, out, _ = run_cli(capsys, "verify", "bypass_claim", "--n", "5")
    assert code == 0
    assert out.count("exception class") == 1
    assert "40 labeled copies" in out


def test_verify_sampled_conjecture(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "conj19", "--n", "6", "--mode", "sample",
        "--samples", "5000", "--seed", "7",
    )
    assert code == 0
    assert "scanned 5000" in out


def test_verify_rejects_bad_spec(capsys):
    assert run_cli(capsys, "verify", "thm15", "--n", "3")[0] == 2
    assert run_cli(capsys, "verify", "nope", "--n", "4")[0] == 2
    assert run_cli(capsys, "verify", "thm15", "--n", "6")[0] == 2  # long-run gate


def test_verify_jobs_matches_single(capsys):
    code, out_multi, _ = run_cli(capsys, "verify", "thm110", "--n", "4", "--jobs", "3", "--json")
    assert code == 0
    code, out_single, _ = run_cli(capsys, "verify", "thm110", "--n", "4", "--json")
    assert code == 0
    multi = json.loads(out_multi)
    single = json.loads(out_single)
    for key in ("scanned", "strong", "hypothesis_hits", "verified", "detail"):
        assert multi[key] == single[key]
    assert multi["shards"] == 1  # merged result presents as a whole run


# --- spectrum and bypass --------------------------------------------------------------


def test_spectrum_kstar33(capsys, tmp_path):
    f = tmp_path / "k.txt"
    f.write_text(serialize(gen_kstar(3, 3)))
    code, out, _ = run_cli(capsys, "spectrum", str(f))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "2 4 6"
    assert lines[1].startswith("2: ")
    assert len(lines) == 4


def test_spectrum_empty(capsys, tmp_path):
    f = tmp_path / "none.txt"
    f.write_text("3\n0 1\n")
    code, out, _ = run_cli(capsys, "spectrum", str(f))
    assert code == 0 and out.strip() == "none"


def test_spectrum_malformed(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("not a digraph")
    assert run_cli(capsys, "spectrum", str(f))[0] == 2


def test_bypass_cycle5_none(capsys, tmp_path):
    f = tmp_path / "c5.txt"
    code, out, _ = run_cli(capsys, "gen", "cycle", "5", "-o", str(f))
    assert code == 0
    code, out, _ = run_cli(capsys, "bypass", str(f))
    assert code == 0 and out.strip() == "none"


def test_bypass_kstar22_found(capsys, tmp_path):
    f = tmp_path / "k22.txt"
    run_cli(capsys, "gen", "kstar", "2", "2", "-o", str(f))
    code, out, _ = run_cli(capsys, "bypass", str(f))
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("path: ")
    assert lines[1].startswith("chord: ")
    path = [int(v) for v in lines[0].split(":")[1].split()]
    assert len(path) == 4


def test_bypass_too_small(capsys, tmp_path):
    f = tmp_path / "two.txt"
    f.write_text("2\n0 1\n1 0\n")
    assert run_cli(capsys, "bypass", str(f))[0] == 2
