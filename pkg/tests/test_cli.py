import json
from fractions import Fraction

import pytest

from chainfft.cli import main
from chainfft.combinat import ChainKind
from chainfft.transform import element_to_json, random_element


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bratteli_dot_counts(capsys):
    code, out, _ = run(capsys, "bratteli", "--chain", "brauer", "-n", "3", "--format", "dot")
    assert code == 0
    assert out.count("->") == 11
    nodes = [l for l in out.splitlines() if l.endswith('";') and "->" not in l]
    assert len(nodes) == 9


def test_bratteli_json(capsys):
    code, out, _ = run(capsys, "bratteli", "--chain", "tl", "-n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["kind"] == "tl"


def test_dims_csv(capsys):
    code, out, _ = run(capsys, "dims", "--chain", "brauer", "-n", "4", "--format", "csv")
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "level,sum_of_squares,algebra_dim"
    assert rows[-1] == "4,105,105"


def test_deterministic_output(capsys):
    code1, out1, _ = run(capsys, "plan", "--chain", "tl", "-n", "5")
    code2, out2, _ = run(capsys, "plan", "--chain", "tl", "-n", "5")
    assert code1 == code2 == 0 and out1 == out2


def test_fft_sov_within_bound(tmp_path, capsys):
    f = random_element(ChainKind.TEMPERLEY_LIEB, 4, 3)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(element_to_json(f, Fraction(10, 3))))
    code, out, _ = run(
        capsys, "fft", "--chain", "tl", "-n", "4", "--q", "10/3",
        "--algo", "sov", "--coeffs", str(path),
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["ops"]["mul"] <= 532
    assert payload["bound"]["paper"] == "532"


def test_fft_naive_matches_sov(tmp_path, capsys):
    f = random_element(ChainKind.BRAUER, 3, 1)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(element_to_json(f, Fraction(10, 3))))
    _, out_n, _ = run(capsys, "fft", "--chain", "brauer", "-n", "3",
                      "--algo", "naive", "--coeffs", str(path))
    _, out_s, _ = run(capsys, "fft", "--chain", "brauer", "-n", "3",
                      "--algo", "sov", "--coeffs", str(path))
    blocks_n = json.loads(out_n)["blocks"]
    blocks_s = json.loads(out_s)["blocks"]
    assert blocks_n == blocks_s


def test_invert_roundtrip(tmp_path, capsys):
    f = random_element(ChainKind.TEMPERLEY_LIEB, 3, 9)
    path = tmp_path / "f.json"
    path.write_text(json.dumps(element_to_json(f, Fraction(10, 3))))
    code, out, _ = run(capsys, "invert", "--chain", "tl", "-n", "3", "--coeffs", str(path))
    assert code == 0 and json.loads(out)["roundtrip"] == "pass"


def test_verify_all_brauer3(capsys):
    code, out, _ = run(capsys, "verify", "--chain", "brauer", "-n", "3", "--suite", "all")
    assert code == 0
    for suite in ("relations", "factor-set", "hom-counts", "roundtrip", "bounds"):
        assert f"{suite}: pass" in out


def test_usage_errors(capsys):
    code, _, err = run(capsys, "fft", "--chain", "bmw", "-n", "3", "--coeffs", "x.json")
    assert code == 2 and "structural" in err
    code, _, err = run(capsys, "bratteli", "--chain", "sn", "-n", "3", "--q", "2")
    assert code == 2
    code, _, _ = run(capsys, "bratteli", "--chain", "nope", "-n", "3")
    assert code == 2


def test_bmw_structural_commands(capsys):
    code, out, _ = run(capsys, "bratteli", "--chain", "bmw", "-n", "4")
    assert code == 0
    code, out, _ = run(capsys, "plan", "--chain", "bmw", "-n", "4")
    assert code == 0
    payload = json.loads(out)
    assert payload["paper_total"] is not None


def test_bench_columns(capsys):
    code, out, _ = run(
        capsys, "bench", "--chain", "tl", "-n", "2", "--n-max", "4", "--trials", "1",
    )
    assert code == 0
    rows = out.strip().splitlines()
    assert rows[0] == "n,dim,naive_mul,sov_mul,sov_add,predicted,paper_bound,reduced_t"
    for row in rows[1:]:
        n, dim, naive_mul, sov_mul, sov_add, predicted, paper, reduced = row.split(",")
        assert int(sov_mul) <= int(paper)
        assert int(sov_add) <= int(sov_mul)
        assert Fraction(int(sov_mul), int(dim)) == Fraction(reduced)
