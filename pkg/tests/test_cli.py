import json
import subprocess
import sys

import pytest

from xorgens import cli, engine
from xorgens.params import lookup


def run(capsys, *argv):
    code = cli.run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_params_row(capsys):
    code, out, _ = run(capsys, "params", "--w", "32", "--n", "1024")
    assert code == cli.EXIT_OK
    assert "r=32 s=15 a=19 b=11 c=13 d=16" in out


def test_params_all(capsys):
    code, out, _ = run(capsys, "params")
    assert code == 0
    assert out.count("w=") == 13


def test_params_unlisted(capsys):
    code, _, err = run(capsys, "params", "--w", "32", "--n", "100")
    assert code == cli.EXIT_UNLISTED
    assert "unlisted parameter row" in err


def test_gen_hex_deterministic(capsys):
    argv = ("gen", "--w", "64", "--n", "4096", "--seed", "1", "--count", "4", "--format", "hex")
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0
    assert first == second
    assert first.splitlines() == [
        "a9b6959c00638fe8", "280a94042ff08420", "d1877c9ba777a713", "68145ee125b49c32",
    ]


def test_gen_hex_is_zero_padded(capsys):
    _, out, _ = run(capsys, "gen", "--w", "32", "--n", "256", "--count", "500", "--format", "hex")
    assert all(len(line) == 8 for line in out.splitlines())


def gen_bytes(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "xorgens", "gen", *argv], capture_output=True, check=True
    )
    return proc.stdout, proc.stderr


def test_gen_raw_little_endian():
    data, _ = gen_bytes("--w", "32", "--n", "4096", "--seed", "7", "--count", "10")
    words = engine.seed(lookup(32, 4096), 7).next_words(10)
    assert data == b"".join(v.to_bytes(4, "little") for v in words)
    assert gen_bytes("--w", "32", "--n", "4096", "--seed", "7", "--count", "10")[0] == data


def test_gen_real(capsys):
    _, out, _ = run(capsys, "gen", "--w", "64", "--n", "1024", "--seed", "3", "--count", "5", "--format", "real")
    xs = [float(v) for v in out.split()]
    assert xs == engine.seed(lookup(64, 1024), 3).next_reals(5)
    assert all(0 < x < 1 for x in xs)


def test_gen_small_row_warns(capsys):
    code, _, err = run(capsys, "gen", "--w", "32", "--n", "128", "--count", "1", "--format", "hex")
    assert code == 0
    assert "warning" in err


def test_gen_default_row(capsys):
    _, out, _ = run(capsys, "gen", "--w", "32", "--count", "2", "--format", "hex")
    words = engine.seed(lookup(32, 4096), 1).next_words(2)
    assert out.split() == [f"{v:08x}" for v in words]


def test_gen_unbounded_stream_into_closed_pipe():
    proc = subprocess.Popen(
        [sys.executable, "-m", "xorgens", "gen", "--w", "64", "--n", "4096"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE,
    )
    chunk = proc.stdout.read(1 << 16)
    proc.stdout.close()
    assert proc.wait(timeout=60) == 0
    assert len(chunk) == 1 << 16
    assert b"Traceback" not in proc.stderr.read()


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--w", "32", "--n", "64")
    assert code == 0
    assert "W=31" in out and "verdict=primitive" in out


def test_verify_unlisted(capsys):
    code, _, err = run(capsys, "verify", "--w", "32", "--n", "100")
    assert code == cli.EXIT_UNLISTED
    assert err.strip() == "xorgens: unlisted parameter row (w=32, n=100)"


def test_verify_corrupt_factors(capsys, tmp_path):
    bad = tmp_path / "f.txt"
    bad.write_text("64: 3 5 17 257 641 65537 6700411\n")
    code, _, err = run(capsys, "verify", "--w", "32", "--n", "64", "--factors", str(bad))
    assert code == cli.EXIT_FACTORS
    assert len(err.strip().splitlines()) == 1


def test_verify_malformed_factors(capsys, tmp_path):
    bad = tmp_path / "f.txt"
    bad.write_text("sixty-four: 3\n")
    code, _, err = run(capsys, "verify", "--w", "32", "--n", "64", "--factors", str(bad))
    assert code == cli.EXIT_FACTORS
    assert "factor table error" in err


def test_search_json(capsys):
    code, out, _ = run(capsys, "search", "--w", "32", "--r", "2", "--json")
    assert code == 0
    result = json.loads(out)
    assert result["found"] == {"s": 1, "a": 17, "b": 14, "c": 12, "d": 19, "delta": 12, "W": 31}
    assert result["status"] == "complete"


def test_search_no_solution(capsys):
    code, out, _ = run(capsys, "search", "--w", "8", "--r", "6")
    assert code == cli.EXIT_NO_SOLUTION
    assert "found=None" in out


def test_search_budget(capsys):
    code, out, _ = run(capsys, "search", "--w", "32", "--r", "2", "--budget", "0")
    assert code == cli.EXIT_INCOMPLETE
    assert "status=incomplete" in out


def test_search_literal_mode(capsys):
    code, out, _ = run(capsys, "search", "--w", "32", "--r", "2", "--allow-repeated-shifts", "--json")
    assert code == 0
    assert json.loads(out)["found"]["delta"] == 13


def test_search_unsupported_n(capsys):
    code, _, err = run(capsys, "search", "--w", "32", "--r", "3")
    assert code == cli.EXIT_FACTORS


@pytest.mark.parametrize(
    "argv",
    [["gen", "--bogus"], ["gen", "--w", "16"], ["frobnicate"], ["gen", "--seed", "-1"], []],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        cli.run(argv)
    assert exc.value.code == cli.EXIT_USAGE
    err = capsys.readouterr().err
    assert len(err.strip().splitlines()) == 1


def test_selftest_quick(capsys):
    code, out, _ = run(capsys, "selftest", "--quick")
    assert code == 0
    assert "0 failed" in out


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", "--w", "64", "--n", "4096", "--seconds", "0.2")
    assert code == 0
    assert "words_per_second=" in out


def test_distinct_exit_codes():
    codes = [cli.EXIT_OK, cli.EXIT_FAILED, cli.EXIT_USAGE, cli.EXIT_UNLISTED, cli.EXIT_FACTORS,
             cli.EXIT_MISMATCH, cli.EXIT_INCOMPLETE, cli.EXIT_NO_SOLUTION]
    assert len(set(codes)) == len(codes)
