import json
import shutil
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from mdsarray import striping
from mdsarray.cli import main
from mdsarray.field import bits_to_sym, sym_to_bits
from mdsarray.presets import PRESETS


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def write_config(tmp_path, name="cfg.json", **doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def shard_symbols(shard_dir):
    m = striping.read_manifest(shard_dir)
    words, _ = striping.read_shards(m, shard_dir)
    return words


def assert_single_error_line(err):
    lines = [l for l in err.splitlines() if l.startswith("error:")]
    assert len(lines) == 1


# -- gen ------------------------------------------------------------------------


def test_gen_accepts_valid_code(tmp_path, capsys):
    cfg = write_config(tmp_path, **PRESETS["ex32"])
    out_path = tmp_path / "norm.json"
    code, out, _ = run(capsys, "--config", cfg, "gen", out_path)
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc == {**PRESETS["ex32"], "trusted": False}


def test_gen_prints_to_stdout_and_accepts_presets(capsys):
    code, out, _ = run(capsys, "gen", "--config", "preset:ex43")
    assert code == 0
    assert json.loads(out)["matrix"]["kind"] == "cauchy"


@pytest.mark.parametrize(
    "doc, expect",
    [
        ({"b": 3, "m": 2, "k": 2, "poly": 13, "matrix": {"kind": "vandermonde", "points": [1, 1]}}, 3),
        ({"b": 4, "m": 2, "k": 2, "poly": 0b11001, "matrix": {"kind": "cauchy", "xs": [1, 2], "ys": [2, 3]}}, 3),
        ({"b": 5, "m": 6, "k": 5, "poly": 0b100101, "matrix": {"kind": "vandermonde", "points": [1, 2, 3, 4, 5]}}, 3),
        ({"b": 4, "m": 2, "k": 2, "poly": 0b11111, "matrix": {"kind": "vandermonde", "points": [1, 2]}}, 4),
        ({"b": 3, "m": 2, "k": 2, "poly": 13, "matrix": {"kind": "hankel"}}, 2),
        ({"b": 3, "m": 2, "k": 2, "poly": 13, "matrix": {"kind": "vandermonde", "points": [1, 2]}, "colour": 1}, 2),
        ({"b": 3, "m": 2, "k": 2, "poly": "x^3+x^2+1", "matrix": {"kind": "vandermonde", "points": [1, 2]}}, 2),
        ({"b": 4, "m": 2, "k": 2, "poly": 13, "matrix": {"kind": "vandermonde", "points": [1, 2]}}, 2),
        ({"b": 3, "m": 2, "k": 3, "poly": 13, "matrix": {"kind": "vandermonde", "points": [1, 2]}}, 2),
    ],
)
def test_gen_exit_codes(tmp_path, capsys, doc, expect):
    code, _, err = run(capsys, "--config", write_config(tmp_path, **doc), "gen")
    assert code == expect
    assert_single_error_line(err)


def test_gen_trusted_skips_superregularity(tmp_path, capsys):
    cfg = write_config(tmp_path, **PRESETS["ex47"])
    assert run(capsys, "--config", cfg, "gen")[0] == 0


def test_invalid_invocations(tmp_path, capsys):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{b: 3")
    for argv, expect in [
        (["--config", bad_json, "gen"], 2),
        (["gen"], 2),
        (["frobnicate"], 2),
        ([], 2),
        (["--config", tmp_path / "missing.json", "gen"], 5),
        (["--config", "preset:nope", "gen"], 2),
    ]:
        code, _, err = run(capsys, *argv)
        assert code == expect, argv
        assert_single_error_line(err)


# -- encode / corrupt / decode ----------------------------------------------------


@pytest.fixture
def ex42_stripe(tmp_path, capsys):
    # info symbols 101, 110 -> 6 bits, least significant first
    src = tmp_path / "one.bin"
    src.write_bytes(bytes([0b011101]))
    shards = tmp_path / "shards"
    assert run(capsys, "--config", "preset:ex42", "encode", src, shards)[0] == 0
    return src, shards


def test_encode_layout(ex42_stripe):
    _, shards = ex42_stripe
    words = shard_symbols(shards)
    assert [sym_to_bits(int(x), 3) for x in words[0]] == ["101", "110", "011", "011"]
    doc = json.loads((shards / "manifest.json").read_text())
    assert doc["magic"] == "MDSA1" and doc["version"] == 1
    assert doc["original_length"] == 1 and doc["stripe_rows"] == 2
    assert len(doc["shards"]) == 4 and all(len(s["digest"]) == 16 for s in doc["shards"])


def test_corrupt_and_repair_single_error(ex42_stripe, tmp_path, capsys):
    src, shards = ex42_stripe
    code, _, _ = run(capsys, "corrupt", shards, "--position", 1, "--magnitude", "011", "--row", 0)
    assert code == 0
    assert sym_to_bits(int(shard_symbols(shards)[0, 0]), 3) == "110"
    out = tmp_path / "out.bin"
    code, stdout, _ = run(capsys, "decode", shards, out, "--max-errors", 1)
    assert code == 0
    assert "row 0: CORRECTED (1,011)" in stdout
    assert out.read_bytes() == src.read_bytes()


def test_decode_trace(ex42_stripe, tmp_path, capsys):
    _, shards = ex42_stripe
    run(capsys, "corrupt", shards, "--position", 1, "--magnitude", "011")
    code, _, err = run(capsys, "--trace", "decode", shards, tmp_path / "o.bin")
    assert code == 0
    assert "row 0: syndrome: s1=011 s2=100" in err
    assert "row 0: l1=1 y: 000 000" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["--position", 1, "--magnitude", "000"],
        ["--position", 5, "--magnitude", "011"],
        ["--position", 0],
        ["--position", 1, "--magnitude", "01"],
        ["--position", 1, "--row", 7],
        ["--position", 1, "--position", 2],
        ["--random", 2],
        [],
    ],
)
def test_corrupt_rejects_bad_requests(ex42_stripe, capsys, argv):
    _, shards = ex42_stripe
    before = shard_symbols(shards).copy()
    code, _, err = run(capsys, "corrupt", shards, *argv)
    assert code == 2
    assert_single_error_line(err)
    assert (shard_symbols(shards) == before).all()


def _stripe(tmp_path, capsys, preset, data, name="s"):
    src = tmp_path / f"{name}.bin"
    src.write_bytes(data)
    shards = tmp_path / name
    assert run(capsys, "--config", f"preset:{preset}", "encode", src, shards)[0] == 0
    return src, shards


def test_random_corruption_touches_exact_count(tmp_path, capsys):
    _, shards = _stripe(tmp_path, capsys, "ex32", bytes(range(40)))
    before = shard_symbols(shards).copy()
    assert run(capsys, "corrupt", shards, "--random", 2, "--row", 3, "--seed", 8)[0] == 0
    diff = shard_symbols(shards) != before
    assert diff.sum() == 2 and diff[3].sum() == 2


def test_empty_file(tmp_path, capsys):
    src, shards = _stripe(tmp_path, capsys, "ex32", b"")
    doc = json.loads((shards / "manifest.json").read_text())
    assert doc["stripe_rows"] == 0
    assert all((shards / striping.shard_name(j)).read_bytes() == b"" for j in range(1, 11))
    out = tmp_path / "out.bin"
    assert run(capsys, "decode", shards, out)[0] == 0
    assert out.read_bytes() == b""


@settings(max_examples=25, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(data=st.binary(max_size=300), name=st.sampled_from(["ex42", "ex32", "ex43"]))
def test_round_trip_any_length(tmp_path_factory, capsys, data, name):
    tmp = tmp_path_factory.mktemp("rt")
    src, shards = _stripe(tmp, capsys, name, data)
    out = tmp / "out.bin"
    assert run(capsys, "decode", shards, out)[0] == 0
    assert out.read_bytes() == data


@pytest.mark.parametrize("length", [0, 1, 2, 3, 64])
def test_round_trip_stripe_boundaries(tmp_path, capsys, length):
    # ex43 rows hold k*b = 16 bits = 2 bytes
    data = bytes((7 * i + 3) % 256 for i in range(length))
    src, shards = _stripe(tmp_path, capsys, "ex43", data)
    out = tmp_path / "out.bin"
    assert run(capsys, "decode", shards, out)[0] == 0
    assert out.read_bytes() == data


def test_encoding_is_deterministic(tmp_path, capsys):
    data = bytes(range(256)) * 3
    _, a = _stripe(tmp_path, capsys, "ex32", data, "a")
    _, b = _stripe(tmp_path, capsys, "ex32", data, "b")
    for name in ["manifest.json"] + [striping.shard_name(j) for j in range(1, 11)]:
        assert (a / name).read_bytes() == (b / name).read_bytes()


@pytest.mark.parametrize("preset, t", [("ex32", 1), ("ex32", 2), ("ex43", 2), ("ex47", 3)])
def test_repair_every_row(tmp_path, capsys, preset, t):
    data = bytes(np.random.default_rng(t).integers(0, 256, 400, dtype=np.uint8))
    src, shards = _stripe(tmp_path, capsys, preset, data)
    assert run(capsys, "corrupt", shards, "--random", t, "--all-rows", "--seed", 2)[0] == 0
    out = tmp_path / "out.bin"
    code, stdout, err = run(capsys, "decode", shards, out, "--quiet", "--max-errors", t)
    assert code == 0, err
    assert out.read_bytes() == data
    assert "warning" not in err
    assert stdout.strip().startswith("decoded:")


def test_beyond_radius_is_never_silent(tmp_path, capsys):
    data = bytes(np.random.default_rng(0).integers(0, 256, 300, dtype=np.uint8))
    src, shards = _stripe(tmp_path, capsys, "ex32", data)
    code, _, err = run(capsys, "corrupt", shards, "--random", 3, "--all-rows", "--seed", 4)
    assert code == 2
    assert run(capsys, "corrupt", shards, "--random", 3, "--all-rows", "--seed", 4, "--force")[0] == 0
    out = tmp_path / "out.bin"
    code, _, err = run(capsys, "decode", shards, out, "--quiet")
    assert code == 6 or "warning" in err or out.read_bytes() == data
    if code == 6:
        assert_single_error_line(err)


def test_stale_manifest_warns_but_trusts_decode(tmp_path, capsys):
    data = b"stale manifests happen"
    src, shards = _stripe(tmp_path, capsys, "ex32", data)
    doc = json.loads((shards / "manifest.json").read_text())
    doc["shards"][0]["digest"] = "0" * 16
    (shards / "manifest.json").write_text(json.dumps(doc))
    out = tmp_path / "out.bin"
    code, _, err = run(capsys, "decode", shards, out)
    assert code == 0
    assert err.startswith("warning:")
    assert out.read_bytes() == data


def test_decode_json_report_and_jobs(tmp_path, capsys):
    data = bytes(range(200))
    src, shards = _stripe(tmp_path, capsys, "ex32", data)
    run(capsys, "corrupt", shards, "--random", 2, "--all-rows", "--seed", 1)
    pristine = shards.parent / "copy"
    shutil.copytree(shards, pristine)
    code, out, _ = run(capsys, "--json", "decode", shards, tmp_path / "a.bin")
    doc = json.loads(out)
    assert code == 0 and doc["failed_rows"] == 0 and doc["corrected_rows"] == len(doc["rows"])
    assert all(len(r["corrections"]) == 2 for r in doc["rows"])
    code, _, _ = run(capsys, "--jobs", 2, "decode", pristine, tmp_path / "b.bin", "--quiet")
    assert code == 0
    assert (tmp_path / "a.bin").read_bytes() == (tmp_path / "b.bin").read_bytes() == data


def test_io_errors(tmp_path, capsys):
    code, _, err = run(capsys, "decode", tmp_path / "nowhere", tmp_path / "o.bin")
    assert code == 5
    assert_single_error_line(err)
    src, shards = _stripe(tmp_path, capsys, "ex42", b"abc")
    (shards / striping.shard_name(2)).unlink()
    assert run(capsys, "decode", shards, tmp_path / "o.bin")[0] == 5
    code, _, err = run(capsys, "--config", "preset:ex42", "encode", tmp_path / "none.bin", tmp_path / "x")
    assert code == 5


def test_bad_manifest(tmp_path, capsys):
    src, shards = _stripe(tmp_path, capsys, "ex42", b"abc")
    doc = json.loads((shards / "manifest.json").read_text())
    doc["magic"] = "MDSA2"
    (shards / "manifest.json").write_text(json.dumps(doc))
    code, _, err = run(capsys, "decode", shards, tmp_path / "o.bin")
    assert code == 2
    assert_single_error_line(err)


def test_shard_bit_layout():
    # row r, coefficient c at bit r*b + c, bytes LSB first
    raw = striping.pack_shard(np.array([bits_to_sym("110"), bits_to_sym("001"), bits_to_sym("111")]), 3)
    assert raw == bytes([0b11100011, 0b00000001])
    assert list(striping.unpack_shard(raw, 3, 3)) == [bits_to_sym("110"), bits_to_sym("001"), bits_to_sym("111")]


# -- tables / simulate ---------------------------------------------------------------


def test_tables(capsys):
    code, out, _ = run(capsys, "--config", "preset:ex42", "tables", "--what", "companion")
    assert code == 0 and out.splitlines() == ["0,0,1", "1,0,0", "0,1,1"]
    code, out, _ = run(capsys, "--config", "preset:ex47", "tables", "--what", "zech")
    lines = out.splitlines()
    assert lines[0] == "n,zech_n" and lines[1] == "0," and lines[31] == "30,17"
    code, out, _ = run(capsys, "--config", "preset:ex47", "tables")
    assert out.splitlines()[0] == "n,antilog_bits,zech_n" and out.splitlines()[31] == "30,01001,17"
    code, out, _ = run(capsys, "--config", "preset:ex42", "tables", "--what", "log")
    assert out.splitlines()[4] == "3,101"
    code, out, _ = run(capsys, "--config", "preset:ex42", "tables", "--what", "h")
    assert len(out.splitlines()) == 6 and out.splitlines()[0] == "1,0,0,1,0,0,1,0,0,0,0,0"
    code, _, err = run(capsys, "--config", "preset:ex42", "tables", "--what", "primes")
    assert code == 2


def test_simulate_paths_agree(capsys):
    code, out, _ = run(capsys, "--config", "preset:ex32", "--seed", 3, "simulate", "--t", 2, "--trials", 200,
                       "--path", "generic", "--path", "fast")
    assert code == 0
    rows = [dict(zip(out.splitlines()[0].split(","), line.split(","))) for line in out.splitlines()[1:]]
    assert [r["path"] for r in rows] == ["generic", "fast"]
    assert rows[0]["successes"] == rows[1]["successes"] == "200"


def test_simulate_zero_errors_and_cauchy(capsys):
    code, out, _ = run(capsys, "--config", "preset:ex43", "--json", "simulate", "--t", 0, "--trials", 50)
    assert json.loads(out)[0]["successes"] == 50
    code, out, _ = run(capsys, "--config", "preset:ex43", "--json", "simulate", "--t", 2, "--trials", 500)
    doc = json.loads(out)[0]
    assert doc["miscorrections"] == 0 and doc["successes"] == 500
    code, _, err = run(capsys, "--config", "preset:ex43", "simulate", "--t", 3)
    assert code == 2
    assert_single_error_line(err)


def test_console_script(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "mdsarray.cli", "--config", "preset:ex42", "tables", "--what", "companion"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "0,0,1"
