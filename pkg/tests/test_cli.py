import json

import jsonschema
import numpy as np
import pytest

from cozmokit import BitSequence, a51_keystream, a51_load_standard, cozmo_keystream, trivium_keystream
from cozmokit.cli import main
from cozmokit.sts import report_schema
from cozmokit.trivium import from_estream_hex, to_estream_bytes
from cozmokit.vectors import A51_GSM, TRIVIUM_ESTREAM

KEY = "0123456789abcdef0123"
IV = "fedcba9876543210fedc"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_cozmo_ascii_million(tmp_path, capsys):
    out = tmp_path / "k.txt"
    code, _, _ = run(capsys, "gen", "--cipher", "cozmo", "--key", KEY, "--iv", IV, "-n", 10**6, "--format", "ascii", "--out", out)
    assert code == 0
    text = out.read_text()
    assert len(text) == 10**6 and set(text) <= {"0", "1"}
    assert text == cozmo_keystream(KEY, IV, 10**6).to_ascii()


@pytest.mark.parametrize("vector", TRIVIUM_ESTREAM, ids=lambda v: v["name"])
def test_gen_trivium_reference(tmp_path, capsys, vector):
    key = from_estream_hex(vector["key"]).to_hex()
    iv = from_estream_hex(vector["iv"]).to_hex()
    out = tmp_path / "k.bin"
    code, _, _ = run(capsys, "gen", "--cipher", "trivium", "--key", key, "--iv", iv, "-n", 512, "--out", out)
    assert code == 0
    bits = BitSequence.from_bytes(out.read_bytes())
    assert to_estream_bytes(bits).hex().upper() == vector["stream_0_63"].upper()


def test_gen_a51_standard_burst(capsys):
    code, out, _ = run(
        capsys, "gen", "--cipher", "a51-standard", "--key", A51_GSM["key"], "--frame", A51_GSM["frame"],
        "-n", 114, "--format", "hex",
    )
    assert code == 0
    assert out.upper() == A51_GSM["a_to_b"].upper()


def test_gen_a51_raw(capsys):
    code, out, _ = run(capsys, "gen", "--cipher", "a51-raw", "--key", "0" * 16, "-n", 16, "--format", "ascii")
    assert code == 0 and out == "0" * 16


def test_gen_zero_bits(tmp_path, capsys):
    out = tmp_path / "empty.bin"
    code, _, _ = run(capsys, "gen", "--cipher", "trivium", "--key", KEY, "--iv", IV, "-n", 0, "--out", out)
    assert code == 0 and out.read_bytes() == b""


@pytest.mark.parametrize(
    "argv",
    [
        ["--cipher", "trivium", "--key", "00", "--iv", IV],
        ["--cipher", "cozmo", "--key", KEY],
        ["--cipher", "trivium", "--key", KEY, "--iv", "zz" * 10],
        ["--cipher", "a51-raw", "--key", KEY],
        ["--cipher", "a51-raw", "--key", "0" * 16, "--iv", IV],
        ["--cipher", "a51-standard", "--key", "0" * 16, "--frame", 1 << 22],
        ["--cipher", "trivium", "--iv", IV],
    ],
)
def test_gen_bad_arguments_exit_2(capsys, argv):
    code, _, err = run(capsys, "gen", *argv, "-n", 8)
    assert code == 2 and err


def test_gen_unwritable_path_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "gen", "--cipher", "trivium", "--key", KEY, "--iv", IV, "-n", 8, "--out", tmp_path / "no" / "x")
    assert code == 3 and "cannot write" in err


def test_argparse_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        main(["gen", "--cipher", "rot13"])
    assert info.value.code == 2


def test_key_file(tmp_path, capsys):
    kf = tmp_path / "key.hex"
    kf.write_text(KEY + "\n")
    code, out, _ = run(capsys, "gen", "--cipher", "trivium", "--key-file", kf, "--iv", IV, "-n", 64, "--format", "ascii")
    assert code == 0 and out == trivium_keystream(KEY, IV, 64).to_ascii()
    code, _, _ = run(capsys, "gen", "--cipher", "trivium", "--key-file", tmp_path / "missing", "--iv", IV, "-n", 8)
    assert code == 3


@pytest.mark.parametrize("cipher", ["cozmo", "trivium", "a51-standard"])
def test_crypt_involution(tmp_path, capsys, cipher):
    key_args = ["--key", KEY, "--iv", IV] if cipher != "a51-standard" else ["--key", A51_GSM["key"], "--frame", 5]
    plain = tmp_path / "plain"
    plain.write_bytes(np.random.default_rng(3).bytes(5000))
    enc, dec = tmp_path / "enc", tmp_path / "dec"
    assert run(capsys, "crypt", "--cipher", cipher, *key_args, "--in", plain, "--out", enc)[0] == 0
    assert run(capsys, "crypt", "--cipher", cipher, *key_args, "--in", enc, "--out", dec)[0] == 0
    assert dec.read_bytes() == plain.read_bytes()


def test_crypt_empty_and_zero_files(tmp_path, capsys):
    empty, out = tmp_path / "empty", tmp_path / "out"
    empty.write_bytes(b"")
    assert run(capsys, "crypt", "--cipher", "trivium", "--key", KEY, "--iv", IV, "--in", empty, "--out", out)[0] == 0
    assert out.read_bytes() == b""
    zeros = tmp_path / "zeros"
    zeros.write_bytes(bytes(300))
    assert run(capsys, "crypt", "--cipher", "trivium", "--key", KEY, "--iv", IV, "--in", zeros, "--out", out)[0] == 0
    assert out.read_bytes() == trivium_keystream(KEY, IV, 2400).to_bytes()


def test_crypt_missing_input_exit_3(tmp_path, capsys):
    code, _, err = run(capsys, "crypt", "--cipher", "trivium", "--key", KEY, "--iv", IV, "--in", tmp_path / "nope", "--out", tmp_path / "o")
    assert code == 3 and err


def test_test_trivium_passes(capsys):
    code, out, _ = run(capsys, "test", "--cipher", "trivium", "--key", KEY, "--iv", IV, "-n", 200_000)
    assert code == 0
    names = [line.split("  ")[0] for line in out.splitlines()[2:9]]
    assert names == [
        "Frequency",
        "Cumulative Sums",
        "Approximate Entropy",
        "Linear Complexity",
        "Serial",
        "Longest Run of Ones",
        "Runs",
    ]


def test_test_constant_input_fails(tmp_path, capsys):
    src = tmp_path / "const.txt"
    src.write_text("1" * 20_000)
    code, out, _ = run(capsys, "test", "--input", src, "--m-serial", 4, "--m-apen", 2)
    assert code == 1
    freq = next(line for line in out.splitlines() if line.startswith("Frequency"))
    assert "Failure" in freq


def test_test_json_validates(tmp_path, capsys):
    src = tmp_path / "bits.bin"
    src.write_bytes(trivium_keystream(KEY, IV, 80_000).to_bytes())
    code, out, _ = run(capsys, "test", "--input", src, "--format", "raw", "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, report_schema())
    assert code == (0 if doc["overall"] == "pass" else 1)


def test_test_cozmo_default_table_order(capsys):
    code, out, _ = run(capsys, "test", "--cipher", "cozmo", "--key", KEY, "--iv", IV, "-n", 100_000)
    lines = out.splitlines()
    assert [line.split("  ")[0] for line in lines[2:9]][0] == "Frequency"
    assert lines[8].startswith("Runs")
    assert code in (0, 1)


def test_test_errors(tmp_path, capsys):
    assert run(capsys, "test", "--input", tmp_path / "missing")[0] == 3
    assert run(capsys, "test")[0] == 2
    assert run(capsys, "test", "--cipher", "trivium", "--key", KEY, "--iv", IV)[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("0102")
    assert run(capsys, "test", "--input", bad)[0] == 2


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--states", 10, "--steps", 1000)
    assert code == 0
    assert "6/6 checks passed" in out
