import json
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from contractive.cli import run
from contractive.errors import InputError
from contractive.jsonio import (
    SchemaError,
    blocks_from_json,
    dumps,
    matrix_from_json,
    matrix_to_json,
    omegas_from_json,
    omegas_to_json,
    parse_complex,
)
from contractive.model import build_model_matrix

finite = st.floats(allow_nan=False, allow_infinity=False)


class TestJson:
    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.tuples(finite, finite), min_size=1, max_size=12))
    def test_matrix_round_trip_bit_exact(self, pairs):
        M = np.array([complex(a, b) for a, b in pairs]).reshape(1, -1)
        back = matrix_from_json(json.loads(dumps(matrix_to_json(M))))
        assert back.tobytes() == M.tobytes()

    def test_omegas_round_trip(self):
        omegas = [0.1 + 0.2j, -0.3, 1e-300j]
        assert omegas_from_json(json.loads(dumps(omegas_to_json(omegas)))) == omegas

    def test_real_entries_allowed(self):
        M = matrix_from_json({"rows": 1, "cols": 2, "entries": [0.5, [0.1, 0.2]]})
        np.testing.assert_array_equal(M, [[0.5, 0.1 + 0.2j]])

    @pytest.mark.parametrize(
        "obj, field",
        [
            ({"rows": 1, "cols": 2, "entries": [[0, 0]]}, "matrix.entries"),
            ({"rows": 0, "cols": 1, "entries": []}, "matrix.rows"),
            ({"cols": 1, "entries": [[0, 0]]}, "matrix.rows"),
            ({"rows": 1, "cols": 1, "entries": [[0, "x"]]}, "matrix.entries[0][1]"),
            ({"rows": 1, "cols": 1, "entries": [[0, 0, 0]]}, "matrix.entries[0]"),
        ],
    )
    def test_schema_errors_name_field(self, obj, field):
        with pytest.raises(SchemaError, match=field.replace("[", r"\[").replace("]", r"\]")):
            matrix_from_json(obj)

    def test_blocks_missing(self):
        with pytest.raises(SchemaError, match="C: missing"):
            blocks_from_json({"A": matrix_to_json([[0]]), "D": matrix_to_json([[0]])})

    @pytest.mark.parametrize("text, value", [("0.3+0.2i", 0.3 + 0.2j), ("-0.5i", -0.5j), ("0.25", 0.25), ("1-2j", 1 - 2j)])
    def test_parse_complex(self, text, value):
        assert parse_complex(text) == value

    @pytest.mark.parametrize("text", ["", "abc", "nan", "inf+1i"])
    def test_parse_complex_rejects(self, text):
        with pytest.raises(InputError):
            parse_complex(text)

    def test_dumps_rejects_nan(self):
        with pytest.raises(ValueError):
            dumps({"x": float("nan")})


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj) if not isinstance(obj, str) else obj)
    return str(path)


def invoke(capsys, argv):
    code = run(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


class TestCommands:
    def test_generate(self, tmp_path, capsys):
        path = write(tmp_path, "w.json", omegas_to_json([0.3, 0.4j]))
        code, rep, _ = invoke(capsys, ["generate", "--omegas", path])
        assert code == 0
        assert rep["schema"] == "v1" and rep["command"] == "generate" and rep["seed"] == 0
        assert set(rep["tolerances"]) == {"eig_tol", "rank_tol", "cert_tol", "solve_tol"}
        assert matrix_from_json(rep).tobytes() == build_model_matrix([0.3, 0.4j]).tobytes()

    def test_check_equality_case(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", matrix_to_json([[0.5, 0.75], [0, 0.5]]))
        code, rep, _ = invoke(capsys, ["check", "--matrix", path])
        assert code == 0
        assert rep["verdict"] == "CONTRACTION" and abs(rep["norm"] - 1) <= 1e-12

    def test_check_violation_exits_one(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", matrix_to_json([[0.5, 0.8], [0, 0.5]]))
        code, rep, _ = invoke(capsys, ["check", "--matrix", path])
        assert code == 1
        assert rep["verdict"] == "VIOLATION" and len(rep["witness"]) == 2

    def test_complete(self, tmp_path, capsys):
        blocks = {k: matrix_to_json(v) for k, v in {"A": [[0.5]], "C": [[0.0]], "D": [[0.5]]}.items()}
        code, rep, _ = invoke(capsys, ["complete", "--blocks", write(tmp_path, "b.json", blocks)])
        assert code == 0
        assert rep["disk"]["radius"] == pytest.approx(0.75)
        assert rep["assembled_norm"] <= 1 + 1e-9

    def test_verify_theorem(self, capsys):
        code, rep, _ = invoke(capsys, ["verify-theorem", "--n", "4", "--draws", "3", "--seed", "7"])
        assert code == 0 and rep["contracts_ok"]
        assert len(rep["reports"]) == 3
        assert rep["max_disk_radius"] <= 1e-8 and rep["max_deviation_from_model"] <= 1e-8
        assert all(r["all_violations"] for r in rep["reports"])
        assert rep["rng"]["bit_generator"] == "PCG64"

    def test_tmw_verify(self, tmp_path, capsys):
        path = write(tmp_path, "w.json", omegas_to_json([0.3, -0.5j, 0.2]))
        code, rep, _ = invoke(capsys, ["tmw-verify", "--omegas", path, "--nodes", "512"])
        assert code == 0 and rep["entry_defect"] < 1e-9 and not rep["low_accuracy"]

    def test_moebius(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", matrix_to_json(np.diag([0.2, 0.5, -0.3])))
        code, rep, _ = invoke(capsys, ["moebius", "--omega", "0.5", "--matrix", path])
        assert code == 0
        np.testing.assert_allclose(np.diag(matrix_from_json(rep)), [1 / 3, 0, 16 / 23], atol=1e-15)

    def test_truncate_tamper(self, capsys):
        code, rep, _ = invoke(
            capsys, ["truncate", "--omegas-rule", "constant:0.5", "--n-max", "6", "--tamper", "1,3,0.05,0"]
        )
        assert code == 0 and rep["violation_start"] == 3

    def test_malformed_json(self, tmp_path, capsys):
        path = write(tmp_path, "bad.json", '{"rows": 1,\n  "cols": }')
        code, rep, err = invoke(capsys, ["check", "--matrix", path])
        assert code == 2 and rep is None
        assert "line 2 column" in err

    def test_missing_file(self, tmp_path, capsys):
        code, _, err = invoke(capsys, ["check", "--matrix", str(tmp_path / "nope.json")])
        assert code == 2 and "nope.json" in err

    def test_domain_error_exit_two(self, tmp_path, capsys):
        path = write(tmp_path, "w.json", omegas_to_json([0.3, 1.0]))
        code, _, _ = invoke(capsys, ["generate", "--omegas", path])
        assert code == 2

    def test_bad_seed(self, capsys):
        with pytest.raises(SystemExit) as info:
            run(["verify-theorem", "--n", "3", "--seed", "-1"])
        assert info.value.code == 2

    def test_output_file_and_rerun_identical(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        argv = ["verify-theorem", "--n", "5", "--draws", "2", "--seed", "123"]
        assert run(argv + ["-o", str(a)]) == 0
        assert run(argv + ["-o", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_tolerance_override_recorded(self, tmp_path, capsys):
        path = write(tmp_path, "m.json", matrix_to_json([[0.5]]))
        _, rep, _ = invoke(capsys, ["check", "--matrix", path, "--cert-tol", "1e-6"])
        assert rep["tolerances"]["cert_tol"] == 1e-6


def test_module_entry_point(tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(omegas_to_json([0.0, 0.0])))
    proc = subprocess.run(
        [sys.executable, "-m", "contractive", "generate", "--omegas", str(path)],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert matrix_from_json(json.loads(proc.stdout)).tolist() == [[0, 1], [0, 0]]
