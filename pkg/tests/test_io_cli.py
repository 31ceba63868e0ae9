import json
import subprocess
import sys

import pytest

from affext.algebras import find_isomorphism
from affext.congruences import Congruence
from affext.serialization import (InputError, Workspace, algebra_from_json,
                                  algebra_to_json, builtin_equations,
                                  cocycle_from_json, cocycle_to_json,
                                  congruence_from_json, congruence_to_json,
                                  datum_from_json, datum_to_json, dump_json,
                                  equations_from_json, equations_to_json)


def run_cli(args, cwd):
    return subprocess.run([sys.executable, "-m", "affext.cli"] + args,
                          capture_output=True, text=True, cwd=cwd)


@pytest.fixture()
def files(tmp_path, cat):
    dump_json(algebra_to_json(cat["Z4"]), tmp_path / "z4.json")
    dump_json(congruence_to_json(Congruence.from_blocks(4, [[0, 2], [1, 3]]),
                                 "Z4"), tmp_path / "alpha.json")
    dump_json(algebra_to_json(cat["Z2xZ2"]), tmp_path / "v4.json")
    dump_json(congruence_to_json(Congruence.from_blocks(4, [[0, 1], [2, 3]]),
                                 "Z2xZ2"), tmp_path / "beta.json")
    return tmp_path


def test_algebra_round_trip(cat):
    for name in ("Z4", "D4", "S3"):
        data = algebra_to_json(cat[name])
        back = algebra_from_json(data)
        assert back.size == cat[name].size
        assert back.tables == cat[name].tables


def test_algebra_rejects_garbage():
    with pytest.raises(InputError):
        algebra_from_json({"size": 2})
    with pytest.raises(InputError):
        algebra_from_json({"name": "x", "size": 2,
                           "signature": [{"symbol": "f", "arity": 1}],
                           "operations": {"f": [0, 5]}})


def test_congruence_round_trip(cat):
    c = Congruence.from_blocks(4, [[0, 2], [1, 3]])
    data = congruence_to_json(c, "Z4")
    assert congruence_from_json(data, cat["Z4"]) == c
    with pytest.raises(InputError):
        congruence_from_json({"algebra": "other", "blocks": [[0, 1, 2, 3]]},
                             cat["Z4"])


def test_equations_round_trip():
    eqs = builtin_equations("groups")
    assert equations_from_json(equations_to_json(eqs)) == eqs
    with pytest.raises(InputError):
        from affext.serialization import builtin_equations as be
        be("nope")


def test_datum_and_cocycle_round_trip(z4_datum, cat):
    from affext.datum import validate_datum
    from affext.cocycles import reconstruct
    d, T = z4_datum
    data = datum_to_json(d)
    d2 = datum_from_json(data)
    assert all(r["holds"] for r in validate_datum(d2))
    assert d2.dc.size == d.dc.size
    cdata = cocycle_to_json(d, T)
    T2 = cocycle_from_json(d2, cdata)
    rec = reconstruct(d2, T2)
    assert find_isomorphism(rec.alg, cat["Z4"]) is not None


def test_cli_con_gen(files):
    r = run_cli(["con", "gen", "--alg", "z4.json", "--pairs", "0,2"], files)
    assert r.returncode == 0
    assert "[[0, 2], [1, 3]]" in r.stdout


def test_cli_h2_text_and_json(files):
    r = run_cli(["h2", "--alg", "z4.json", "--con", "alpha.json",
                 "--sigma", "builtin:groups"], files)
    assert r.returncode == 0
    assert "H2 = Z/2, classes: [Z2xZ2 (split), Z4]" in r.stdout
    r = run_cli(["h2", "--alg", "z4.json", "--con", "alpha.json",
                 "--sigma", "builtin:groups", "--format", "json"], files)
    data = json.loads(r.stdout)
    assert data["Z2_order"] == 4 and data["B2_order"] == 2
    assert [c["extension_iso_type"] for c in data["classes"]] == ["Z2xZ2", "Z4"]


def test_cli_semidirect(files):
    r = run_cli(["semidirect", "--alg", "z4.json", "--con", "alpha.json"], files)
    assert r.returncode == 0 and "no retraction" in r.stdout
    r = run_cli(["semidirect", "--alg", "v4.json", "--con", "beta.json"], files)
    assert r.returncode == 0 and "retraction" in r.stdout


def test_cli_datum_validate(files):
    r = run_cli(["datum", "validate", "--alg", "z4.json", "--con", "alpha.json"],
                files)
    assert r.returncode == 0
    assert "FAIL" not in r.stdout


def test_cli_usage_errors(files):
    r = run_cli(["h2", "--alg", "missing.json", "--con", "alpha.json",
                 "--sigma", "builtin:groups"], files)
    assert r.returncode == 2
    r = run_cli(["unknown-command"], files)
    assert r.returncode == 2
    r = run_cli(["h2", "--alg", "z4.json", "--sigma", "builtin:groups"], files)
    assert r.returncode == 2  # missing --con
    bad = files / "bad.json"
    bad.write_text("{not json")
    r = run_cli(["con", "gen", "--alg", "bad.json", "--pairs", "0,1"], files)
    assert r.returncode == 2
    assert "line" in r.stderr


def test_cli_cap_exceeded(files):
    r = run_cli(["h2", "--alg", "z4.json", "--con", "alpha.json",
                 "--sigma", "builtin:groups", "--cap", "2"], files)
    assert r.returncode == 3


def test_cli_json_determinism(files):
    args = ["h2", "--alg", "z4.json", "--con", "alpha.json",
            "--sigma", "builtin:groups", "--format", "json"]
    r1 = run_cli(args, files)
    r2 = run_cli(args, files)
    assert r1.stdout == r2.stdout


def test_cli_oracle(files):
    r = run_cli(["oracle", "h2", "--kernel", "Z2", "--quot", "Z2"], files)
    assert r.returncode == 0
    assert "order 2" in r.stdout


def test_cli_equiv_and_rebuild(files):
    r = run_cli(["datum", "extract", "--alg", "z4.json", "--con", "alpha.json",
                 "--out", "bundle.json"], files)
    assert r.returncode == 0
    bundle = json.loads((files / "bundle.json").read_text())
    dump_json(bundle["cocycle"], files / "t.json")
    d = datum_from_json(bundle["datum"])
    dump_json(cocycle_to_json(d, d.trivial_cocycle()), files / "t0.json")
    r = run_cli(["equiv", "--alg", "z4.json", "--con", "alpha.json",
                 "--cocycle", "t.json", "--cocycle2", "t0.json"], files)
    assert r.returncode == 0 and "False" in r.stdout
    r = run_cli(["rebuild", "--alg", "z4.json", "--con", "alpha.json",
                 "--cocycle", "t0.json", "--format", "json"], files)
    data = json.loads(r.stdout)
    assert data["algebra"]["size"] == 4


def test_cli_stab_and_h1(files):
    r = run_cli(["stab", "--alg", "z4.json", "--con", "alpha.json"], files)
    assert r.returncode == 0 and "2" in r.stdout
    r = run_cli(["h1", "--alg", "z4.json", "--con", "alpha.json"], files)
    assert r.returncode == 0 and "H1 = Z/2" in r.stdout


def test_workspace_duplicate_names(files):
    ws = Workspace()
    ws.load_algebra(str(files / "z4.json"))
    with pytest.raises(InputError):
        ws.load_algebra(str(files / "z4.json"))


def test_cli_non_group_signature(tmp_path):
    """--m is required for non-group signatures; with it the ternary
    pipeline runs end to end."""
    from affext.algebras import FiniteAlgebra, Signature
    sig = Signature([("m", 3)])
    m_flat = tuple((a - b + c) % 4
                   for a in range(4) for b in range(4) for c in range(4))
    alg = FiniteAlgebra(4, sig, {"m": m_flat}, name="M4")
    dump_json(algebra_to_json(alg), tmp_path / "m4.json")
    dump_json(congruence_to_json(Congruence.from_blocks(4, [[0, 2], [1, 3]]),
                                 "M4"), tmp_path / "alpha.json")
    r = run_cli(["datum", "validate", "--alg", "m4.json", "--con", "alpha.json"],
                tmp_path)
    assert r.returncode == 2  # no --m and not group-like
    r = run_cli(["datum", "validate", "--alg", "m4.json", "--con", "alpha.json",
                 "--m", "(m x0 x1 x2)"], tmp_path)
    assert r.returncode == 0, r.stderr


def test_datum_file_with_m_as_term(z4_datum, cat):
    from affext.datum import validate_datum
    d, _ = z4_datum
    data = datum_to_json(d)
    data["m"] = "(mul x0 (mul (inv x1) x2))"
    data["source_algebra"] = algebra_to_json(cat["Z4"])
    d2 = datum_from_json(data)
    assert all(r["holds"] for r in validate_datum(d2))
    data.pop("source_algebra")
    with pytest.raises(InputError):
        datum_from_json(data)
