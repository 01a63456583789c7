"""Command-line surface: exit codes, formats, determinism."""

import csv
import io
import json

from kbranch.cli import main
from kbranch.groups import _BUILTIN_DIR


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def parse_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header, body = rows[0], rows[1:]
    i = header.index("ktype_highest_weight")
    j = header.index("multiplicity")
    return [(r[i], int(r[j])) for r in body]


def test_table_discrete_csv(capsys):
    code, out, _ = run(capsys, "table", "--group", "sl2r-compact",
                       "--params", '{"series":"discrete","n":3,"sign":"+"}',
                       "--window", "9", "--format", "csv")
    assert code == 0
    assert parse_csv(out) == [("4", 1), ("6", 1), ("8", 1)]


def test_table_split_minus(capsys):
    code, out, _ = run(capsys, "table", "--group", "sl2r-split",
                       "--params", '{"chi":"minus"}', "--window", "3",
                       "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert [r["ktype"] for r in doc["table"]] == [[-3], [-1], [1], [3]]
    assert doc["sign"] == 1


def test_zero_verdict_exits_2(capsys):
    code, _, err = run(capsys, "table", "--group", "su21", "--params",
                       '{"lambda":[2,2,-1],'
                       '"rmplus":[[1,-1,0],[1,0,-1],[0,1,-1]]}',
                       "--window", "3")
    assert code == 2
    assert "zero" in err


def test_bad_params_document_exits_2(capsys):
    code, _, err = run(capsys, "table", "--group", "sl2r-compact",
                       "--params", '{"series":"unknown"}')
    assert code == 2


def test_missing_group_exits_3(capsys):
    code, _, err = run(capsys, "table", "--group", "/nonexistent/g.json",
                       "--params", "{}")
    assert code == 3


def test_schema_error_exits_4(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    doc = json.loads((_BUILTIN_DIR / "sl2r-compact.json").read_text())
    doc["dims"]["s_M"] = 3
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 4
    assert "sign factor parity" in err


def test_validate_shipped_files(capsys):
    for name in ("sl2r-compact", "sl2r-split", "su21"):
        code, out, _ = run(capsys, "validate",
                           str(_BUILTIN_DIR / f"{name}.json"))
        assert code == 0
        assert f"valid: {name}" in out
        assert "ok: schema" in out


def test_validate_nonclosed_roots_names_weyl_closure(tmp_path, capsys):
    doc = json.loads((_BUILTIN_DIR / "sl2r-compact.json").read_text())
    doc["m"] = {"rank": 2,
                "roots": [[1, -1], [-1, 1], [1, 0], [-1, 0]],
                "positives": [[1, -1], [1, 0]],
                "compact_flags": [False, False, False, False]}
    doc["tM_in_t"] = [[1], [0]]
    doc["dims"] = {"s_M": 4, "a": 0}
    doc["zmprime"] = {"order": 1, "generators": []}
    bad = tmp_path / "open.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "validate", str(bad))
    assert code == 4
    assert "Weyl closure" in err


def test_verify_ring_passes(capsys):
    code, out, _ = run(capsys, "verify", "ring")
    assert code == 0
    doc = json.loads(out)
    assert doc["pass"] and doc["suite"] == "ring"
    assert all(c["passed"] for c in doc["checks"])


def test_csv_json_contain_identical_tables(capsys):
    args = ("table", "--group", "sl2r-compact", "--params",
            '{"series":"limit","sign":"-"}', "--window", "8")
    _, out_csv, _ = run(capsys, *args, "--format", "csv")
    _, out_json, _ = run(capsys, *args, "--format", "json")
    from_csv = [(tuple(int(c) for c in k.split()), m)
                for k, m in parse_csv(out_csv)]
    doc = json.loads(out_json)
    from_json = [(tuple(r["ktype"]), r["multiplicity"])
                 for r in doc["table"]]
    assert from_csv == from_json


def test_determinism_byte_identical(capsys):
    args = ("table", "--group", "su21", "--params",
            '{"lambda":[3,1,-1]}', "--window", "5", "--format", "json")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b


def test_output_file_and_data_dir_override(tmp_path, capsys, monkeypatch):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "table", "--group", "sl2r-compact", "--params",
                     '{"series":"discrete","n":1,"sign":"+"}',
                     "--window", "4", "--out", str(out))
    assert code == 0
    assert parse_csv(out.read_text()) == [("2", 1), ("4", 1)]

    # env var redirects builtin lookup
    alt = tmp_path / "data"
    alt.mkdir()
    (alt / "mygroup.json").write_text(
        (_BUILTIN_DIR / "sl2r-compact.json").read_text())
    monkeypatch.setenv("KTYPE_DATA_DIR", str(alt))
    code, out_text, _ = run(capsys, "table", "--group", "mygroup", "--params",
                            '{"series":"discrete","n":1,"sign":"+"}',
                            "--window", "4")
    assert code == 0
