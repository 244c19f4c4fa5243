import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from frobx.cli import run_command
from frobx.report import Report, emit_report, render_csv, render_human, render_json
from frobx.session import SessionError, load_session, parse_rational, session_from_dict

FERMAT = {"ring": {"p": 2, "vars": ["x", "y", "z"], "relations": ["x^3+y^3+z^3"]}, "ideals": {"I": ["x", "y"]}}
CONE = {"ring": {"p": 101, "vars": ["x", "y", "z"], "relations": ["z^2-x*y"]}, "ideals": {"P": ["x", "z"]}}
PLANE = {"ring": {"p": 3, "vars": ["X", "Y"], "relations": []}, "ideals": {"I": ["X*Y", "X^3"], "M": ["X", "Y"]}}


@pytest.fixture
def session(tmp_path):
    def write(data, name="s.json"):
        path = tmp_path / name
        path.write_text(json.dumps(data) if not isinstance(data, str) else data)
        return str(path)

    return write


def run(argv, capsys):
    code = run_command(argv)
    out, err = capsys.readouterr()
    return code, out, err


def csv_parts(text):
    rows = list(csv.reader(io.StringIO(text)))
    table = [r for r in rows if r and "=" not in r[0]]
    summary = {r[0].split("=", 1)[0]: (r[0].split("=", 1)[1], r[1] if len(r) > 1 else "") for r in rows if r and "=" in r[0]}
    return table, summary


# subcommands ---------------------------------------------------------------------------

def test_frobenius_csv(session, capsys):
    code, out, _ = run(["frobenius", "--session", session(FERMAT), "--ideal", "I", "--emax", "3", "--format", "csv"], capsys)
    assert code == 0
    table, summary = csv_parts(out)
    assert table[0] == ["e", "q", "h0_length", "h0_end", "ann_exp", "v", "ratio_hk", "ratio_v"]
    assert [r[4] for r in table[1:]] == ["5", "9", "17"]
    assert all(r[5] == "4" or r[5].isdigit() for r in table[1:])
    assert summary["b_hat"] == ("3", "observed, not proven")
    assert summary["c_hat"] == ("3", "observed, not proven")
    assert out.endswith("\n")


def test_frobenius_absent_v_is_empty_field(session, capsys):
    code, out, _ = run(["frobenius", "--session", session(PLANE), "--ideal", "I", "--emax", "2", "--format", "csv"], capsys)
    assert code == 0
    table, summary = csv_parts(out)
    assert [r[5] for r in table[1:]] == ["", ""]
    assert [r[2] for r in table[1:]] == ["18", "162"]
    assert summary["e_gHK"] == ("2", "exact")


def test_frobenius_json_rationals(session, capsys):
    code, out, _ = run(["frobenius", "--session", session(PLANE), "--ideal", "M", "--emax", "1", "--format", "json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["command"] == "frobenius"
    assert obj["rows"][0]["ratio_v"] == {"num": 4, "den": 3}
    assert obj["summary"]["b_hat"]["qualifier"] == "observed, not proven"


def test_frobenius_trick_column(session, capsys):
    code, out, _ = run(
        ["frobenius", "--session", session(PLANE), "--ideal", "I", "--emax", "2", "--trick-element", "Y", "--format", "csv"],
        capsys,
    )
    assert code == 0
    table, _ = csv_parts(out)
    assert table[0][-1] == "trick_length"
    assert all(r[-1] == r[2] for r in table[1:])


def test_powers_symbolic(session, capsys):
    code, out, _ = run(
        ["powers", "--session", session(CONE), "--ideal", "P", "--nmax", "8", "--symbolic", "--format", "csv"], capsys
    )
    assert code == 0
    table, summary = csv_parts(out)
    col = table[0].index("alpha_sat")
    assert [int(r[col]) for r in table[1:]] == [1, 1, 2, 2, 3, 3, 4, 4]
    assert summary["waldschmidt_upper"][0] == "1/2"
    assert summary["d_hat"] == ("1", "observed, not proven")
    assert summary["fekete_ok"][0] == "true"


def test_powers_chudnovsky(session, capsys):
    code, out, _ = run(
        ["powers", "--session", session(CONE), "--ideal", "P", "--nmax", "2", "--chudnovsky-n", "1", "--format", "json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["summary"]["chudnovsky"]["value"] == [True, False]


def test_bound(capsys):
    code, out, _ = run(["bound", "--curve-degree", "3", "--gen-degrees", "1,1", "--e", "0", "--format", "csv"], capsys)
    assert code == 0
    _, summary = csv_parts(out)
    assert summary["alpha"][0] == "2" and summary["beta"][0] == "1"
    code, out, _ = run(["bound", "--curve-degree", "1", "--gen-degrees", "2,3", "--e", "-1", "--format", "json"], capsys)
    assert json.loads(out)["summary"]["beta"]["value"] == {"num": -1, "den": 1}


def test_hilbert_and_h0(session, capsys):
    code, out, _ = run(["hilbert", "--session", session(CONE), "--ideal", "P", "--max-degree", "4", "--format", "csv"], capsys)
    assert code == 0
    table, summary = csv_parts(out)
    assert [r[1] for r in table[1:]] == ["1", "1", "1", "1", "1"]
    assert summary["dimension"][0] == "1"
    code, out, _ = run(["h0", "--session", session(PLANE), "--ideal", "I", "--format", "json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["summary"]["length"]["value"] == 2
    assert obj["summary"]["ann_exp"]["value"] == 2


def test_closure(session, capsys):
    code, out, _ = run(
        ["closure", "--session", session(FERMAT), "--ideal", "I", "--element", "z^2", "--emax", "2", "--format", "json"],
        capsys,
    )
    assert code == 0
    obj = json.loads(out)
    assert [r["x^q in I^[q]"] for r in obj["rows"]] == [False, True, True]
    assert obj["summary"]["frobenius_member"]["value"] == "e=1"


def test_human_format(session, capsys, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    code, out, _ = run(["bound", "--curve-degree", "3", "--gen-degrees", "1,1", "--e", "1/2"], capsys)
    assert code == 0
    assert "\033[" not in out
    assert "alpha" in out and "5/2" in out


# report contracts ------------------------------------------------------------------------

class FakeTTY(io.StringIO):
    def isatty(self):
        return True


def _report():
    rep = Report("demo", {"x": 1}, ["n", "r"])
    rep.rows.append({"n": 1, "r": Fraction(49, 16)})
    rep.rows.append({"n": 2, "r": None})
    rep.add("best", Fraction(1, 2), "observed, not proven")
    return rep


def test_rational_serialization():
    rep = _report()
    assert "1,49/16\n2,\n" in render_csv(rep)
    assert json.loads(render_json(rep))["rows"][0]["r"] == {"num": 49, "den": 16}
    assert "0.5" not in render_human(rep) and "3.0625" not in render_csv(rep)


def test_header_only_csv():
    assert render_csv(Report("demo", {}, ["a", "b"])) == "a,b\n"


def test_no_color(monkeypatch):
    stream = FakeTTY()
    monkeypatch.delenv("NO_COLOR", raising=False)
    emit_report(_report(), "human", stream)
    assert "\033[1m" in stream.getvalue()
    stream = FakeTTY()
    monkeypatch.setenv("NO_COLOR", "")
    emit_report(_report(), "human", stream)
    assert "\033[" not in stream.getvalue()


@pytest.mark.parametrize("fmt", ["human", "json", "csv"])
def test_determinism_and_threads(session, tmp_path, capsys, fmt):
    path = session(FERMAT)
    outs = []
    for i, threads in enumerate(("1", "1", "2")):
        dest = tmp_path / f"out{i}.{fmt}"
        code = run_command(
            ["frobenius", "--session", path, "--ideal", "I", "--emax", "3", "--threads", threads, "--format", fmt, "--out", str(dest)]
        )
        assert code == 0
        outs.append(dest.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    assert capsys.readouterr().out == ""


# sessions ---------------------------------------------------------------------------------------

def test_session_round_trip(session):
    s = load_session(session(FERMAT))
    again = session_from_dict(json.loads(json.dumps(s.to_dict())))
    assert again.to_dict() == s.to_dict()
    assert again.ideal("I") == s.ideal("I")
    assert again.presentation == s.presentation


def test_empty_relations_is_polynomial_ring(session):
    s = load_session(session(PLANE))
    assert s.presentation.relations == ()


def test_parse_rational():
    assert parse_rational("-1") == -1
    assert parse_rational("1/3") == Fraction(1, 3)
    with pytest.raises(ValueError):
        parse_rational("0.5")


def test_unknown_ideal(session):
    with pytest.raises(SessionError):
        load_session(session(FERMAT)).ideal("K")


# exit codes ---------------------------------------------------------------------------------------

def _with(base, **ring):
    data = json.loads(json.dumps(base))
    data["ring"].update(ring)
    return data


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobenius"],
        ["frobenius", "--session", "S", "--ideal", "I"],
        ["frobenius", "--session", "S", "--ideal", "I", "--emax", "0"],
        ["frobenius", "--session", "S", "--ideal", "I", "--emax", "2", "--format", "xml"],
        ["bound", "--curve-degree", "3", "--gen-degrees", "1", "--e", "0"],
        ["bound", "--curve-degree", "3", "--gen-degrees", "1,1", "--e", "0.5"],
        ["nonsense"],
    ],
)
def test_usage_errors_exit_1(argv, session, capsys):
    path = session(FERMAT)
    argv = [path if a == "S" else a for a in argv]
    code, _, err = run(argv, capsys)
    assert code == 1
    assert err.startswith("frobx:") or "usage" in err


@pytest.mark.parametrize(
    "data",
    [
        _with(FERMAT, p=4),
        {**FERMAT, "extra": 1},
        _with(FERMAT, vars=["x", "x"]),
        _with(FERMAT, vars=["1x"]),
        {"ring": FERMAT["ring"]},
        "{not json",
    ],
    ids=["p=4", "extra key", "duplicate vars", "bad name", "no ideals", "invalid json"],
)
def test_schema_errors_exit_1(data, session, capsys):
    code, _, err = run(["h0", "--session", session(data), "--ideal", "I"], capsys)
    assert code == 1
    assert err.startswith("frobx:")


def test_unknown_ideal_exit_1(session, capsys):
    assert run(["h0", "--session", session(FERMAT), "--ideal", "K"], capsys)[0] == 1


def test_parse_errors_exit_3(session, capsys):
    bad = json.loads(json.dumps(FERMAT))
    bad["ideals"]["I"] = ["x", "y+*z"]
    code, _, err = run(["h0", "--session", session(bad), "--ideal", "I"], capsys)
    assert code == 3
    assert "ideal I" in err and "y+*z" in err
    code, _, _ = run(
        ["closure", "--session", session(FERMAT), "--ideal", "I", "--element", "z^^2", "--emax", "1"], capsys
    )
    assert code == 3


def test_math_errors_exit_2(session, capsys):
    inhom = {"ring": {"p": 3, "vars": ["x", "y"], "relations": []}, "ideals": {"I": ["x^2-y"]}}
    assert run(["h0", "--session", session(inhom), "--ideal", "I"], capsys)[0] == 2
    assert run(["frobenius", "--session", session(PLANE), "--ideal", "I", "--emax", "1", "--trick-element", "X"], capsys)[0] == 2
    assert run(["closure", "--session", session(FERMAT), "--ideal", "I", "--element", "z+1", "--emax", "1"], capsys)[0] == 2
    assert run(["frobenius", "--session", session(FERMAT), "--ideal", "I", "--emax", "40"], capsys)[0] == 2


def test_io_errors_exit_4(session, tmp_path, capsys):
    assert run(["h0", "--session", str(tmp_path / "missing.json"), "--ideal", "I"], capsys)[0] == 4
    out = str(tmp_path / "no" / "such" / "dir" / "r.csv")
    assert run(["h0", "--session", session(FERMAT), "--ideal", "I", "--out", out], capsys)[0] == 4


def test_selftest_quick(capsys):
    code, out, _ = run(["selftest", "--quick"], capsys)
    lines = [ln for ln in out.splitlines() if ln.startswith("criterion")]
    assert len(lines) == 12
    assert all((" PASS " in ln) != (" FAIL " in ln) for ln in lines)
    assert code == (0 if all(" PASS " in ln for ln in lines) else 2)


def test_module_entry_point(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(FERMAT))
    proc = subprocess.run(
        [sys.executable, "-m", "frobx", "bound", "--curve-degree", "3", "--gen-degrees", "1,1", "--e", "0", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "alpha=2" in proc.stdout
