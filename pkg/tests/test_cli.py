import json
from itertools import combinations_with_replacement

import pytest
from hypothesis import given
from hypothesis import strategies as st

from segcalc.cli import main, parse_query
from segcalc.config import single_line
from segcalc.errors import QuerySyntaxError, UnknownLine, UnknownSuite
from segcalc.harness import enumerate_multisegments, run_suite, window_segments
from segcalc.multiseg import Multisegment
from segcalc.parse import parse_multisegment, parse_points, parse_window

from conftest import seg

CTX, _ = single_line(0)


def test_parse_query():
    q = parse_query('decide "[r[0],r[2]] + [r[-1],r[0]]"', CTX)
    assert q.command == "decide" and len(q.payload) == 2
    q = parse_query('jacmin "[r[0],r[0]]"', CTX)
    assert q.command == "jacmin" and q.payload == Multisegment([seg(0, 0)])
    with pytest.raises(QuerySyntaxError):
        parse_query('decide "[r[2],r[0]]"', CTX)
    with pytest.raises(UnknownLine):
        parse_query('decide "[x[0],x[0]]"', CTX)
    with pytest.raises(QuerySyntaxError):
        parse_query("frobnicate", CTX)
    with pytest.raises(QuerySyntaxError):
        parse_query("enumerate r --window 0..1", CTX)
    q = parse_query('derive "[r[0],r[1]]" --rho "r[0], r[1]" --side right', CTX)
    assert q.side == "right" and len(q.points) == 2


def test_syntax_error_position():
    with pytest.raises(QuerySyntaxError) as err:
        parse_multisegment("[r[0],r[1]]\n + [r[0] r[1]]")
    assert (err.value.line, err.value.col) == (2, 10)
    with pytest.raises(QuerySyntaxError):
        parse_multisegment("")
    with pytest.raises(QuerySyntaxError):
        parse_window("3..1")
    assert parse_window("-2..2") == (-2, 2)
    assert parse_points("") == frozenset()
    assert parse_multisegment("∅") == Multisegment() == parse_multisegment(" 0 ")
    assert parse_multisegment("[r[+1],r[2]]") == Multisegment([seg(1, 2)])


segments = st.builds(lambda b, n: seg(b, b + n), st.integers(-9, 9), st.integers(0, 4))


@given(st.lists(segments, max_size=4).map(Multisegment))
def test_print_parse_round_trip(m):
    assert parse_multisegment(str(m), CTX) == m
    assert str(parse_multisegment(str(m))) == str(m)


def _oracle(window, max_degree):
    pool = window_segments("r", window)
    out = set()
    for k in range(max_degree + 1):
        for combo in combinations_with_replacement(pool, k):
            if sum(len(s) for s in combo) <= max_degree:
                out.add(Multisegment(combo))
    return out


def test_enumeration_examples():
    assert list(enumerate_multisegments(CTX, "r", (0, 0), 2)) == [
        Multisegment(),
        Multisegment([seg(0, 0)]),
        Multisegment([seg(0, 0)] * 2),
    ]
    assert len(list(enumerate_multisegments(CTX, "r", (0, 1), 1))) == 3
    assert list(enumerate_multisegments(CTX, "r", (-3, 3), 0)) == [Multisegment()]


@pytest.mark.parametrize("window,deg", [((0, 2), 4), ((-2, 2), 5), ((-1, 1), 6)])
def test_enumeration_against_multiset_oracle(window, deg):
    got = list(enumerate_multisegments(CTX, "r", window, deg))
    assert len(got) == len(set(got))
    assert set(got) == _oracle(window, deg)
    assert got == sorted(got)


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("nosuch")


def test_main_exit_codes_and_json(capsys, tmp_path):
    assert main(["comult", "[r[0],r[0]]", "--format", "json"]) == 0
    out = capsys.readouterr().out
    data = json.loads(out)
    assert data == {
        "terms": [
            {"coeff": 1, "left": "1", "right": "Z([r[0],r[0]])"},
            {"coeff": 1, "left": "Z([r[0],r[0]])", "right": "1"},
        ]
    }
    assert out == json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2) + "\n"
    assert main(["decide", "[r[2],r[0]]"]) == 2
    assert main(["verify", "--suite", "nosuch"]) == 2
    assert main(["decide", "[r[0],r[0]]", "--config", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["decide", "[r[0],r[0]]", "--config", str(bad)]) == 2
    assert main(["verify", "--suite", "counterexamples"]) == 0
    capsys.readouterr()


def test_main_commands(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "lines": [{"name": "r", "deg": 1, "tilde": {"kind": "self_dual", "t0": 0}, "expo0": "0"}],
        "sigma": {"cuspred": [{"line": "r", "index": 4}]},
    }))
    assert main(["decide", "[r[0],r[2]] + [r[-1],r[0]]", "--config", str(cfg), "--format", "json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["status"] == "irreducible"
    assert any(c["rule"] == "R5-ladder" for c in d["certificate"])
    assert main(["jacmin", "[r[0],r[2]] + [r[-1],r[0]]", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {"gl": 5, "classical": 160}
    assert main(["comod", "[r[0],r[0]]"]) == 0
    assert capsys.readouterr().out == "+1  1 ⊗ Z([r[0],r[0]])\n+2  Z([r[0],r[0]]) ⊗ 1\n"
    assert main(["mustar", "[r[0],r[0]]", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["classical"] == "σ"
    assert main(["comodmax", "[r[0],r[1]]", "--format", "json"]) == 0
    assert len(json.loads(capsys.readouterr().out)["terms"]) == 3
    assert main(["lnrset", "[r[0],r[2]] + [r[-1],r[0]]", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["lnrset"] == ["r[0]"]
    assert main(["derive", "[r[0],r[2]]", "--rho", "r[0]"]) == 0
    assert capsys.readouterr().out == "[r[1],r[2]]\n"
    assert main(["enumerate", "r", "--window", "0..1", "--max-degree", "1", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["count"] == 3
    assert main(["critical", "--window", "-2..2", "--max-degree", "3", "--config", str(cfg)]) == 0
    capsys.readouterr()
    opaque = "[r[0],r[2]] + [r[1],r[1]] + [r[-1],r[0]]"
    assert main(["jacmin", opaque]) == 1
    assert "UnsupportedLabel" in capsys.readouterr().err
