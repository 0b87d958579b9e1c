import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rees_quot.cli.grammar import (
    AttachRoots,
    DefineRab,
    DefineRing,
    OracleCheck,
    Query,
    Search,
    SetConfig,
    parse_script,
    render_command,
)
from rees_quot.cli.main import main
from rees_quot.cli.session import Session, execute
from rees_quot.expr import ParseError

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def run_lines(text):
    lines = []
    code = execute(Session(), parse_script(text), lines.append)
    return code, [json.loads(s) for s in lines]


class TestParse:
    def test_ring(self):
        (c,) = parse_script("ring R = quotient(GF(2), vars=[x,y], mod=[x*y]);")
        assert isinstance(c, DefineRing) and c.field == ("GF", 2) and c.variables == ("x", "y")
        assert len(c.relations) == 1

    def test_query(self):
        (c,) = parse_script("query fiber A over prime=[x];")
        assert isinstance(c, Query) and c.kind == "fiber" and c.target == "A" and len(c.prime) == 1

    def test_missing_comma(self):
        with pytest.raises(ParseError) as err:
            parse_script("ring R = quotient(GF(2) vars=[x]);")
        assert (err.value.line, err.value.col) == (1, 25)
        assert err.value.found == "vars"

    def test_error_position_on_later_line(self):
        with pytest.raises(ParseError) as err:
            parse_script("ring R = zmod(6);\nquery frobnicate A;")
        assert err.value.line == 2 and err.value.col == 7

    def test_comments_and_blank_statements(self):
        cmds = parse_script("# header\n;; set cap = 50; # trailing\n")
        assert cmds == [SetConfig("cap", 50)]

    def test_everything(self):
        text = (SCRIPTS / "finite.rq").read_text() + (SCRIPTS / "example2.rq").read_text()
        kinds = {type(c) for c in parse_script(text)}
        assert {DefineRing, DefineRab, Query, OracleCheck, Search} <= kinds

    def test_fiber_needs_prime(self):
        with pytest.raises(ParseError):
            parse_script("query fiber A;")

    def test_rab_needs_both_coefficients(self):
        with pytest.raises(ParseError):
            parse_script("rab A = rab(R, [2], a=1);")


_names = st.sampled_from(["R", "S", "A", "B1", "my_ring"])
_vars = st.sampled_from(["x", "y", "u"])
_exprs = st.recursive(
    st.one_of(st.integers(0, 20).map(str), _vars),
    lambda inner: st.one_of(
        st.tuples(inner, st.sampled_from(["+", "-", "*"]), inner).map(lambda t: f"({t[0]}) {t[1]} ({t[2]})"),
        st.tuples(inner, st.integers(1, 4)).map(lambda t: f"({t[0]})^{t[1]}"),
        inner.map(lambda e: f"-({e})"),
    ),
    max_leaves=6,
)
_lists = st.lists(_exprs, min_size=1, max_size=3).map(lambda xs: "[" + ", ".join(xs) + "]")
_statements = st.one_of(
    st.tuples(_names, st.integers(2, 99)).map(lambda t: f"ring {t[0]} = zmod({t[1]});"),
    st.tuples(_names, st.sampled_from(["GF(3)", "QQ"]), _lists, st.booleans()).map(
        lambda t: f"ring {t[0]} = quotient({t[1]}, vars=[x, y, u], mod={t[2]}, reduced={'true' if t[3] else 'false'});"
    ),
    st.tuples(_names, _lists).map(lambda t: f"ideal {t[0]} = span(R, {t[1]});"),
    st.tuples(_names, _lists, _exprs, _exprs).map(lambda t: f"rab {t[0]} = rab(R, {t[1]}, a={t[2]}, b={t[3]});"),
    st.tuples(_names, st.sampled_from(["idealization", "duplication"])).map(lambda t: f"rab {t[0]} = {t[1]}(R, I);"),
    st.tuples(_names, _exprs, _lists).map(lambda t: f"roots {t[0]} with alpha={t[1]}, gamma=1 over prime={t[2]};"),
    st.tuples(st.sampled_from(["is_reduced", "is_domain", "recognize", "minimal_primes"]), _names).map(
        lambda t: f"query {t[0]} {t[1]};"
    ),
    st.tuples(st.sampled_from(["fiber", "localization"]), _names, _lists).map(
        lambda t: f"query {t[0]} {t[1]} over prime={t[2]};"
    ),
    _names.map(lambda n: f"check oracle {n};"),
    st.integers(2, 40).map(lambda n: f"search locq n_max={n}, seed=1;"),
    st.integers(-5, 10**6).map(lambda n: f"set cap = {n};"),
)


@given(st.lists(_statements, min_size=1, max_size=5))
def test_render_round_trip(stmts):
    cmds = parse_script("\n".join(stmts))
    for c in cmds:
        assert parse_script(render_command(c)) == [c]


class TestExecute:
    def test_example_one(self):
        code, out = run_lines((SCRIPTS / "example1.rq").read_text())
        assert code == 0
        q = {o["cmd"]: o for o in out}
        assert q["query is_reduced A;"]["result"]["reduced"]["value"] == "no"
        assert q["query recognize A;"]["result"]["idealization"]["value"] == "yes"
        assert q["query is_reduced B;"]["result"]["reduced"]["value"] == "yes"
        assert q["query recognize B;"]["result"]["duplication"]["value"] == "yes"
        assert q["query minimal_primes B;"]["result"]["count"] == 3

    def test_schema(self):
        _, out = run_lines((SCRIPTS / "finite.rq").read_text())
        assert out and all(set(o) == {"cmd", "status", "result", "witness"} for o in out)
        assert all(o["status"] in ("ok", "unknown", "error") for o in out)

    def test_check_oracle(self):
        code, out = run_lines("ring Z = zmod(6); rab A = rab(Z, [3], a=0, b=-1); check oracle A;")
        assert code == 0
        rep = out[-1]["result"]
        assert rep["size"] == 12 and len(rep["fibers"]) == 2

    def test_empty(self):
        assert run_lines("") == (0, [])

    def test_deterministic(self):
        text = (SCRIPTS / "finite.rq").read_text()
        assert run_lines(text) == run_lines(text)

    def test_unknown_is_not_error(self):
        code, out = run_lines(
            "ring R = quotient(QQ, vars=[x, y], mod=[x^2 + y^2 - 1]); rab A = rab(R, [x], a=0, b=0);"
            " query minimal_primes A;"
        )
        assert code == 0 and out[-1]["status"] == "unknown"

    def test_unresolved_name(self):
        code, out = run_lines("query is_reduced Nope;")
        assert code == 1 and out[0]["result"]["error"] == "NameError"

    def test_backend_error_tag(self):
        code, out = run_lines("ring Z = zmod(6); rab A = rab(Z, [1], a=0, b=0);")
        assert code == 1 and out[-1]["result"]["error"] == "BadIdeal"

    def test_rebinding_refused(self):
        code, out = run_lines("ring Z = zmod(6); ring Z = zmod(7);")
        assert code == 1 and out[-1]["status"] == "error"

    def test_cap_setting(self):
        code, out = run_lines("set cap = 10; ring Z = zmod(16); rab A = rab(Z, [2], a=4, b=0); check oracle A;")
        assert code == 1 and out[-1]["result"]["error"] == "TooLarge"

    def test_relative_roots_used(self):
        code, out = run_lines(
            "ring Z = zmod(6); rab A = rab(Z, [3], a=0, b=-1);"
            " roots A with alpha=1, gamma=1 over prime=[2]; query fiber A over prime=[2];"
        )
        assert code == 0 and out[-1]["result"]["merged"] is True


class TestMain:
    def test_run(self, capsys):
        assert main(["run", str(SCRIPTS / "example2.rq"), "--json-only"]) == 0
        captured = capsys.readouterr()
        lines = [json.loads(s) for s in captured.out.splitlines()]
        assert lines and captured.err == ""

    def test_text_on_stderr(self, capsys):
        assert main(["run", str(SCRIPTS / "example1.rq")]) == 0
        assert "[ok] query recognize A;" in capsys.readouterr().err

    def test_exit_codes(self, tmp_path, capsys):
        bad = tmp_path / "bad.rq"
        bad.write_text("ring R = zmod(;")
        assert main(["run", str(bad)]) == 2
        err = tmp_path / "err.rq"
        err.write_text("query is_domain X;")
        assert main(["run", str(err)]) == 1
        assert main(["run", str(tmp_path / "missing.rq")]) == 1

    def test_env_cap(self, tmp_path, monkeypatch, capsys):
        s = tmp_path / "s.rq"
        s.write_text("ring Z = zmod(16); rab A = rab(Z, [2], a=4, b=0); check oracle A;")
        monkeypatch.setenv("REES_QUOT_CAP", "20")
        assert main(["run", str(s), "--json-only"]) == 1
        assert main(["run", str(s), "--json-only", "--cap", "500"]) == 0

    def test_repl_subprocess(self):
        stdin = "ring Z = zmod(15);\nrab A = rab(Z, [3],\n  a=0, b=-1);\nquery localization A over prime=[5];\n"
        proc = subprocess.run(
            [sys.executable, "-m", "rees_quot", "repl", "--json-only"],
            input=stdin,
            capture_output=True,
            text=True,
            timeout=120,
        )
        assert proc.returncode == 0, proc.stderr
        last = json.loads(proc.stdout.splitlines()[-1])
        assert last["result"]["case"] == "Case2b_IsoBaseLocal" and last["result"]["lambda"] == "3"
