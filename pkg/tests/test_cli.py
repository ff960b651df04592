import io
import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from divring.cli import (
    Config, ElementExpr, Term, format_config, format_expr, main, parse_config, parse_element, parse_expr,
)
from divring.errors import ParseError, UnknownSymbol, ValidationError

QUAT = "[field]\nkind = rational\n[algebra]\nkind = quaternion\na = -1\nb = -1\n"


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_parse_config_quaternion():
    cfg = parse_config(QUAT)
    assert cfg.field_kind == "rational" and cfg.algebra_kind == "quaternion"
    assert cfg.params == {"a": Fraction(-1), "b": Fraction(-1)}
    assert cfg.build_algebra().dim == 4


def test_config_errors():
    with pytest.raises(ValidationError) as exc:
        parse_config("[field]\nkind = prime\nmodulus = 4\n")
    assert exc.value.key == "field.modulus"
    with pytest.raises(ParseError) as exc:
        parse_config(QUAT + "foo = 1\n")
    assert exc.value.line == 7
    with pytest.raises(ParseError):
        parse_config("[nonsense]\n")
    with pytest.raises(ValidationError):
        parse_config("[algebra]\nkind = quaternion\na = 0\nb = 1\n")


def test_config_comments_and_round_trip():
    texts = [
        QUAT + "# a comment\n[subfield]\ngenerator = i   # inline\ngenerators = i, j\n",
        "[field]\nkind = prime\nmodulus = 5\n[algebra]\nkind = matrix\nn = 2\n[defaults]\nseed = 3\nbudget = 9\n",
        "[algebra]\nkind = multiquadratic\nsquares = 2, 3\n",
        "[algebra]\nkind = quaternion\na = -1/2\nb = 3\n[subfield]\ngenerator = 1 + i\nvar = u\n",
    ]
    for text in texts:
        cfg = parse_config(text)
        canon = format_config(cfg)
        assert parse_config(canon) == cfg
        assert format_config(parse_config(canon)) == canon


def test_parse_element_examples(H, M2):
    x = parse_element("1/2 + 3*i - j", H)
    assert list(x.coords) == [Fraction(1, 2), 3, -1, 0]
    assert parse_element("  1/2+3*i-j ", H) == x
    e = parse_element("e12 + e21", M2)
    assert e * e == M2.one()
    with pytest.raises(UnknownSymbol):
        parse_element("i", M2)
    with pytest.raises(ParseError):
        parse_element("2 ** i", H)
    with pytest.raises(ParseError):
        parse_element("1/0", H)


def test_b_index_symbols(H):
    assert parse_element("b3", H) == H.k
    with pytest.raises(UnknownSymbol):
        parse_element("b4", H)


def random_expr(rng):
    terms = []
    for _ in range(rng.randint(1, 5)):
        coeff = Fraction(rng.randint(-9, 9), rng.randint(1, 6))
        if coeff == 0:
            coeff = Fraction(1)
        symbol = rng.choice([None, "i", "j", "k", "e12", "e21", "b0", "b17"])
        terms.append(Term(coeff, symbol))
    return ElementExpr(tuple(terms))


def test_expression_round_trip():
    rng = random.Random(0)
    for _ in range(1000):
        e = random_expr(rng)
        assert parse_expr(format_expr(e)) == e


def test_minpoly_command():
    code, out, _ = run("minpoly", "--element", "1+i+j+k")
    assert (code, out) == (0, "t^2 - 2*t + 4\n")


def test_gd_check_command():
    assert run("gd-check", "--element", "i", "--degree", "2")[:2] == (0, "true\n")
    assert run("gd-check", "--element", "i", "--degree", "1")[:2] == (1, "false\n")


def test_word_decompose_command():
    code, out, _ = run("word-decompose", "--word", "x1 x2 x1", "--degree", "2")
    assert code == 0
    assert out == "Shirshov(v1=1, u1=x1, u2=x2 x1, v2=1)\n"
    code, out, _ = run("word-decompose", "--word", "x2 x1", "--degree", "2", "--json")
    assert code == 1 and json.loads(out)["decomposition"] is None


def test_rewrite_command():
    code, out, _ = run("rewrite", "--word", "x1 x2 x1 x2", "--degree", "2", "--cap", "2")
    assert code == 0
    assert out.splitlines() == ["x1 x2 x1 x2 = (-1)*[1]", "evaluation check: ok"]


def test_json_key_order_and_stability(tmp_path):
    args = ["commutator-search", "--element", "i", "--seed", "0", "--json"]
    first = run(*args)[1]
    assert first == run(*args)[1]
    data = json.loads(first)
    assert list(data) == ["element", "seed", "budget", "mult", "add"]
    assert data["mult"]["commutator"] == "-j"
    assert data["add"]["commutator"] == "2*k"
    verify = ["verify", "--samples", "20", "--seed", "4", "--json"]
    assert run(*verify)[1] == run(*verify)[1]
    assert list(json.loads(run(*verify)[1]))[:3] == ["mode", "d", "n"]


@pytest.mark.parametrize("argv,code", [
    (["minpoly", "--element", "i"], 0),
    (["minpoly", "--element", "q"], 2),
    (["minpoly", "--element", "1 +"], 2),
    (["minpoly"], 2),
    (["leftminpoly", "--element", "j"], 0),
    (["regrep", "--element", "j"], 0),
    (["gd-check", "--element", "1+i", "--degree", "1"], 1),
    (["commutator-search", "--element", "1"], 2),  # central
    (["commutator-search", "--element", "i", "--json"], 2),  # no seed
    (["commutator-search", "--element", "i", "--budget", "1", "--kind", "mult"], 1),
    (["word-decompose", "--word", "x1 y1", "--degree", "2"], 2),
    (["rewrite", "--word", "x1 x2 x1", "--degree", "2"], 0),
    (["rewrite", "--word", "x2 x1 x2 x2 x1 x2 x1", "--degree", "2", "--cap", "2", "--step-cap", "1"], 2),
    (["verify", "--samples", "10"], 0),
    (["verify", "--samples", "10", "--json"], 2),
    (["hilbert", "--a", "-1", "--b", "-1"], 0),
    (["hilbert", "--a", "1", "--b", "1"], 1),
    (["hilbert", "--a", "0", "--b", "1"], 2),
    (["nonsense"], 2),
])
def test_exit_code_matrix(argv, code):
    assert run(*argv)[0] == code


def test_config_file_and_bad_path(tmp_path):
    cfg = tmp_path / "m2.cfg"
    cfg.write_text("[field]\nkind = prime\nmodulus = 3\n[algebra]\nkind = matrix\nn = 2\n")
    code, out, _ = run("minpoly", "--config", str(cfg), "--element", "e12 + e21")
    assert (code, out) == (0, "t^2 + 2\n")
    assert run("minpoly", "--config", str(tmp_path / "missing"), "--element", "1")[0] == 2
    bad = tmp_path / "bad.cfg"
    bad.write_text("[field]\nkind = prime\nmodulus = 4\n")
    code, _, err = run("minpoly", "--config", str(bad), "--element", "1")
    assert code == 2 and err.count("\n") == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "divring", "minpoly", "--element", "i"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "t^2 + 1\n"


def test_default_config_is_hamilton():
    cfg = Config()
    assert cfg.build_algebra().basis_names == ["1", "i", "j", "k"]
