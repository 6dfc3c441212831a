import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import fuzzcorr as fc
from fuzzcorr import dsl
from fuzzcorr.interpreter import RunConfig, ScriptRuntimeError, run


def run_src(source, **cfg):
    return run(dsl.parse(source), RunConfig(**cfg))


def rows(text):
    lines = text.strip().splitlines()
    assert lines[0] == "alpha,lo,hi"
    return np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])


class TestLexer:
    def test_tokens_and_positions(self):
        toks = dsl.tokenize("let A = tri(0, 1.5, .5);\n  print(A);")
        assert [t.text for t in toks[:6]] == ["let", "A", "=", "tri", "(", "0"]
        pr = [t for t in toks if t.text == "print"][0]
        assert (pr.line, pr.col) == (2, 3)
        assert toks[-1].kind == "EOF"

    def test_comments_skipped(self):
        assert [t.text for t in dsl.tokenize("# hi\nlet # there\n")][:1] == ["let"]

    def test_bad_character(self):
        with pytest.raises(dsl.ParseError) as e:
            dsl.tokenize("let A = tri(0, 1, 2) @")
        assert (e.value.line, e.value.col, e.value.token) == (1, 22, "@")

    def test_no_scientific_notation(self):
        with pytest.raises(dsl.ParseError):
            dsl.parse("let A = tri(0, 1e3, 2000);")


class TestParser:
    def test_single_binding(self):
        s = dsl.parse("let A = tri(0,1,2);")
        assert s.statements == (dsl.Let("A", dsl.Tri(0, 1, 2)),)

    def test_ordering_is_not_static(self):
        s = dsl.parse("let A = tri(2,1,0);")
        assert len(s.statements) == 1
        with pytest.raises(ScriptRuntimeError) as e:
            run(s)
        assert e.value.exit_code == 3 and (e.value.line, e.value.col) == (1, 9)

    def test_full_grammar(self):
        src = """
        let A = lr(1, 2, 0.5, 1, linear, power(2));
        let f = hyper(-2, 0.5);
        let g = linear(-1, 3);
        let B = apply(f, A);
        let C = div(A, B, corr);
        let D = mul(A, B);
        print(C, 5);
        check(A, g);
        compare(trap(0, 1, 2, 3), D);
        """
        s = dsl.parse(src)
        assert isinstance(s.statements[0].expr.right, dsl.Shape)
        assert s.statements[0].expr.right.exponent == 2
        assert s.statements[4].expr == dsl.BinOp("div", dsl.Ref("A"), dsl.Ref("B"), True)
        assert s.statements[6] == dsl.Print(dsl.Ref("C"), 5)
        assert isinstance(s.statements[8].left, dsl.Trap)

    def test_negative_literals(self):
        s = dsl.parse("let A = tri(-2, -1, +0.5);")
        assert s.statements[0].expr == dsl.Tri(-2, -1, 0.5)

    @pytest.mark.parametrize("src, line, col, token", [
        ("let A = tri(0, 1);", 1, 17, ")"),
        ("let A = tri(0, 1, 2)", 1, 21, "end of input"),
        ("let A = tri(0,1,2);\nprint(A, 1);", 2, 10, "1"),
        ("let A = tri(0,1,2);\nprint(A, 2.5);", 2, 10, "2.5"),
        ("let tri = tri(0,1,2);", 1, 5, "tri"),
        ("let A = foo(1);", 1, 9, "foo"),
        ("let A = tri(0,1,2);\nlet B = add(A, A, cor);", 2, 19, "cor"),
        ("show(A);", 1, 1, "show"),
    ])
    def test_syntax_errors_have_positions(self, src, line, col, token):
        with pytest.raises(dsl.ScriptError) as e:
            dsl.parse(src)
        assert (e.value.line, e.value.col, e.value.token) == (line, col, token)
        assert e.value.exit_code == 2

    def test_unknown_identifier(self):
        with pytest.raises(dsl.ScriptNameError) as e:
            dsl.parse("let A = tri(0,1,2);\nprint(B);")
        assert (e.value.line, e.value.col) == (2, 7)

    def test_use_before_definition(self):
        with pytest.raises(dsl.ScriptNameError):
            dsl.parse("let B = apply(f, A);\nlet f = linear(1, 0);\nlet A = tri(0,1,2);")

    def test_rebinding(self):
        with pytest.raises(dsl.ScriptNameError):
            dsl.parse("let A = tri(0,1,2);\nlet A = tri(0,1,3);")

    def test_kind_errors(self):
        with pytest.raises(dsl.ScriptTypeError):
            dsl.parse("let A = tri(0,1,2);\nlet B = apply(A, A);")
        with pytest.raises(dsl.ScriptTypeError):
            dsl.parse("let f = linear(1,0);\nprint(f);")
        with pytest.raises(dsl.ScriptTypeError):
            dsl.parse("let f = linear(1,0);\ncompare(f, tri(0,1,2));")

    def test_positions_do_not_affect_equality(self):
        assert dsl.parse("let A=tri(0,1,2);") == dsl.parse("\n\n   let A = tri( 0 , 1 , 2 ) ;")


class TestPrettyPrint:
    def test_canonical_form(self):
        s = dsl.parse("let A=lr(1,2,0.5,1,linear,power(2));let B=sub(A,A,corr);print(B,3);")
        assert str(s) == ("let A = lr(1, 2, 0.5, 1, linear, power(2));\n"
                          "let B = sub(A, A, corr);\n"
                          "print(B, 3);\n")

    def test_awkward_floats_survive(self):
        s = dsl.parse("let A = tri(0.1, 0.30000000000000004, 123456789.125);")
        assert dsl.parse(str(s)) == s


# ---------------------------------------------------------------------------
# round trip of randomly generated scripts

num = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False).map(lambda x: dsl.fmt_number(x))
names = st.sampled_from(["A", "B", "C", "f", "g", "x1", "y_2", "Zed"])


@st.composite
def scripts(draw):
    fuzzy, corrs, lines = [], [], []
    for i in range(draw(st.integers(1, 10))):
        choices = ["tri", "trap", "lr", "linear", "hyper"]
        if fuzzy and corrs:
            choices.append("apply")
        if fuzzy:
            choices += ["binop", "print", "compare", "ref"]
            if corrs:
                choices.append("check")
        c = draw(st.sampled_from(choices))
        name = f"{draw(names)}{i}"
        n = lambda k: ", ".join(draw(num) for _ in range(k))
        if c == "tri":
            lines.append(f"let {name} = tri({n(3)});")
            fuzzy.append(name)
        elif c == "trap":
            lines.append(f"let {name} = trap({n(4)});")
            fuzzy.append(name)
        elif c == "lr":
            shape = lambda: draw(st.sampled_from(["linear", f"power({draw(num)})"]))
            lines.append(f"let {name} = lr({n(4)}, {shape()}, {shape()});")
            fuzzy.append(name)
        elif c in ("linear", "hyper"):
            lines.append(f"let {name} = {c}({n(2)});")
            corrs.append(name)
        elif c == "apply":
            lines.append(f"let {name} = apply({draw(st.sampled_from(corrs))}, {draw(st.sampled_from(fuzzy))});")
            fuzzy.append(name)
        elif c == "binop":
            op = draw(st.sampled_from(dsl.BINOPS))
            corr = ", corr" if draw(st.booleans()) else ""
            a, b = draw(st.sampled_from(fuzzy)), draw(st.sampled_from(fuzzy))
            lines.append(f"let {name} = {op}({a}, {b}{corr});")
            fuzzy.append(name)
        elif c == "ref":
            lines.append(f"let {name} = {draw(st.sampled_from(fuzzy))};")
            fuzzy.append(name)
        elif c == "print":
            lv = f", {draw(st.integers(2, 500))}" if draw(st.booleans()) else ""
            lines.append(f"print({draw(st.sampled_from(fuzzy))}{lv});")
        elif c == "compare":
            lines.append(f"compare({draw(st.sampled_from(fuzzy))}, tri({n(3)}));")
        else:
            lines.append(f"check({draw(st.sampled_from(fuzzy))}, {draw(st.sampled_from(corrs))});")
    sep = draw(st.sampled_from(["\n", " ", "\n# note\n", "\t"]))
    return sep.join(lines)


@settings(max_examples=200, deadline=None)
@given(scripts())
def test_parse_print_parse_fixed_point(src):
    once = dsl.parse(src)
    text = str(once)
    assert dsl.parse(text) == once
    assert str(dsl.parse(text)) == text


# ---------------------------------------------------------------------------
# execution


class TestRun:
    def test_apply_print_table(self):
        out = run_src("let f = linear(2,3);\nlet A = tri(0,1,2);\nlet B = apply(f, A);\nprint(B, 11);")
        table = rows(out.text)
        assert table.shape == (11, 3)
        al = np.arange(11) / 10
        np.testing.assert_allclose(table[:, 0], al, atol=0)
        np.testing.assert_allclose(table[:, 1], 3 + 2 * al, atol=1e-12)
        np.testing.assert_allclose(table[:, 2], 7 - 2 * al, atol=1e-12)
        assert out.exit_code == 0

    def test_interactive_subtraction_is_crisp_zero(self):
        table = rows(run_src("let A = tri(0,1,2);\nlet D = sub(A, A, corr);\nprint(D);").text)
        assert np.all(table[:, 1:] == 0)

    def test_noninteractive_subtraction(self):
        table = rows(run_src("let A = tri(0,1,2);\nlet N = sub(A, A);\nprint(N, 5);").text)
        al = table[:, 0]
        np.testing.assert_allclose(table[:, 1], -2 + 2 * al, atol=1e-12)
        np.testing.assert_allclose(table[:, 2], 2 - 2 * al, atol=1e-12)

    def test_check_passes(self):
        out = run_src("let A = tri(0,1,2);\nlet f = linear(2,3);\ncheck(A, f);")
        assert out.exit_code == 0 and out.text.startswith("alpha,expected_lo")

    def test_compare_failure_sets_exit_code(self):
        out = run_src("let A = tri(0,1,2);\ncompare(A, tri(0,1,2.5));")
        assert out.exit_code == 1 and "2:1" in out.failures[0]

    def test_compare_uses_configured_tolerance(self):
        assert run_src("let A = tri(0,1,2);\ncompare(A, tri(0,1,2.5));", tol=0.6).exit_code == 0

    def test_chained_lineage(self):
        # (2A + 1) - A over the same root is A + 1
        src = ("let A = tri(0,1,2);\nlet f = linear(2,1);\nlet B = apply(f, A);\n"
               "let C = sub(B, A, corr);\ncompare(C, tri(1,2,3));")
        assert run_src(src).exit_code == 0

    def test_corr_between_unrelated_numbers(self):
        with pytest.raises(dsl.ScriptTypeError) as e:
            run_src("let A = tri(0,1,2);\nlet B = tri(0,1,2);\nlet C = add(A, B, corr);")
        assert (e.value.line, e.value.col) == (3, 9) and e.value.exit_code == 2

    def test_domain_error_position(self):
        with pytest.raises(ScriptRuntimeError) as e:
            run_src("let A = tri(-1,0,1);\nlet h = hyper(2,1);\nlet B = apply(h, A);")
        assert (e.value.line, e.value.col) == (3, 9) and e.value.exit_code == 3
        assert isinstance(e.value.__cause__, fc.DomainViolationError)

    def test_check_mode_suppresses_print(self):
        out = run_src("let A = tri(0,1,2);\nprint(A);\ncompare(A, A);", mode="check")
        assert out.text == "equal,max_distance,tolerance\ntrue,0,1.0000000000000001e-09\n"

    def test_json(self):
        import json
        out = run_src("let A = tri(0,1,2);\nprint(A, 3);", format="json")
        doc = json.loads(out.text)
        assert doc == {"levels": [{"alpha": 0.0, "lo": 0.0, "hi": 2.0},
                                  {"alpha": 0.5, "lo": 0.5, "hi": 1.5},
                                  {"alpha": 1.0, "lo": 1.0, "hi": 1.0}]}
