import pytest
from hypothesis import given, strategies as st

from strategies import formulas
from tlk import formulas as fm
from tlk.formulas import (
    And,
    Bot,
    Box,
    Dia,
    FormulaSyntaxError,
    Imp,
    Not,
    Or,
    PDia,
    Var,
    analyze,
    expand,
    parse,
    render,
    schema,
    substitute,
)

p0, p1 = Var(0), Var(1)


def test_parse_examples():
    phi = parse("([]p0 -> p0)")
    assert phi is Imp(Box(p0), p0)
    assert render(phi) == "([]p0 -> p0)"
    assert parse("~(<>p1 & <p>p0)") is Not(And(Dia(p1), PDia(p0)))


def test_parse_error_position():
    with pytest.raises(FormulaSyntaxError) as e:
        parse("p0 ->")
    assert e.value.pos == 5
    with pytest.raises(FormulaSyntaxError):
        parse("p0 $ p1")
    with pytest.raises(FormulaSyntaxError):
        parse("(p0")
    with pytest.raises(FormulaSyntaxError):
        parse("p0 p1")


def test_precedence():
    assert parse("p0 & p1 | p0 -> p1 -> p0") is Imp(Or(And(p0, p1), p0), Imp(p1, p0))
    assert parse("~[]p0 & p1") is And(Not(Box(p0)), p1)


def test_hash_consing():
    assert And(p0, p1) is And(Var(0), Var(1))
    assert And(p0, p1) is not And(p1, p0)


@given(formulas())
def test_render_parse_round_trip(phi):
    assert parse(render(phi)) is phi


def test_analyze_examples():
    a = analyze(p0)
    assert (a["complexity"], a["modal_degree"]) == (0, 0)
    a = analyze(Box(p0))
    assert (a["complexity"], a["modal_degree"]) == (1, 1)
    a = analyze(schema("tab", 1))
    assert a["modal_degree"] == 1
    assert a["variables"] == ["p0", "p1"]


def _c(phi):
    """Complexity over primitives, straight from the recursion."""
    if phi.op in (fm.VAR, fm.BOT):
        return 0
    if phi.op == fm.IMP:
        return 1 + max(_c(phi.args[0]), _c(phi.args[1]))
    return 1 + _c(phi.args[0])


def _md(phi):
    if phi.op in (fm.VAR, fm.BOT):
        return 0
    if phi.op == fm.IMP:
        return max(_md(phi.args[0]), _md(phi.args[1]))
    return 1 + _md(phi.args[0])


@given(formulas())
def test_measures_follow_recursion(phi):
    e = expand(phi)
    assert set(e.op for e in fm.subformulas(e)) <= fm.PRIMITIVE
    assert fm.complexity(phi) == _c(e)
    assert fm.modal_degree(phi) == _md(e)


def test_substitute_examples():
    assert substitute(Imp(p0, p0), {0: Bot()}) is Imp(Bot(), Bot())
    assert substitute(Box(p0), {0: Dia(p1)}) is Box(Dia(p1))


@given(formulas(), formulas(), formulas())
def test_substitution_composes(phi, a, b):
    s = {0: a}
    t = {0: b, 1: Not(b)}
    ts = {0: substitute(a, t), 1: t[1]}
    assert substitute(substitute(phi, s), t) is substitute(phi, ts)


def test_delta_two():
    q = Var(0)
    want = fm.disj([q, Dia(q), PDia(q), Dia(Dia(q)), Dia(PDia(q)), PDia(Dia(q)), PDia(PDia(q))])
    assert schema("delta", 2, q) is want


def test_tab_one():
    delta = lambda f: Or(Or(f, Dia(f)), PDia(f))
    psi1 = And(Not(p0), p1)
    assert schema("tab", 1) is Not(And(delta(p0), delta(psi1)))


def test_bd_one_and_recursion():
    assert schema("bd", 1) is Imp(Dia(Box(p0)), p0)
    for k in range(1, 4):
        pk = Var(k)
        assert schema("bd", k + 1) is Imp(Dia(And(Box(pk), Not(schema("bd", k)))), pk)


@given(formulas(depth=3), st.integers(0, 3))
def test_delta_degree(phi, n):
    assert fm.modal_degree(schema("delta", n, phi)) == fm.modal_degree(phi) + n


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tab_variables(n):
    assert fm.variables(schema("tab", n)) == list(range(n + 1))


def test_nabla_zero_is_identity():
    assert schema("nabla", 0, p0) is p0
    assert schema("nabla", 1, p0) is Not(schema("delta", 1, Not(p0)))


@pytest.mark.parametrize("name", ["tab", "bd", "bz", "bw+", "bw-", "alt+", "alt-"])
def test_omega_and_zero_parameters(name):
    assert schema(name, "omega") is fm.Top()
    with pytest.raises(ValueError):
        schema(name, 0)


def test_constant_schemas():
    assert schema("grz") is Imp(Box(Imp(Box(Imp(p0, Box(p0))), p0)), p0)
    assert render(schema("lin+")) == "([]<>p0 -> <>[]p0)"
    assert render(schema("lin-")) == "([p]<p>p0 -> <p>[p]p0)"
    with pytest.raises(ValueError):
        schema("nope", 1)
    with pytest.raises(ValueError):
        schema("grz", 1)


def test_random_formula_respects_bounds():
    import random

    rng = random.Random(3)
    for _ in range(100):
        phi = fm.random_formula(rng, nvars=1, max_md=3)
        assert fm.modal_degree(phi) <= 3
        assert set(fm.variables(phi)) <= {0}
