import numpy as np
import pytest

from caliblab.exprmap import (EvalDomainError, ExprMap, Jet2, ParseError, eval_jet2,
                              parse, to_source)


def test_parse_valid():
    ast = parse("x1^2 + sinh(x2)", 2)
    jt = eval_jet2(ast, [1.0, 0.0])
    assert np.isclose(jt.value, 1.0)


def test_parse_error_offset():
    with pytest.raises(ParseError) as err:
        parse("x1 + * x2", 2)
    assert err.value.offset == 5


def test_unknown_identifier():
    with pytest.raises(ParseError, match="unknown identifier"):
        parse("x1 + foo(x2)", 2)


def test_arity_error():
    with pytest.raises(ParseError, match="arity"):
        parse("x3", 2)


def test_trailing_input():
    with pytest.raises(ParseError, match="trailing"):
        parse("x1 x2", 2)


def test_precedence():
    # ^ binds tighter than unary minus and is right-associative
    assert eval_jet2(parse("-x1^2", 1), [3.0]).value == -9.0
    assert eval_jet2(parse("2^3^2", 0), []).value == 512.0
    assert eval_jet2(parse("2^-1", 0), []).value == 0.5
    assert eval_jet2(parse("1+2*3", 0), []).value == 7.0


def test_bilinear_example():
    jt = eval_jet2(parse("x1*x2", 2), [3.0, 5.0])
    assert jt.value == 15.0
    assert np.allclose(jt.grad, [5.0, 3.0])
    assert np.isclose(jt.hess[0, 1], 1.0)
    assert np.isclose(jt.hess[1, 0], 1.0)


def test_constant_expression():
    jt = eval_jet2(parse("3.5 + cos(0.0)", 2), [1.0, 2.0])
    assert jt.value == 4.5
    assert np.all(jt.grad == 0.0)
    assert np.all(jt.hess == 0.0)


def test_domain_errors_carry_offsets():
    with pytest.raises(EvalDomainError) as err:
        eval_jet2(parse("log(x1)", 1), [-1.0])
    assert err.value.offset == 0
    with pytest.raises(EvalDomainError):
        eval_jet2(parse("x1 / (x2 - x2)", 2), [1.0, 2.0])
    with pytest.raises(EvalDomainError):
        eval_jet2(parse("x1 ^ 0.5", 1), [-2.0])


def test_integer_power_negative_base():
    jt = eval_jet2(parse("x1^3", 1), [-2.0])
    assert jt.value == -8.0
    assert np.isclose(jt.grad[0], 12.0)
    assert np.isclose(jt.hess[0, 0], -12.0)


def test_cmc_profile_expression():
    # closed form of the m = 2, c = 1 profile
    from caliblab.immersion import CmcProfile

    ast = parse("2*(cosh(x1/2)-1)", 1)
    prof = CmcProfile(2, 1.0)
    for r in (0.2, 0.9, 1.7):
        assert abs(eval_jet2(ast, [r]).value - prof.value(r)) < 1e-9


RNG_EXPRESSIONS = [
    "sin(x1)*cos(x2) + x1^2",
    "exp(0.3*x1) * tanh(x2)",
    "sqrt(4.0 + x1^2 + x2^2)",
    "atan(x1*x2) - x2^3",
    "log(2.0 + sin(x1)) + cosh(x2/2)",
    "(x1 + 2*x2)^4",
    "x1 / (2.0 + x2^2)",
    "sinh(x1)*x2 + 0.5*x1*x2^2",
    "(1.0 + x1^2)^1.5",
    "cos(x1^2) + sin(x2)^2",
]


@pytest.mark.parametrize("src", RNG_EXPRESSIONS)
def test_jets_match_finite_differences(src):
    ast = parse(src, 2)
    rng = np.random.default_rng(hash(src) % 2**32)
    p = rng.uniform(0.2, 0.9, size=2)
    jt = eval_jet2(ast, p)
    h = 1e-5
    for i in range(2):
        e = np.zeros(2)
        e[i] = h
        fd = (eval_jet2(ast, p + e).value - eval_jet2(ast, p - e).value) / (2 * h)
        scale = max(1.0, abs(jt.grad[i]))
        assert abs(fd - jt.grad[i]) / scale < 1e-6
    for i in range(2):
        for j in range(2):
            ei, ej = np.zeros(2), np.zeros(2)
            ei[i] = h
            ej[j] = h
            fd = (
                eval_jet2(ast, p + ei + ej).value
                - eval_jet2(ast, p + ei - ej).value
                - eval_jet2(ast, p - ei + ej).value
                + eval_jet2(ast, p - ei - ej).value
            ) / (4 * h * h)
            scale = max(1.0, abs(jt.hess[i, j]))
            assert abs(fd - jt.hess[i, j]) / scale < 1e-4


def test_roundtrip_stability():
    for src in RNG_EXPRESSIONS:
        ast = parse(src, 2)
        printed = to_source(ast)
        again = parse(printed, 2)
        assert to_source(again) == printed
        p = np.array([0.37, 0.61])
        assert np.isclose(eval_jet2(ast, p).value, eval_jet2(again, p).value,
                          rtol=0, atol=1e-15)


def test_jet_chain_rule():
    # compose g(f(x)) symbolically versus jet composition
    inner = parse("x1^2 + x2", 2)
    outer_of_inner = parse("sin(x1^2 + x2)", 2)
    p = np.array([0.4, 0.7])
    jt_inner = eval_jet2(inner, p)
    jt_direct = eval_jet2(outer_of_inner, p)
    composed = jt_inner.compose(np.sin(jt_inner.value), np.cos(jt_inner.value),
                                -np.sin(jt_inner.value))
    assert abs(composed.value - jt_direct.value) < 1e-10
    assert np.abs(composed.grad - jt_direct.grad).max() < 1e-10
    assert np.abs(composed.hess - jt_direct.hess).max() < 1e-10


def test_exprmap_vector_jets():
    m = ExprMap(["x1*x2", "x1 + x2^2"], 2)
    vals, jac, hess = m.jet([2.0, 3.0])
    assert np.allclose(vals, [6.0, 11.0])
    assert np.allclose(jac, [[3.0, 2.0], [1.0, 6.0]])
    assert np.allclose(hess[0], [[0, 1], [1, 0]])
    assert np.allclose(hess[1], [[0, 0], [0, 2]])
