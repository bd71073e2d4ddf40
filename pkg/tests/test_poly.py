import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestcalc.poly import (
    DepletedAlphabet,
    ExactPolynomial,
    arith,
    divided_difference,
    e_trim,
    evaluate,
    graham_positive,
    is_equivariantly_quasisymmetric,
    r_shift,
    specialize_t_zero,
)

P = ExactPolynomial.parse
X = ExactPolynomial.x
T = ExactPolynomial.t


def random_poly(rng, max_terms=6, max_deg=5, max_idx=3):
    out = ExactPolynomial.zero()
    for _ in range(rng.randint(0, max_terms)):
        term = ExactPolynomial.integer(rng.randint(-4, 4))
        for _ in range(rng.randint(0, max_deg)):
            idx = rng.randint(1, max_idx)
            term = term * (X(idx) if rng.random() < 0.5 else T(idx))
        out = out + term
    return out


def test_arith_examples():
    assert arith(X(1), -X(1), "add").is_zero()
    assert arith(P("x1 - t1"), ExactPolynomial.one(), "mul") == P("x1 - t1")
    # product-plus-product rearrangement of a small forest polynomial
    lhs = (X(1) - T(1)) * (T(2) - T(1)) + (X(1) - T(1)) * (X(2) - T(2))
    assert lhs == P("(x1-t1)(t2-t1) + (x1-t1)(x2-t2)")


def test_parse_print_round_trip():
    rng = random.Random(7)
    for _ in range(40):
        f = random_poly(rng)
        assert ExactPolynomial.parse(str(f)) == f


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-5, 5),
                          st.lists(st.integers(0, 3), max_size=3),
                          st.lists(st.integers(0, 3), max_size=3)),
                max_size=6))
def test_ring_axioms_and_json(term_specs):
    f = ExactPolynomial({(tuple(xv), tuple(tv)): c for c, xv, tv in term_specs})
    g = f * f - f
    assert g == f * (f - 1)
    assert ExactPolynomial.from_json(f.to_json()) == f
    assert ExactPolynomial.parse(str(f)) == f


def test_r_shift_examples():
    assert r_shift(P("x1 + x2"), 1, "minus") == P("t1 + x1")
    assert r_shift(P("x1 + x2"), 1, "plus") == P("x1 + t1")
    # depleted: t_{1,{1}} = t2
    assert r_shift(X(2), 1, "minus", {1}) == X(1)
    assert r_shift(X(1), 1, "minus", {1}) == T(2)


def test_divided_difference_examples():
    assert divided_difference(X(1), 1) == ExactPolynomial.one()
    assert divided_difference(X(1) * X(2), 1).is_zero()
    # (x1^2 - x2^2)/(x1 - x2) = x1 + x2
    assert divided_difference(X(1) ** 2, 1) == P("x1 + x2")


def test_divided_difference_nilhecke_relations():
    rng = random.Random(11)
    for _ in range(25):
        f = random_poly(rng, max_deg=5, max_idx=4)
        assert divided_difference(divided_difference(f, 2), 2).is_zero()
        d13 = divided_difference(divided_difference(f, 3), 1)
        d31 = divided_difference(divided_difference(f, 1), 3)
        assert d13 == d31
        lhs = divided_difference(divided_difference(divided_difference(f, 1), 2), 1)
        rhs = divided_difference(divided_difference(divided_difference(f, 2), 1), 2)
        assert lhs == rhs


def test_e_trim_examples():
    assert e_trim(X(1), 1) == ExactPolynomial.one()
    assert e_trim(P("(x1-t1)^2"), 1, {1}) == P("x1 + t2 - 2 t1")


def test_e_trim_division_identity_and_rplus_dd():
    rng = random.Random(3)
    for _ in range(20):
        f = random_poly(rng, max_deg=4, max_idx=3)
        for i in (1, 2):
            for A in (frozenset(), frozenset({1}), frozenset({2, 3})):
                alpha = DepletedAlphabet(A)
                lhs = (X(i) - T(alpha.variable_index(i))) * e_trim(f, i, alpha)
                assert lhs == r_shift(f, i, "plus", alpha) - r_shift(f, i, "minus", alpha)
                assert e_trim(f, i, alpha) == r_shift(divided_difference(f, i), i, "plus", alpha)


def test_evaluate_examples():
    # permutation evaluation: x_i <- t_{sigma(i)}
    f = P("(x1-t1)(x1-t2)")  # vanishes at identity
    assert evaluate(f, (1, 2, 3)).is_zero()
    assert evaluate(f, (3, 2, 1)) == P("(t3-t1)(t3-t2)")
    # depleted evaluation x <- t-hat_A
    assert evaluate(P("x1 + x2"), DepletedAlphabet(frozenset({1, 2}))) == P("t3 + t4")


def test_graham_positive_examples():
    ok, cert = graham_positive(P("(t2-t1)^2"))
    assert ok and cert.pretty() == "d1^2"
    ok, _ = graham_positive(T(1))
    assert not ok
    ok, cert = graham_positive(P("t5 + t4 - t3 - t2"))
    assert ok
    assert cert.pretty() == "d2 + 2*d3 + d4"
    with pytest.raises(ValueError):
        graham_positive(X(1))


def test_graham_positive_closure():
    rng = random.Random(5)
    gens = [P("t2-t1"), P("t3-t2"), P("t4-t3"), ExactPolynomial.one()]
    for _ in range(20):
        f = sum((rng.choice(gens) * rng.choice(gens) * rng.randint(0, 3) for _ in range(3)),
                ExactPolynomial.zero())
        g = sum((rng.choice(gens) * rng.randint(0, 3) for _ in range(3)),
                ExactPolynomial.zero())
        assert graham_positive(f + g)[0]
        assert graham_positive(f * g)[0]


def test_specialize_t_zero_examples():
    assert specialize_t_zero(ExactPolynomial.one()) == ExactPolynomial.one()
    assert specialize_t_zero(P("(x1-t1)(x1-t2)")) == P("x1^2")


DEFORMED_QSYM_3 = (
    "(x2^2 x3 + x1^2 x3 + x1^2 x2) - (x2 x3 + x1 x3 + x1 x2) t2"
    " - (x1^2 + x2^2) t2 - x1^2 t1 + (x1 + x2 + x3) t1 t2"
    " + (x2 + x1) t2^2 - (x3 + x2) t1^2 - t1 t2^2 + t1^3"
)


def test_equivariant_quasisymmetry_examples():
    f = P("x1^2 x2 + x1^2 x3 + x2^2 x3")
    assert not is_equivariantly_quasisymmetric(f, 3)
    assert is_equivariantly_quasisymmetric(P("t1^2 + 3 t2"), 3)
    assert is_equivariantly_quasisymmetric(P(DEFORMED_QSYM_3), 3)
    with pytest.raises(ValueError):
        is_equivariantly_quasisymmetric(X(4), 3)


def test_e_trim_kernel_is_equivariant_quasisymmetry():
    rng = random.Random(13)
    candidates = [P(DEFORMED_QSYM_3), P("x1^2 x2 + x1^2 x3 + x2^2 x3")]
    candidates += [random_poly(rng, max_idx=3) for _ in range(10)]
    for f in candidates:
        n = 3
        kernel = all(e_trim(f, i).is_zero() for i in range(1, n))
        assert kernel == is_equivariantly_quasisymmetric(f, n)
