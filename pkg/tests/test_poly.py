import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentsos.errors import DimensionMismatch, NonHermitian
from momentsos.poly import (
    Constraint,
    HermitianPoly,
    Pop,
    evaluate,
    evaluate_real,
    mi_unit,
    monomials_upto,
    normalize_hermitian,
    pop_from_json,
    pop_realify,
    pop_to_json,
    real_poly,
    realify,
)


def herm(n, raw):
    return normalize_hermitian(n, raw)


def test_normalize_real_pair():
    p = herm(1, {((1,), (0,)): 1, ((0,), (1,)): 1})
    assert p.terms[((1,), (0,))] == 1
    assert p.terms[((0,), (1,))] == 1


def test_normalize_imaginary_pair():
    p = herm(1, {((1,), (0,)): 1j, ((0,), (1,)): -1j})
    assert p.terms[((1,), (0,))] == 1j


def test_normalize_missing_mirror_raises():
    with pytest.raises(NonHermitian):
        herm(1, {((1,), (0,)): 1})


def test_normalize_inconsistent_mirror_raises():
    with pytest.raises(NonHermitian):
        herm(1, {((1,), (0,)): 1, ((0,), (1,)): 2})


def test_normalize_symmetrizes_small_noise():
    eps = 1e-12
    p = herm(1, {((1,), (0,)): 1 + eps, ((0,), (1,)): 1 - eps})
    assert p.terms[((1,), (0,))] == pytest.approx(1.0, abs=1e-11)


def test_normalize_ragged_raises():
    with pytest.raises(DimensionMismatch):
        herm(2, {((1,), (0,)): 1, ((0,), (1,)): 1})


def test_normalize_idempotent():
    raw = {((1, 0), (0, 1)): 2 + 3j, ((0, 1), (1, 0)): 2 - 3j, ((0, 0), (0, 0)): 4}
    p = herm(2, raw)
    q = normalize_hermitian(2, p.terms)
    assert p.terms == q.terms


def test_evaluate_linear_torus_objective():
    # z + z̄ at z = -1 equals -2
    p = herm(1, {((1,), (0,)): 1, ((0,), (1,)): 1})
    assert evaluate(p, [-1.0]) == pytest.approx(-2.0)


def test_evaluate_disc_quartic_on_circle():
    # 1 - (4/3)|z|^2 + (7/18)|z|^4 equals 1/18 on |z| = 1
    p = herm(
        1,
        {
            ((0,), (0,)): 1.0,
            ((1,), (1,)): -4.0 / 3.0,
            ((2,), (2,)): 7.0 / 18.0,
        },
    )
    for theta in (0.0, 0.7, 2.1):
        z = np.exp(1j * theta)
        assert evaluate(p, [z]) == pytest.approx(1.0 / 18.0, abs=1e-12)


def test_evaluate_at_origin_returns_constant_term():
    p = herm(2, {((0, 0), (0, 0)): 5.0, ((1, 0), (0, 1)): 2j, ((0, 1), (1, 0)): -2j})
    assert evaluate(p, [0, 0]) == pytest.approx(5.0)


def test_evaluate_wrong_dimension():
    p = herm(1, {((0,), (0,)): 1.0})
    with pytest.raises(DimensionMismatch):
        evaluate(p, [1.0, 2.0])


def test_realify_linear():
    # z + z̄ -> 2 x1 (n = 1)
    p = herm(1, {((1,), (0,)): 1, ((0,), (1,)): 1})
    r = realify(p)
    assert r.n == 2
    assert r.terms == {((1, 0), (0, 0)): pytest.approx(2.0)}


def test_realify_modulus():
    # |z|^2 -> x1^2 + x2^2
    p = herm(1, {((1,), (1,)): 1})
    r = realify(p)
    assert r.terms[((2, 0), (0, 0))] == pytest.approx(1.0)
    assert r.terms[((0, 2), (0, 0))] == pytest.approx(1.0)
    assert len(r.terms) == 2


def test_realify_constant():
    p = herm(1, {((0,), (0,)): 5.0})
    r = realify(p)
    assert r.terms == {((0, 0), (0, 0)): pytest.approx(5.0)}


def _random_hermitian(rng, n, half_deg, nterms):
    monos = monomials_upto(n, half_deg)
    raw = {}
    for _ in range(nterms):
        a = monos[rng.integers(len(monos))]
        b = monos[rng.integers(len(monos))]
        c = complex(rng.standard_normal(), rng.standard_normal())
        raw[(a, b)] = raw.get((a, b), 0) + c
        raw[(b, a)] = raw.get((b, a), 0) + c.conjugate()
    return normalize_hermitian(n, raw)


def test_evaluate_is_real_on_random_polys():
    rng = np.random.default_rng(7)
    for _ in range(30):
        n = int(rng.integers(1, 4))
        p = _random_hermitian(rng, n, 2, 5)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        evaluate(p, z)  # raises if the imaginary residue is not tiny


def test_realify_matches_complex_evaluation():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        p = _random_hermitian(rng, n, 2, 6)
        z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        r = realify(p)
        x = np.concatenate([z.real, z.imag])
        assert evaluate_real(r, x) == pytest.approx(evaluate(p, z), abs=1e-12 * (1 + abs(evaluate(p, z))))


def test_product_half_degree_adds():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p = _random_hermitian(rng, 2, int(rng.integers(1, 3)), 3)
        q = _random_hermitian(rng, 2, int(rng.integers(1, 3)), 3)
        if not p.terms or not q.terms:
            continue
        prod = p.multiply(q)
        assert prod.half_degree() == p.half_degree() + q.half_degree()


@given(st.integers(1, 3), st.integers(0, 3))
@settings(max_examples=30, deadline=None)
def test_monomial_count(n, d):
    from math import comb

    assert len(monomials_upto(n, d)) == comb(n + d, d)


def test_monomials_graded_lex_order():
    ms = monomials_upto(2, 2)
    assert ms == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_pop_half_degrees_complex_vs_real():
    # quadratic real polynomial: complex half-degree 2, real half-degree 1
    p = real_poly(1, {(2,): 1.0, (0,): -1.0})
    pop_c = Pop(1, "complex", p, (Constraint(p),))
    pop_r = Pop(1, "real", p, (Constraint(p),))
    assert pop_c.k0 == 2
    assert pop_r.k0 == 1


def test_pop_json_roundtrip():
    obj = herm(2, {((1, 0), (0, 1)): 1 + 2j, ((0, 1), (1, 0)): 1 - 2j})
    g = herm(2, {((0, 0), (0, 0)): 1.0, ((1, 0), (1, 0)): -1.0})
    pop = Pop(2, "complex", obj, (Constraint(g, "ge", label="ball"),), ball_radius=2.0)
    doc = pop_to_json(pop)
    json.dumps(doc)  # serializable
    back = pop_from_json(doc)
    assert back.n == 2 and back.field == "complex"
    assert back.objective.terms == obj.terms
    assert back.constraints[0].poly.terms == g.terms
    assert back.ball_radius == 2.0


def test_pop_realify_preserves_values():
    obj = herm(1, {((1,), (0,)): 1, ((0,), (1,)): 1})
    g = herm(1, {((0,), (0,)): 1.0, ((1,), (1,)): -1.0})
    pop = Pop(1, "complex", obj, (Constraint(g, "eq"),))
    rp = pop_realify(pop)
    assert rp.n == 2 and rp.field == "real"
    z = 0.3 - 0.4j
    x = [z.real, z.imag]
    assert rp.evaluate_objective(x) == pytest.approx(pop.evaluate_objective([z]))
    assert rp.evaluate_constraint(0, x) == pytest.approx(pop.evaluate_constraint(0, [z]))


def test_variable_unit_index():
    assert mi_unit(3, 1) == (0, 1, 0)
