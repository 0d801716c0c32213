import math
from collections import Counter
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import dense_operator, dense_probability, dense_state

from hyperbell.bell import (
    BellError,
    BellExpression,
    best_sign_value,
    build_expression,
    classical_bound_formula,
    quantum_value,
    ratio_formulas,
    symmetric_correlator,
    visibility,
)
from hyperbell.dyadic import Dyadic
from hyperbell.hypergraph import complete_k_uniform, single_edge
from hyperbell.statevec import build_state, outcome_probability


def dense_value(expr, h):
    """Evaluate an expression on the dense reference simulator."""
    psi = dense_state(h)
    total = 0.0
    for t in expr.terms:
        if t.kind == "probability":
            v = dense_probability(h, t.layout, t.outcomes)
        else:
            op = dense_operator(t.layout.replace("A", "Z").replace("B", "X"))
            v = psi @ op @ psi
        total += float(t.coefficient) * v
    return total


def test_hardy3_term_counts():
    expr = build_expression("hardy3", 3)
    signs = Counter(t.coefficient for t in expr.terms)
    assert signs == {1: 12, -1: 3}
    assert expr.direction == "geq0" and expr.classical_bound == 0


def test_hardyN3_minus_count():
    expr = build_expression("hardyN", 3)
    assert sum(t.coefficient < 0 for t in expr.terms) == 2**3 - 3 - 2


def test_mermin_even_4_terms():
    expr = build_expression("mermin_even", 4)
    by_b = Counter((t.layout.count("B"), t.coefficient) for t in expr.terms)
    assert by_b == {(0, -1): 1, (2, 1): 6, (4, -1): 1}


def test_traced_layout_padding():
    expr = build_expression("mermin_odd", 5, traced=2)
    assert all(t.layout.endswith("II") and "I" not in t.layout[:3] for t in expr.terms)
    assert expr.classical_bound == 2


@pytest.mark.parametrize(
    "family,n,expected",
    [
        ("hardy3", 3, Fraction(-3, 16)),
        ("svetlichny3", 3, Fraction(-1, 16)),
        ("hardyN", 5, Fraction(-25, 256)),
    ],
)
def test_single_edge_values(family, n, expected):
    value = quantum_value(build_expression(family, n), build_state(single_edge(n)))
    assert isinstance(value, Dyadic)
    assert value == expected


@pytest.mark.parametrize("n", range(3, 9))
def test_hardy_plus_terms_vanish(n):
    state = build_state(single_edge(n))
    for t in build_expression("hardyN", n).terms:
        if t.coefficient > 0:
            assert outcome_probability(state, t.layout, t.outcomes) == 0


def test_svetlichny_plus_terms_vanish(h3):
    for t in build_expression("svetlichny3", 3).terms[:12]:
        assert outcome_probability(h3, t.layout, t.outcomes) == 0


@pytest.mark.parametrize("family", ["mermin_even", "mermin_odd"])
@pytest.mark.parametrize("n", range(3, 8))
def test_mermin_matches_dense(family, n):
    h = complete_k_uniform(n, 3)
    expr = build_expression(family, n)
    assert float(quantum_value(expr, build_state(h))) == pytest.approx(dense_value(expr, h), abs=1e-9)


def test_mermin_even_6_on_3_uniform():
    # the even-B sum collapses to symmetric correlators: sum_j C(6,2j)(-1)^(j+1)<X^2j Z^(6-2j)>
    state = build_state(complete_k_uniform(6, 3))
    direct = sum(
        comb(6, m) * (-1) ** (m // 2 + 1) * symmetric_correlator(state, m).to_fraction()
        for m in range(0, 7, 2)
    )
    value = quantum_value(build_expression("mermin_even", 6), state)
    assert value == direct == 16


def test_hardy3_matches_dense():
    h = single_edge(3)
    expr = build_expression("hardy3", 3)
    assert dense_value(expr, h) == pytest.approx(-3 / 16, abs=1e-12)


@pytest.mark.parametrize("family", ["hardy3", "svetlichny3", "mermin_even", "separability"])
def test_json_round_trip(family):
    n = 3 if family in ("hardy3", "svetlichny3") else 5
    expr = build_expression(family, n)
    again = BellExpression.from_json(expr.to_json())
    assert again == expr
    assert again.to_json() == expr.to_json()


def test_expression_validation():
    with pytest.raises(BellError):
        build_expression("nope", 3)
    with pytest.raises(BellError):
        build_expression("hardy3", 4)
    with pytest.raises(BellError):
        build_expression("mermin_even", 4, traced=4)
    with pytest.raises(BellError):
        quantum_value(build_expression("mermin_even", 4), build_state(single_edge(3)))


@pytest.mark.parametrize(
    "family,n,expected", [("mermin_odd", 3, 2), ("hardy3", 3, 0), ("mermin_even", 12, 64), ("hardyN", 5, 0)]
)
def test_classical_bound_formula(family, n, expected):
    assert classical_bound_formula(family, n) == expected


def test_separability_has_no_local_bound():
    with pytest.raises(BellError):
        classical_bound_formula("separability", 4)


def test_best_sign_examples(uniform_state):
    assert best_sign_value(uniform_state(12, 4), 0, "even") == Fraction(9801, 64)
    assert best_sign_value(uniform_state(12, 4), 1, "odd") == Fraction(2871, 32)
    assert best_sign_value(uniform_state(11, 3), 1, "odd") == 16


@given(st.integers(0, 3), st.sampled_from(["odd", "even"]), st.lists(st.sampled_from([-1, 1]), min_size=12, max_size=12))
@settings(max_examples=30, deadline=None)
def test_best_sign_dominates_fixed_signs(k, parity, signs):
    state = build_state(complete_k_uniform(8, 4))
    best = best_sign_value(state, k, parity)
    start = 1 if parity == "odd" else 2
    fixed = sum(
        signs[m] * comb(8 - k, m) * symmetric_correlator(state, m, k).to_fraction()
        for m in range(start, 8 - k + 1, 2)
    )
    assert fixed <= best.to_fraction()


def test_visibility_examples():
    assert visibility(Fraction(33, 2), 6) == Fraction(33, 64)
    assert visibility(2**7, 8) == 1
    assert visibility(0, 5) == 0


def test_ratio_formulas():
    r = 1 / math.sqrt(2)
    obs6 = ratio_formulas(11, "obs6")
    assert obs6.quantum == pytest.approx(0.25 * ((1 + r) ** 10 - (1 - r) ** 10) - r**12, rel=1e-15)
    obs7 = ratio_formulas(12, "obs7")
    assert obs7.quantum == pytest.approx((1 + r) ** 11 / (4 * math.sqrt(2)) - (1 - r) ** 11 / (4 * math.sqrt(2)) - r**14)
    assert obs7.extra["traced_over_untraced_limit"] == pytest.approx(0.41421356)
    assert obs7.ratio == pytest.approx(obs7.quantum / 32)


@pytest.mark.parametrize("n,variant", [(12, "obs6"), (11, "obs7"), (11, "obs8")])
def test_ratio_formulas_reject_residue(n, variant):
    with pytest.raises(BellError):
        ratio_formulas(n, variant)


def test_dense_oracle_sanity():
    # <XXX> on the single-edge state is 1/2 by direct matrix algebra
    h = single_edge(3)
    psi = dense_state(h)
    assert psi @ dense_operator("XXX") @ psi == pytest.approx(0.5)
    assert np.isclose(psi @ psi, 1.0)
