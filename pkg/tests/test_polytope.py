from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from hyperbell.bell import build_expression
from hyperbell.hypergraph import Hypergraph, single_edge
from hyperbell.polytope import (
    PolytopeError,
    _table_to_vertex,
    hybrid_vertices_3party,
    is_nonsignalling,
    local_vertices,
    lp_membership,
    noise_threshold,
    ns_vertices_2party,
)
from hyperbell.statevec import behavior_table, build_state

HYBRID = hybrid_vertices_3party()
LOCAL = local_vertices(3)


def hull_feasible(p, vertices):
    """Independent route: is there a probability vector w with sum_v w_v v = p?"""
    V = np.array([v.vector() for v in vertices]).T
    A_eq = np.vstack([V, np.ones(V.shape[1])])
    b_eq = np.append(p, 1.0)
    res = linprog(np.zeros(V.shape[1]), A_eq=A_eq, b_eq=b_eq, bounds=(0, None), method="highs")
    return res.status == 0


def h3_behavior(eps):
    return behavior_table(build_state(single_edge(3)), eps).vector()


def event_prob(v, layout, outcomes):
    return v.prob([s == "X" for s in layout], [r == "-" for r in outcomes])


def test_vertex_counts():
    assert len(ns_vertices_2party()) == 24
    assert len(HYBRID) == 288
    assert len(LOCAL) == 64


def test_deterministic_box_example():
    box = ns_vertices_2party()[0]
    for x in (0, 1):
        for y in (0, 1):
            assert box.prob((x, y), (0, 0)) == 1


def test_pr_box_example():
    pr = ns_vertices_2party()[16]
    assert pr.prob((1, 1), (0, 0)) == pr.prob((1, 1), (1, 1)) == 0
    assert pr.prob((1, 1), (0, 1)) == pr.prob((1, 1), (1, 0)) == Fraction(1, 2)
    assert pr.prob((0, 0), (0, 0)) == Fraction(1, 2)
    assert is_nonsignalling(pr)


def test_all_vertices_nonsignalling():
    assert all(is_nonsignalling(v) for v in ns_vertices_2party())
    assert all(is_nonsignalling(v) for v in HYBRID)


def test_signalling_box_detected():
    # Bob outputs Alice's setting
    v = _table_to_vertex(2, lambda s, o: int(o[0] == 0 and o[1] == s[0]))
    assert not is_nonsignalling(v)


def test_vertex_self_membership_sample():
    for v in HYBRID[::17] + LOCAL[::9]:
        assert lp_membership(v, HYBRID).member


def test_h3_membership_examples():
    out = lp_membership(h3_behavior(0), HYBRID)
    assert not out.member and out.violation > 0
    lam, C = out.lambda_, out.bound_C
    assert max(v.vector() @ lam for v in HYBRID) <= C + 1e-7
    assert lp_membership(h3_behavior(1), HYBRID).member
    assert lp_membership(h3_behavior(0.10), HYBRID).member


@pytest.mark.parametrize("eps", [0.0, 0.05, 0.19, 0.21, 0.5, 0.7])
def test_local_membership_matches_feasibility_oracle(eps):
    p = h3_behavior(eps)
    assert lp_membership(p, LOCAL).member == hull_feasible(p, LOCAL)


@pytest.mark.parametrize("eps", [0.0, 0.07, 0.08, 0.3])
def test_hybrid_membership_matches_feasibility_oracle(eps):
    p = h3_behavior(eps)
    assert lp_membership(p, HYBRID).member == hull_feasible(p, HYBRID)


def test_hardy_violating_behavior_outside_local():
    assert not lp_membership(h3_behavior(0), LOCAL).member


def test_convex_combinations_stay_inside():
    rng = np.random.default_rng(7)
    for _ in range(10):
        idx = rng.choice(len(HYBRID), size=4, replace=False)
        w = rng.dirichlet(np.ones(4))
        p = sum(wi * HYBRID[i].vector() for wi, i in zip(w, idx))
        assert lp_membership(p, HYBRID).member


def test_svetlichny_nonnegative_on_hybrid_vertices():
    expr = build_expression("svetlichny3", 3)
    for v in HYBRID:
        assert sum(t.coefficient * event_prob(v, t.layout, t.outcomes) for t in expr.terms) >= 0


def test_threshold_product_state_is_member_at_zero():
    res = noise_threshold(Hypergraph(3), "hybrid")
    assert res.epsilon == 0 and res.member_at_zero


def test_threshold_hybrid():
    res = noise_threshold(single_edge(3), "hybrid")
    assert abs(res.epsilon - 1 / 13) < 1e-3
    assert set(res.to_dict()) >= {"epsilon", "lambda", "C"}


def test_threshold_validation():
    with pytest.raises(PolytopeError):
        noise_threshold(single_edge(4), "hybrid")
    with pytest.raises(PolytopeError):
        noise_threshold(single_edge(3), "hybrid", bisect_tol=1e-8)
    with pytest.raises(PolytopeError):
        noise_threshold(single_edge(3), "triangle")


def test_dimension_mismatch():
    with pytest.raises(PolytopeError):
        lp_membership(np.zeros(10), HYBRID)


def test_threshold_local_matches_feasibility_bisection():
    lo, hi = 0.0, 1.0
    while hi - lo > 1e-5:
        mid = (lo + hi) / 2
        lo, hi = (lo, mid) if hull_feasible(h3_behavior(mid), LOCAL) else (mid, hi)
    res = noise_threshold(single_edge(3), "full_local")
    assert abs(res.epsilon - (lo + hi) / 2) < 1e-3
