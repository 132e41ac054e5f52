import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from elasto_waves.core import (
    InvariantPair,
    ModelParams,
    State,
    char_speed,
    char_speeds,
    invariant,
    riemann_invariants,
    state_from_invariants,
    volpert_mean,
)

reals = st.floats(-1e3, 1e3, allow_nan=False)
ks = st.floats(0.01, 100.0)


@pytest.mark.parametrize("k,u,l1,l2", [(2, 1, -1, 3), (1, 0, -1, 1), (1, 5, 4, 6)])
def test_char_speeds(k, u, l1, l2):
    cs = char_speeds(ModelParams(k), State(u, 0.0))
    assert (cs.lambda1, cs.lambda2) == (l1, l2)


def test_eigenvectors_match_the_jacobian():
    p, s = ModelParams(1.5), State(0.3, -2.0)
    cs = char_speeds(p, s)
    # A = [[u, -1], [-k^2, u]]
    for lam, (a, b) in ((cs.lambda1, cs.r1), (cs.lambda2, cs.r2)):
        assert s.u * a - b == pytest.approx(lam * a)
        assert -p.k**2 * a + s.u * b == pytest.approx(lam * b)


@pytest.mark.parametrize("k,state,w", [(1, (2, 3), (1, 5)), (1, (0, 0), (0, 0)), (3, (1, 0), (-3, 3))])
def test_riemann_invariants(k, state, w):
    assert riemann_invariants(ModelParams(k), State(*state)) == InvariantPair(*w)


def test_invariant_by_family():
    p, s = ModelParams(2.0), State(1.0, 1.0)
    assert invariant(p, 1, s) == -1.0
    assert invariant(p, 2, s) == 3.0


@pytest.mark.parametrize("a,b,m", [(0, -1, -0.5), (2, 4, 3), (7.25, 7.25, 7.25)])
def test_volpert_mean(a, b, m):
    assert volpert_mean(a, b) == m


@pytest.mark.parametrize("k", [0.0, -1.0, math.nan, math.inf])
def test_bad_k(k):
    with pytest.raises(ValueError, match="k must be positive"):
        ModelParams(k)


def test_state_rejects_nan():
    with pytest.raises(ValueError):
        State(math.nan, 0.0)


def test_char_speed_family_check():
    with pytest.raises(ValueError):
        char_speed(ModelParams(1.0), 3, 0.0)


@given(reals, reals, ks)
def test_speed_gap_is_2k(u, sigma, k):
    cs = char_speeds(ModelParams(k), State(u, sigma))
    assert cs.lambda1 < cs.lambda2
    assert cs.lambda2 - cs.lambda1 == pytest.approx(2 * k)


@given(reals, reals, ks)
def test_invariants_round_trip(u, sigma, k):
    p = ModelParams(k)
    back = state_from_invariants(p, riemann_invariants(p, State(u, sigma)))
    assert back.u == pytest.approx(u, rel=1e-12, abs=1e-9)
    assert back.sigma == pytest.approx(sigma, rel=1e-12, abs=1e-9)


@given(reals, reals)
def test_volpert_mean_symmetric(a, b):
    assert volpert_mean(a, b) == volpert_mean(b, a)
    assert volpert_mean(a, a) == a
