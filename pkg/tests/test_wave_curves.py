import pytest
from hypothesis import given
from hypothesis import strategies as st

from elasto_waves.core import ModelParams, State, invariant
from elasto_waves.wave_curves import (
    NotOnShockCurve,
    RelativePosition,
    classify,
    default_tol,
    lax_admissible,
    shock_speed,
)

P1 = ModelParams(1.0)
reals = st.floats(-100, 100, allow_nan=False)


@pytest.mark.parametrize("other,tag", [
    ((1, -1), RelativePosition.ON_R2),
    ((-1, 1), RelativePosition.ON_S2),
    ((1, 0), RelativePosition.GAMMA1),
    ((1, 1), RelativePosition.ON_R1),
    ((-1, -1), RelativePosition.ON_S1),
    ((0, -1), RelativePosition.GAMMA2),
    ((-1, 0), RelativePosition.GAMMA3),
    ((0, 1), RelativePosition.GAMMA4),
    ((0, 0), RelativePosition.COINCIDENT),
])
def test_classify_examples(other, tag):
    assert classify(P1, State(0.0, 0.0), State(*other)) is tag


def test_tolerance_band_belongs_to_the_curve():
    base = State(0.0, 0.0)
    assert classify(P1, base, State(1.0, -1.0 + 1e-10)) is RelativePosition.ON_R2
    assert classify(P1, base, State(1.0, -1.0 + 1e-6)) is RelativePosition.GAMMA1
    assert classify(P1, base, State(1.0, -1.0 + 1e-6), tol=1e-5) is RelativePosition.ON_R2


def test_family_property():
    assert RelativePosition.ON_S1.family == 1
    assert RelativePosition.ON_R2.family == 2
    assert RelativePosition.GAMMA3.family is None


@pytest.mark.parametrize("k,j,um,up,s", [(1, 2, 1, -1, 1), (1, 1, 2, -2, -1), (1, 2, 0, 0, 1)])
def test_shock_speed(k, j, um, up, s):
    assert shock_speed(ModelParams(k), j, um, up) == s


@pytest.mark.parametrize("j,left,right,ok", [
    (2, (0, 0), (-1, 1), True),
    (2, (-1, 1), (0, 0), False),
    (1, (2, 0), (0, -2), True),
])
def test_lax(j, left, right, ok):
    assert lax_admissible(P1, j, State(*left), State(*right)) is ok


def test_lax_off_curve():
    with pytest.raises(NotOnShockCurve):
        lax_admissible(P1, 2, State(0, 0), State(-1, 0))


@given(reals, reals, reals, reals, st.sampled_from([0.5, 1.0, 3.0]))
def test_on_curve_tags_share_the_invariant(u0, s0, u1, s1, k):
    p = ModelParams(k)
    base, other = State(u0, s0), State(u1, s1)
    tag = classify(p, base, other)
    assert isinstance(tag, RelativePosition)
    if tag.family is not None:
        fam = tag.family
        assert abs(invariant(p, fam, other) - invariant(p, fam, base)) <= default_tol(base, other) * (1 + k)


@given(reals, reals, st.floats(0.01, 50), st.sampled_from([0.5, 1.0, 3.0]), st.sampled_from([1, 2]))
def test_points_placed_on_lines(u0, s0, du, k, fam):
    p = ModelParams(k)
    base = State(u0, s0)
    sign = -1.0 if fam == 2 else 1.0
    for d in (du, -du):
        other = State(u0 + d, s0 + sign * k * d)
        tag = classify(p, base, other)
        assert tag.family == fam
        assert tag.value.startswith("OnR" if d > 0 else "OnS")


@given(reals, reals, st.sampled_from([1, 2]))
def test_shock_speed_symmetric(a, b, j):
    assert shock_speed(P1, j, a, b) == shock_speed(P1, j, b, a)


@given(reals, st.floats(0.01, 100), st.sampled_from([1, 2]))
def test_admissible_shocks_are_strict(u_left, drop, j):
    p = ModelParams(1.0)
    left = State(u_left, 0.0)
    sign = -1.0 if j == 2 else 1.0
    right = State(u_left - drop, sign * -drop)
    assert lax_admissible(p, j, left, right)
    s = shock_speed(p, j, left.u, right.u)
    lam = (lambda u: u - 1.0) if j == 1 else (lambda u: u + 1.0)
    assert lam(right.u) < s < lam(left.u)
