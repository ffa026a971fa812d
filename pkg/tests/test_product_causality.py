"""Product-state causal predicate, reachable arcs, curve oracle, operator
symbol, and the separating-element search.

Kronecker expectations are assembled from literal matrices in this file, and
the predicate is cross-checked against the curve oracle on mixed random pairs.
"""

import math

import numpy as np
import pytest

from nccausal import (
    CausalElement,
    Event,
    FiniteDirac,
    Grid,
    GridTooSmall,
    LongitudeArc,
    NonCausalSegment,
    NotHermitian,
    NotRelatedReason,
    PoleState,
    ProductCurve,
    ProductState,
    causal_symbol,
    causally_precedes,
    causally_related,
    curve_oracle,
    default_dictionary,
    make_state,
    minimal_angle_gap,
    product_symbol,
    reachable_longitudes,
    separating_element_search,
    speed_bound,
    state_on_parallel,
)
from nccausal.verify import random_product_pair, related_product_pair

E = Event
I2 = np.eye(2, dtype=complex)
G0 = np.array([[1j, 0], [0, -1j]])
G1 = np.array([[0, 1], [1, 0]], dtype=complex)
GM = G0 @ G1


def equator(theta):
    return state_on_parallel(0.0, theta)


def test_speed_bound_examples():
    assert speed_bound(FiniteDirac(1.0, 2.0)) == 1.0
    assert speed_bound(FiniteDirac(0.0, 1.0)) == 1.0
    assert speed_bound(FiniteDirac(-3.0, 3.0)) == 6.0


def test_minimal_angle_gap_wraps():
    assert minimal_angle_gap(0.0, 0.0) == 0.0
    assert math.isclose(minimal_angle_gap(-3.0, 3.0), 2 * math.pi - 6.0, abs_tol=1e-15)
    assert math.isclose(minimal_angle_gap(0.1, 2 * math.pi + 0.4), 0.3, abs_tol=1e-12)
    assert minimal_angle_gap(0.0, math.pi) <= math.pi


def test_product_symbol_constant_scalar_vanishes():
    df = FiniteDirac(1.0, 2.0)
    sym = product_symbol(3.0 * I2, 0.0 * I2, 0.0 * I2, df)
    assert np.max(np.abs(sym)) == 0.0


def test_product_symbol_time_slope_is_minus_identity():
    # oracle: kron assembly from the literal basis, da/dt = I
    df = FiniteDirac(1.0, 2.0)
    oracle = np.kron(1j * G0, I2) @ np.kron(-1j * G0, I2)
    assert np.max(np.abs(oracle + np.eye(4))) == 0.0
    sym = product_symbol(0.0 * I2, I2, 0.0 * I2, df)
    assert np.max(np.abs(sym + np.eye(4))) <= 1e-14
    assert np.linalg.eigvalsh(sym)[-1] <= 1e-9


def test_product_symbol_reduces_to_scalar_symbol():
    df = FiniteDirac(0.5, -1.0)
    rng = np.random.default_rng(21)
    for _ in range(50):
        dft, dfx, val = rng.uniform(-2, 2, 3)
        sym = product_symbol(val * I2, dft * I2, dfx * I2, df)
        reduced = np.kron(causal_symbol(dft, dfx), I2)
        assert np.max(np.abs(sym - reduced)) <= 1e-12


def test_product_symbol_commutator_term_is_hermitian():
    df = FiniteDirac(0.0, 2.0)
    sx = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    sym = product_symbol(sx, 0.0 * I2, 0.0 * I2, df)
    assert np.max(np.abs(sym - sym.conj().T)) <= 1e-14
    # oracle: [D, sx] is anti-Hermitian, and kron(-i g1, comm) flips it Hermitian
    comm = df.matrix() @ sx - sx @ df.matrix()
    assert np.max(np.abs(comm + comm.conj().T)) == 0.0
    oracle = np.kron(-1j * G1, comm)
    assert np.max(np.abs(sym - oracle)) <= 1e-14


def test_product_symbol_rejects_non_hermitian_input():
    df = FiniteDirac(0.0, 1.0)
    bad = np.array([[0.0, 1.0], [0.0, 0.0]])
    with pytest.raises(NotHermitian):
        product_symbol(bad, I2, I2, df)


def test_causally_related_reflexive():
    df = FiniteDirac(1.0, 2.0)
    w = ProductState(E(0.3, -1.2), state_on_parallel(0.4, 2.0))
    assert causally_related(w, w, df).related


def test_causally_related_speed_example():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    ok = causally_related(w1, ProductState(E(2, 0), equator(1.5)), df)
    assert ok.related
    assert math.isclose(ok.delta_theta, 1.5)
    assert math.isclose(ok.theta_budget, 2.0)
    assert math.isclose(ok.speed_margin, 0.5)

    too_fast = causally_related(w1, ProductState(E(2, 0), equator(math.pi)), df)
    assert not too_fast.related
    assert too_fast.reason is NotRelatedReason.SPEED_LIMIT_EXCEEDED


def test_causally_related_failure_reasons_in_order():
    df = FiniteDirac(0.0, 1.0)
    base_fail = causally_related(
        ProductState(E(0, 0), equator(0.0)),
        ProductState(E(0, 1), state_on_parallel(0.5, math.pi)),
        df,
    )
    assert base_fail.reason is NotRelatedReason.BASE_NOT_CAUSAL

    lat_fail = causally_related(
        ProductState(E(0, 0), equator(0.0)),
        ProductState(E(3, 0), state_on_parallel(0.5, math.pi)),
        df,
    )
    assert lat_fail.reason is NotRelatedReason.LATITUDE_MISMATCH


def test_causally_related_pole_pairs():
    df = FiniteDirac(0.0, 1.0)
    north = make_state([1.0, 0.0])
    south = make_state([0.0, 1.0])
    same_pole = causally_related(
        ProductState(E(0, 0), north), ProductState(E(1, 0), north), df
    )
    assert same_pole.related
    assert same_pole.delta_theta is None

    opposite = causally_related(
        ProductState(E(0, 0), north), ProductState(E(1, 0), south), df
    )
    assert not opposite.related
    assert opposite.reason is NotRelatedReason.LATITUDE_MISMATCH

    past_pole = causally_related(
        ProductState(E(1, 0), north), ProductState(E(0, 0), north), df
    )
    assert past_pole.reason is NotRelatedReason.BASE_NOT_CAUSAL


def test_lightlike_rigidity_of_internal_state():
    df = FiniteDirac(1.0, 2.5)
    s = state_on_parallel(-0.2, 0.9)
    same = causally_related(
        ProductState(E(0, 0), s), ProductState(E(2, 2), s), df
    )
    assert same.related
    moved = causally_related(
        ProductState(E(0, 0), s),
        ProductState(E(2, 2), state_on_parallel(-0.2, 1.1)),
        df,
    )
    assert not moved.related
    assert moved.reason is NotRelatedReason.SPEED_LIMIT_EXCEEDED


def test_restriction_to_base_order():
    df = FiniteDirac(0.0, 1.0)
    s = state_on_parallel(0.3, 0.7)
    rng = np.random.default_rng(22)
    for _ in range(100):
        p = E(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
        q = E(float(rng.uniform(-3, 3)), float(rng.uniform(-3, 3)))
        got = causally_related(ProductState(p, s), ProductState(q, s), df).related
        assert got == causally_precedes(p, q)


def test_reachable_longitudes_spacelike_is_empty():
    df = FiniteDirac(0.0, 1.0)
    w = ProductState(E(0, 0), equator(0.3))
    assert reachable_longitudes(w, E(0, 1), df).kind == "empty"


def test_reachable_longitudes_full_circle_at_pi_budget():
    df = FiniteDirac(0.0, 1.0)
    w = ProductState(E(0, 0), equator(0.3))
    arc = reachable_longitudes(w, E(math.pi, 0), df)
    assert arc.kind == "full"
    assert arc.contains(-3.0) and arc.contains(2.0)


def test_reachable_longitudes_lightcone_pins_the_angle():
    df = FiniteDirac(0.0, 1.0)
    w = ProductState(E(0, 0), equator(0.3))
    arc = reachable_longitudes(w, E(1, 1), df)
    assert arc.kind == "arc"
    assert arc.half_width == 0.0
    assert arc.contains(0.3)
    assert not arc.contains(0.35)


def test_reachable_longitudes_pole_raises():
    df = FiniteDirac(0.0, 1.0)
    w = ProductState(E(0, 0), make_state([1.0, 0.0]))
    with pytest.raises(PoleState):
        reachable_longitudes(w, E(1, 0), df)


def test_longitude_arc_window():
    arc = LongitudeArc.partial(center=3.0, half_width=0.5)
    assert arc.contains(3.4)
    assert arc.contains(-2.9)  # wraps past pi
    assert not arc.contains(0.0)


def test_product_curve_validation():
    df = FiniteDirac(0.0, 2.0)
    good = ProductCurve(((E(0, 0), 0.0), (E(1, 0), 1.9), (E(2, 0), 3.8)))
    good.validate(df)  # |dtheta| = 1.9 <= 2 * 1 per segment
    bad = ProductCurve(((E(0, 0), 0.0), (E(1, 0), 2.5)))
    with pytest.raises(NonCausalSegment):
        bad.validate(df)
    bad_base = ProductCurve(((E(0, 0), 0.0), (E(0.5, 1.0), 0.1)))
    with pytest.raises(NonCausalSegment):
        bad_base.validate(df)


def test_curve_oracle_trivial_and_speed_cases():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    assert curve_oracle(w1, w1, df)
    assert curve_oracle(w1, ProductState(E(2, 0), equator(1.5)), df)
    assert not curve_oracle(w1, ProductState(E(2, 0), equator(math.pi)), df)
    assert not curve_oracle(w1, ProductState(E(0, 1), equator(0.0)), df)
    assert not curve_oracle(
        w1, ProductState(E(2, 0), state_on_parallel(0.5, 0.0)), df
    )


def test_curve_oracle_borderline_within_slack():
    df = FiniteDirac(0.0, 1.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    w2 = ProductState(E(2, 0), equator(2.0))  # budget exactly 2.0
    assert curve_oracle(w1, w2, df)


def test_curve_oracle_uses_minimal_arc_winding():
    df = FiniteDirac(0.0, 1.0)
    # longitudes 3.0 and -3.0: minimal arc 2*pi - 6 ~ 0.283, direct gap 6.0
    w1 = ProductState(E(0, 0), equator(3.0))
    w2 = ProductState(E(0.5, 0), equator(-3.0))
    assert minimal_angle_gap(3.0, -3.0) < 0.5 * speed_bound(df)
    assert curve_oracle(w1, w2, df)
    assert causally_related(w1, w2, df).related


def test_curve_oracle_agrees_with_predicate():
    df = FiniteDirac(1.0, 2.0)
    rng = np.random.default_rng(23)
    compared = 0
    for _ in range(150):
        w1, w2 = random_product_pair(rng, df)
        verdict = causally_related(w1, w2, df)
        if (
            verdict.base_causal
            and verdict.delta_theta is not None
            and abs(verdict.delta_theta - verdict.theta_budget) < 1e-3
        ):
            continue
        compared += 1
        assert verdict.related == curve_oracle(w1, w2, df, n_segments=6, seed=23)
    assert compared > 100


def test_separating_search_latitude_witness():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), state_on_parallel(0.6, 0.2))
    w2 = ProductState(E(2, 0), state_on_parallel(0.1, 0.2))
    witness = separating_element_search(w1, w2, df)
    assert witness is not None
    gap = witness.eval_state(w2) - witness.eval_state(w1)
    assert gap < -1e-6
    # re-certify on a twice finer grid
    sep = math.hypot(2.0, 0.0)
    grid = Grid.covering(w1.event, w2.event, margin=sep + 1.0, n_t=13, n_x=13)
    assert witness.is_certified(grid.refined(2), df)


def test_separating_search_spacelike_witness():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    w2 = ProductState(E(0.3, 1.5), equator(0.0))
    witness = separating_element_search(w1, w2, df)
    assert witness is not None
    assert witness.eval_state(w2) - witness.eval_state(w1) < -1e-6


def test_separating_search_past_directed_witness():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(1.0, 0), equator(0.0))
    w2 = ProductState(E(-1.0, 0), equator(0.0))
    witness = separating_element_search(w1, w2, df)
    assert witness is not None
    assert witness.eval_state(w2) - witness.eval_state(w1) < -1e-6


def test_separating_search_related_pair_finds_nothing():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    w2 = ProductState(E(2, 0), equator(1.5))
    assert separating_element_search(w1, w2, df) is None


def test_separating_search_rejects_small_grid():
    df = FiniteDirac(1.0, 2.0)
    w1 = ProductState(E(0, 0), equator(0.0))
    w2 = ProductState(E(4, 0), equator(0.5))
    tight = Grid(-0.5, 4.5, -0.5, 0.5, 5, 5)
    with pytest.raises(GridTooSmall):
        separating_element_search(w1, w2, df, grid=tight)


def test_certified_atoms_are_monotone_along_the_order():
    df = FiniteDirac(1.0, 2.0)
    rng = np.random.default_rng(24)
    dictionary = default_dictionary(E(0, 0), E(2, 0.5))
    grid = Grid(-8.0, 8.0, -8.0, 8.0, 15, 15)
    certified = []
    for k in range(dictionary.size):
        coeffs = np.zeros(dictionary.size)
        coeffs[k] = 1.0
        element = CausalElement(dictionary, coeffs)
        if element.is_certified(grid, df):
            certified.append(element)
    assert certified  # the constant and tanh-boost scalar atoms at least
    for _ in range(10):
        w1, w2 = related_product_pair(rng, df)
        for element in certified:
            assert element.eval_state(w1) <= element.eval_state(w2) + 1e-9


def test_causal_element_coefficient_validation():
    dictionary = default_dictionary(E(0, 0), E(1, 0))
    with pytest.raises(ValueError):
        CausalElement(dictionary, np.zeros(3))


def test_causal_verdict_requires_reason_iff_not_related():
    from nccausal import CausalVerdict

    with pytest.raises(ValueError):
        CausalVerdict(
            related=True,
            reason=NotRelatedReason.BASE_NOT_CAUSAL,
            base_causal=False,
            latitude_gap=0.0,
            delta_theta=0.0,
            theta_budget=0.0,
        )
    with pytest.raises(ValueError):
        CausalVerdict(
            related=False,
            reason=None,
            base_causal=True,
            latitude_gap=0.0,
            delta_theta=0.0,
            theta_budget=0.0,
        )
