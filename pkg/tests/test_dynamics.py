import numpy as np
import pytest

from cesaro import (
    CesaroOperator,
    TaylorSeries,
    apply,
    cesaro_mean,
    eigenpair,
    ergodic_limit_projection,
    ergodic_trace,
    frechet_norm,
    geometric_series,
    max_coeff_diff,
    power_apply,
    power_bound_certificate,
    random_series,
    range_preimage,
    zero_series,
)


# --- iterates -----------------------------------------------------------------


def test_single_power_is_plain_application():
    f = TaylorSeries([1.0, 2.0, -1.0])
    assert power_apply(0.4, f, 1) == apply(CesaroOperator(0.4), f)


def test_fixed_point_survives_iteration():
    g0 = geometric_series(0.7, 300)
    assert max_coeff_diff(power_apply(0.7, g0, 25), g0) < 1e-13


def test_eigenfunction_iterates_decay_geometrically():
    g1 = eigenpair(0.5, 1, 128).series
    got = power_apply(0.5, g1, 10)
    want = TaylorSeries(g1.coeffs / 2.0**10)
    assert max_coeff_diff(got, want) < 1e-12


def test_power_apply_requires_positive_count():
    with pytest.raises(ValueError):
        power_apply(0.5, TaylorSeries([1.0]), 0)


# --- ergodic means ---------------------------------------------------------------


def test_mean_at_one_step_is_plain_application():
    f = TaylorSeries([0.5, -2.0, 1.0])
    assert max_coeff_diff(cesaro_mean(0.3, f, 1), apply(CesaroOperator(0.3), f)) == 0.0


def test_mean_of_fixed_point_is_fixed():
    g0 = geometric_series(0.5, 200)
    for n in (1, 7, 64):
        assert max_coeff_diff(cesaro_mean(0.5, g0, n), g0) < 1e-13


def test_mean_of_basis_vector_under_hardy_operator():
    # e_1 iterates to e_1/2^m, so the mean's coefficient 1 is (1 - 2^-n)/n
    f = TaylorSeries([0.0, 1.0])
    for n in (1, 4, 50):
        got = cesaro_mean(0.0, f, n)
        want = (1.0 - 0.5**n) / n
        np.testing.assert_allclose(got.coeffs[1], want, rtol=1e-13)
        assert got.coeffs[0] == 0.0


# --- the limit projection -----------------------------------------------------------


def test_projection_fixes_the_kernel_line():
    g0 = geometric_series(0.6, 100)
    assert max_coeff_diff(ergodic_limit_projection(0.6, g0), g0) < 1e-15


def test_projection_kills_the_range():
    f = TaylorSeries([0.0, 3.0, -2.0, 1.0])
    assert ergodic_limit_projection(0.5, f) == zero_series(3)


def test_projection_of_generic_vector():
    got = ergodic_limit_projection(0.5, TaylorSeries([2.0, 5.0, -1.0]))
    assert got == TaylorSeries([2.0, 1.0, 0.5])


def test_decomposition_is_exact():
    rng = np.random.default_rng(3)
    for t in (0.0, 0.5, 0.9):
        f = random_series(64, rng)
        proj = ergodic_limit_projection(t, f)
        rem = f - proj
        assert rem.coeffs[0] == 0.0
        assert max_coeff_diff(proj + rem, f) <= 1e-15  # 1 ulp of reassembly
        # transversality: projecting the remainder gives exactly zero
        assert ergodic_limit_projection(t, rem) == zero_series(64)


# --- range preimage ---------------------------------------------------------------------


def test_preimage_of_zero_is_zero():
    assert range_preimage(0.5, zero_series(10)) == zero_series(10)


def test_preimage_diagonal_case():
    got = range_preimage(0.0, TaylorSeries([0.0, 1.0]))
    assert got == TaylorSeries([0.0, -2.0])


def test_preimage_round_trip_up_to_kernel():
    rng = np.random.default_rng(7)
    for t in (0.0, 0.3, 0.7):
        p = random_series(128, rng)
        g = apply(CesaroOperator(t), p) - p  # in the range, g(0) = 0 exactly
        f = range_preimage(t, g)
        # residual of (C - I) f = g
        back = apply(CesaroOperator(t), f) - f
        assert max_coeff_diff(back, g) <= 1e-10
        # f differs from p only along the fixed-point line
        drift = f - p
        kernel_part = TaylorSeries(drift.coeffs[0] * geometric_series(t, 128).coeffs)
        assert max_coeff_diff(drift, kernel_part) <= 1e-10


def test_preimage_rejects_nonvanishing_constant_term():
    with pytest.raises(ValueError, match="range"):
        range_preimage(0.5, TaylorSeries([1.0, 2.0]))


# --- traces -----------------------------------------------------------------------------


def test_trace_distances_decay_like_one_over_n():
    rng = np.random.default_rng(11)
    t = 0.5
    for _ in range(5):
        f = random_series(64, rng).padded(256)
        trace = ergodic_trace(t, f, [1, 2, 4, 8, 16, 32, 64, 128, 256, 512], "ksup:2")
        d = np.array(trace.distances)
        assert d[-1] <= 1e-2 * d[0] + 1e-15
        # eventually nonincreasing (allow the first steps to sort themselves out)
        tail = d[2:]
        assert np.all(np.diff(tail) <= 1e-12)
        # the gap shrinks at the 1/n ergodic rate: n * d_n stays bounded
        scaled = np.array(trace.n_values) * d
        assert scaled.max() <= 10.0 * scaled[0] + 1e-12


def test_normalized_iterates_vanish():
    # T^n/n -> 0 in the sup-flavor coefficient norms
    rng = np.random.default_rng(13)
    f = random_series(64, rng)
    norms = [frechet_norm(power_apply(0.5, f, n), 2, "sup") / n for n in (1, 8, 64, 256)]
    assert norms[-1] < 1e-2 * norms[0]


def test_trace_supports_weighted_and_sum_norms():
    f = TaylorSeries([1.0, 0.5]).padded(64)
    for tag in ("k:3", "ksup:2", "gamma:1.0", "unit"):
        trace = ergodic_trace(0.4, f, [1, 4, 16], tag)
        assert trace.norm_tag == tag
        assert all(d >= 0 for d in trace.distances)
        assert trace.distances[-1] <= trace.distances[0] + 1e-12


def test_trace_rejects_bad_checkpoints():
    with pytest.raises(ValueError):
        ergodic_trace(0.5, TaylorSeries([1.0]), [0, 2])
    with pytest.raises(ValueError):
        ergodic_trace(0.5, TaylorSeries([1.0]), [2], "nope:1")


# --- power boundedness certificates ------------------------------------------------------------


def test_certificate_reports_roundoff_level_excess():
    report = power_bound_certificate(0.5, k=2, trials=10, n_max=50, seed=1)
    assert report.sup_norm_excess <= 1e-12
    assert report.weighted_excess[1.0] <= 1e-3


def test_certificate_with_several_gammas():
    report = power_bound_certificate(0.9, k=3, trials=5, n_max=25, gammas=(1.0, 2.0), seed=2)
    for gamma, excess in report.weighted_excess.items():
        assert excess <= 1e-3, f"gamma={gamma}"


def test_fixed_point_norms_are_constant_along_iterates():
    t = 0.5
    g0 = geometric_series(t, 200)
    base = frechet_norm(g0, 2, "sup")
    for n in (1, 5, 20):
        iterate = power_apply(t, g0, n)
        np.testing.assert_allclose(frechet_norm(iterate, 2, "sup"), base, rtol=1e-13)


def test_constant_witness_weighted_norms_never_grow():
    # gamma = 1: every iterate's weighted estimate stays within grid slack of
    # the previous one (the true operator norm is exactly 1)
    from cesaro import Weight, constant_one, weighted_sup_norm

    t = 0.5
    v = Weight.standard(1.0)
    f = constant_one(256)
    values = []
    current = f
    for _ in range(50):
        current = apply(CesaroOperator(t), current)
        values.append(weighted_sup_norm(current, v, radii=32, angles=64).value)
    diffs = np.diff(np.array(values))
    assert np.all(diffs <= 1e-3)


def test_certificate_rejects_bad_parameters():
    with pytest.raises(ValueError):
        power_bound_certificate(0.5, k=1)
    with pytest.raises(ValueError):
        power_bound_certificate(0.5, gammas=(0.5,))
