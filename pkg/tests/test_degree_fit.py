from __future__ import annotations

import math
import random

import pytest

from gridtopo.degree_fit import (
    Ccdf,
    build_ccdf,
    ccdf_to_csv,
    compare_fits,
    fit_model,
    fit_result_from_json,
    fit_result_to_json,
    preferred_model,
)

import properties
from oracles import tail_probability


def test_build_ccdf_direct_count():
    # degrees {1, 1, 2}
    ccdf = build_ccdf([0, 2, 1])
    assert ccdf.points == ((1, 1.0), (2, pytest.approx(1 / 3)))


def test_build_ccdf_single_degree():
    ccdf = build_ccdf([0, 0, 0, 5])
    assert ccdf.points == ((3, 1.0),)


def test_build_ccdf_excludes_isolated_nodes():
    ccdf = build_ccdf([7, 2, 2])
    assert ccdf.points == ((1, 1.0), (2, 0.5))


def test_build_ccdf_all_isolated():
    with pytest.raises(ValueError, match="isolated"):
        build_ccdf([4])


def test_build_ccdf_matches_tail_count_oracle():
    rng = random.Random(88)
    for _ in range(20):
        degrees = [rng.randrange(0, 12) for _ in range(rng.randrange(4, 60))]
        if not any(d >= 1 for d in degrees):
            continue
        histogram = [0] * (max(degrees) + 1)
        for d in degrees:
            histogram[d] += 1
        ccdf = build_ccdf(histogram)
        for k, p in ccdf.points:
            assert p == pytest.approx(tail_probability(degrees, k), rel=1e-15)


def test_fit_recovers_exponential_scale():
    points = tuple((k, math.exp(-k / 2.5)) for k in range(1, 11))
    fit = fit_model(Ccdf(points), "exponential")
    assert fit.model == "exponential"
    assert fit.gamma_or_kappa == pytest.approx(2.5, abs=1e-6)
    assert fit.a == pytest.approx(1.0, abs=1e-6)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)


def test_fit_recovers_power_law_exponent():
    points = tuple((k, float(k) ** -2.0) for k in range(1, 11))
    fit = fit_model(Ccdf(points), "power_law")
    assert fit.gamma_or_kappa == pytest.approx(2.0, abs=1e-6)
    assert fit.a == pytest.approx(1.0, abs=1e-6)


def test_fit_rejects_insufficient_points():
    with pytest.raises(ValueError, match="insufficient"):
        fit_model(Ccdf(((1, 1.0), (2, 0.5))), "power_law")


def test_fit_rejects_unknown_model_and_bad_points():
    points = tuple((k, math.exp(-k / 2.0)) for k in range(1, 6))
    with pytest.raises(ValueError, match="unknown model"):
        fit_model(Ccdf(points), "gaussian")
    with pytest.raises(ValueError, match="duplicate"):
        fit_model(Ccdf(((1, 1.0), (1, 0.5), (2, 0.2))), "power_law")
    with pytest.raises(ValueError):
        fit_model(Ccdf(((1, 1.0), (2, 0.5), (3, -0.1))), "power_law")


def test_fit_handles_noisy_data():
    rng = random.Random(5)
    points = tuple((k, 0.8 * math.exp(-k / 3.0) * (1 + rng.uniform(-0.05, 0.05))) for k in range(1, 15))
    fit = fit_model(Ccdf(points), "exponential")
    assert 2.0 < fit.gamma_or_kappa < 4.0
    assert fit.r_squared > 0.95


def test_compare_prefers_generating_family():
    exp_points = tuple((k, round(math.exp(-k / 2.5), 4)) for k in range(1, 11))
    assert compare_fits(Ccdf(exp_points)).preferred == "exponential"
    pow_points = tuple((k, float(k) ** -2.0) for k in range(1, 11))
    assert compare_fits(Ccdf(pow_points)).preferred == "power_law"


def test_preference_rule_reports_ties_explicitly():
    assert preferred_model(0.25, 0.5) == "power_law"
    assert preferred_model(0.5, 0.25) == "exponential"
    assert preferred_model(0.25, 0.25) == "tie"


def test_compare_consistency_with_sse():
    points = tuple((k, math.exp(-k / 2.5)) for k in range(1, 11))
    comparison = compare_fits(Ccdf(points))
    assert (comparison.preferred == "power_law") == (
        comparison.power_law.sse < comparison.exponential.sse
    )


def test_tail_residual_table_covers_top_three_degrees():
    points = tuple((k, math.exp(-k / 2.5)) for k in range(1, 11))
    comparison = compare_fits(Ccdf(points))
    assert [t.degree for t in comparison.tail_residuals] == [10, 9, 8]
    for t in comparison.tail_residuals:
        assert abs(t.exponential_residual) < 1e-8  # generated from this model


def test_fit_result_json_round_trip():
    points = tuple((k, math.exp(-k / 2.5)) for k in range(1, 11))
    fit = fit_model(Ccdf(points), "exponential")
    assert fit_result_from_json(fit_result_to_json(fit)) == fit


def test_ccdf_csv_export():
    text = ccdf_to_csv(Ccdf(((2, 0.5), (1, 1.0))))
    assert text.splitlines() == ["k,p", "1,1.0", "2,0.5"]


def test_invariant_ccdf_shape_and_reconstruction():
    properties.check_ccdf_shape_and_reconstruction()


def test_invariant_exact_recovery():
    properties.check_fit_exact_recovery()


def test_invariant_order_invariance():
    properties.check_fit_order_invariance()


def test_invariant_directional_preference():
    properties.check_directional_fit_preference()
