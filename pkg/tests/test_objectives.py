import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcsa.objectives.base import (
    BoxDomain,
    CountingObjective,
    ObjectiveFunction,
    ReferenceOptimum,
    contains,
    evaluate,
    evaluate_batch,
    location_error,
)
from mcsa.objectives.functions import (
    FOXHOLES_A,
    FOXHOLES_C,
    LANGERMAN_A,
    LANGERMAN_C,
    griewank,
    rosenbrock,
    schwefel,
    shekel,
)
from mcsa.objectives.registry import (
    FUNCTION_IDS,
    function_table,
    reference_tolerance,
    registry_get,
)


def test_registry_has_all_table_entries():
    assert len(FUNCTION_IDS) == 41
    assert FUNCTION_IDS[0] == "F0_a" and FUNCTION_IDS[-1] == "F19_b"
    assert len(set(FUNCTION_IDS)) == 41


def test_unknown_id_lists_valid_ids():
    with pytest.raises(ValueError, match="F99.*F0_a"):
        registry_get("F99")


@pytest.mark.parametrize(
    "function_id, dim, low, high",
    [
        ("F0_a", 8, -512, 512),
        ("F0_g", 512, -512, 512),
        ("F1_d", 400, -30, 30),
        ("F8_c", 400, -600, 600),
        ("F12_c", 10, 0, math.pi),
        ("F13_b", 400, -5.12, 5.12),
        ("F18_b", 4, 0, 10),
        ("F19_b", 5, -5, 15),
    ],
)
def test_registry_dimensions_and_domains(function_id, dim, low, high):
    f = registry_get(function_id)
    assert f.id == function_id
    assert f.dim == dim
    assert np.allclose(f.domain.lower, low) and np.allclose(f.domain.upper, high)


def test_six_hump_camel_domain_is_not_a_cube():
    f = registry_get("F16")
    assert np.array_equal(f.domain.lower, [-3.0, -2.0])
    assert np.array_equal(f.domain.upper, [3.0, 2.0])


@pytest.mark.parametrize("function_id", [fid for fid in FUNCTION_IDS if registry_get(fid).reference.location_known])
def test_value_at_listed_minimizers_matches_reference(function_id):
    f = registry_get(function_id)
    tolerance = reference_tolerance(function_id, f.reference.f_star)
    for x_star in f.reference.minimizers:
        assert abs(evaluate(f, x_star) - f.reference.f_star) <= tolerance


@pytest.mark.parametrize(
    "function_id, point, expected, tolerance",
    [
        ("F2", (math.pi, 2.275), 0.397887, 1e-5),
        ("F5", (math.pi, math.pi), -1.0, 1e-12),
        ("F16", (0.0898, -0.7126), -1.0316, 1e-4),
        ("F18_a", (4.0, 4.0, 4.0, 4.0), -10.1532, 1e-3),
        ("F7", (0.0, -1.0), 3.0, 1e-12),
        ("F9", (3.0, 2.0), 0.0, 0.0),
    ],
)
def test_spot_values(function_id, point, expected, tolerance):
    assert evaluate(registry_get(function_id), point) == pytest.approx(expected, abs=tolerance)


def test_dekkers_aarts_uses_wide_tolerance():
    f = registry_get("F4")
    assert reference_tolerance("F4", f.reference.f_star) == 10.0
    assert abs(evaluate(f, (0.0, 14.945)) - f.reference.f_star) <= 10.0


def test_measured_values_at_published_minimizers():
    assert evaluate(registry_get("F4"), (0.0, 14.945)) == pytest.approx(-24776.5183, abs=1e-3)
    assert evaluate(registry_get("F11_a"), (9.6810707, 0.6666515)) == pytest.approx(-1.0809385, abs=1e-6)


def test_michalewicz_location_is_unknown():
    f = registry_get("F12_a")
    assert not f.reference.location_known
    with pytest.raises(ValueError, match="unknown"):
        location_error(f, np.array([2.2, 1.57]))


def test_schwefel_normalized_minimum():
    for dim in [8, 64]:
        f = schwefel(dim)
        assert evaluate(f, np.full(dim, 420.968746)) == pytest.approx(-418.982887, abs=1e-5)


def test_dimension_mismatch_names_both_lengths():
    with pytest.raises(ValueError, match="expected length 8, got 3"):
        evaluate(registry_get("F0_a"), np.zeros(3))


def test_evaluate_batch_matches_single_evaluations():
    f = registry_get("F10_b")
    rng = np.random.default_rng(0)
    points = rng.uniform(f.domain.lower, f.domain.upper, size=(16, f.dim))
    values = evaluate_batch(f, points)
    assert values.shape == (16,)
    assert np.allclose(values, [evaluate(f, x) for x in points], rtol=1e-12, atol=1e-12)


def test_single_precision_batches_stay_single():
    f = griewank(10)
    points = np.full((3, 10), 1.5, dtype=np.float32)
    assert evaluate_batch(f, points).dtype == np.float32
    assert evaluate_batch(f, points.astype(np.float64)).dtype == np.float64


def test_shekel_variants_use_leading_rows():
    x = np.full(4, 4.0)
    values = [evaluate(shekel(m), x) for m in (5, 7, 10)]
    assert values[0] > values[1] > values[2]


def test_contains_is_inclusive():
    domain = BoxDomain.cube(-1.0, 1.0, 2)
    assert contains(domain, np.array([1.0, -1.0]))
    assert not contains(domain, np.array([1.0 + 1e-12, 0.0]))


def test_invalid_domain():
    with pytest.raises(ValueError):
        BoxDomain(np.array([0.0, 1.0]), np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        BoxDomain(np.array([0.0]), np.array([1.0, 2.0]))


def test_minimizer_outside_domain_is_rejected():
    with pytest.raises(ValueError, match="outside"):
        ObjectiveFunction(
            id="bad",
            name="bad",
            domain=BoxDomain.cube(0.0, 1.0, 1),
            batch_eval=lambda X: X[:, 0],
            reference=ReferenceOptimum(0.0, [(2.0,)]),
        )


def test_location_error_relative_and_absolute():
    f = rosenbrock(4)
    assert location_error(f, np.full(4, 1.1)) == pytest.approx(0.1)
    g = griewank(4)
    assert location_error(g, np.array([3.0, 4.0, 0.0, 0.0])) == pytest.approx(5.0)


def test_location_error_uses_nearest_minimizer():
    f = registry_get("F9")
    assert location_error(f, np.array([3.0, 2.0])) == 0.0
    assert location_error(f, np.array([-2.805118, 3.131312])) < 1e-6


@given(st.lists(st.floats(min_value=-512, max_value=512), min_size=8, max_size=8))
def test_schwefel_is_bounded_below_by_its_minimum(x):
    assert evaluate(registry_get("F0_a"), np.array(x)) >= -418.982887 - 1e-6


def test_counting_objective_counts_rows():
    f = registry_get("F14")
    counter = CountingObjective(f)
    counter(np.zeros((5, 4)))
    counter(np.ones((3, 4)))
    assert counter.evaluations == 8


def test_counting_objective_single_precision():
    counter = CountingObjective(registry_get("F14"), np.float32)
    assert counter(np.ones((2, 4))).dtype == np.float32


def test_function_table():
    table = function_table()
    assert list(table.columns) == ["id", "name", "n", "domain", "f_star"]
    assert len(table) == 41
    row = table.set_index("id").loc["F0_c"]
    assert row["n"] == 32 and row["domain"] == "[-512, 512]^32"


def test_constant_table_shapes():
    assert LANGERMAN_A.shape == (5, 10) and LANGERMAN_C.shape == (5,)
    assert FOXHOLES_A.shape == (30, 10) and FOXHOLES_C.shape == (30,)


@pytest.mark.parametrize("dtype", [np.float64, np.float32])
@pytest.mark.parametrize("function_id", FUNCTION_IDS)
def test_no_nan_on_feasible_samples(function_id, dtype):
    f = registry_get(function_id)
    rng = np.random.default_rng(1234)
    points = rng.uniform(f.domain.lower, f.domain.upper, size=(10_000, f.dim))
    # box corners and the centre are feasible too
    points[0], points[1], points[2] = f.domain.lower, f.domain.upper, f.domain.center
    values = evaluate_batch(f, points.astype(dtype))
    assert values.shape == (10_000,)
    assert not np.any(np.isnan(values))
