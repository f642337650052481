import math
from fractions import Fraction

import pytest

from cxsynth.circuit import Circuit
from cxsynth.errors import NoiseParamError, SpecError
from cxsynth.metrics import metrics
from cxsynth.noise import (
    NoiseParams,
    best_design,
    circuit_fidelity,
    crossover_exponent,
    design_metrics,
    fidelity_from_counts,
    idle_fidelity,
    log_fidelity_ratio,
    process_fidelity,
)


@pytest.mark.parametrize("n, want", [(2, Fraction(22, 3)), (12, Fraction(117, 8)), (None, Fraction(19))])
def test_ladder_grid_crossover(n, want):
    assert crossover_exponent(n, "ladder", "grid") == want


def test_equal_leading_counts_have_no_limit():
    with pytest.raises(SpecError):
        crossover_exponent(None, "lnn", "lnn")


def test_design_metrics():
    assert design_metrics("lnn", 10) == (100, 32)
    assert design_metrics("grid", 3) == (8, Fraction(37, 3))
    with pytest.raises(SpecError):
        design_metrics("torus", 4)


def test_idle_fidelity_limits():
    assert idle_fidelity(1e-4, 1e-4, 0.0) == pytest.approx(1.0)
    assert idle_fidelity(1e-4, 1e-4, 1e3) == pytest.approx(0.5)
    with pytest.raises(NoiseParamError):
        idle_fidelity(0, 1e-4, 1e-7)


def test_params_are_validated():
    with pytest.raises(NoiseParamError):
        NoiseParams(1.2, 0.99)
    with pytest.raises(NoiseParamError):
        NoiseParams(0.99, 0.0)
    params = NoiseParams.from_times(0.99, 1e-4, 1e-4, 0.0)
    assert params.f_idle == pytest.approx(1.0)
    assert params.physical


def test_fidelity_from_counts():
    params = NoiseParams(0.9, 0.99)
    assert fidelity_from_counts(2, 2, 3, params) == pytest.approx(0.9 ** 2 * 0.99 ** 2)
    with pytest.raises(NoiseParamError):
        fidelity_from_counts(3, 1, 3, params)


def test_empty_circuit_is_perfect():
    m = metrics(Circuit.empty(4), 1)
    assert circuit_fidelity(m, 4, NoiseParams(0.9, 0.9)) == 1.0


def test_log_ratio_matches_the_fidelities():
    params = NoiseParams(0.995, 0.9999)
    n = 12
    ratio = log_fidelity_ratio(n, "grid", "ladder", params)
    fid = {}
    for family in ("grid", "ladder"):
        count, depth = design_metrics(family, n)
        fid[family] = fidelity_from_counts(float(count), float(depth), n, params)
    assert ratio == pytest.approx(math.log(fid["grid"] / fid["ladder"]))
    a, b = math.log(params.f_2q), math.log(params.f_idle)
    assert ratio / n == pytest.approx(-n * (a - 19 * b) / 12 - (2 * a - 3 * b) / 6)


def test_best_design_without_idle_noise_minimises_count():
    ranking = best_design(12, NoiseParams(0.99, 1.0))
    assert ranking.best == "grid"
    assert [f for f, _ in ranking.ranking][-1] == "heavy_hex"
    assert ranking.to_dict()["crossovers"]["ladder/grid"] == "117/8"


def test_best_design_without_gate_noise_minimises_idling():
    assert best_design(12, NoiseParams(1.0, 0.99)).best == "ladder"


@pytest.mark.parametrize("probs, want", [([1, 1], 1.0), ([0, 0], 0.0), ([1, 0], 0.0), ([1, 1, 1, 1], 1.0)])
def test_process_fidelity(probs, want):
    assert process_fidelity(probs) == pytest.approx(want)


@pytest.mark.parametrize("probs", [[0.5], [0.5, 1.5]])
def test_process_fidelity_rejects_bad_input(probs):
    with pytest.raises(NoiseParamError):
        process_fidelity(probs)


@pytest.mark.parametrize("count, depth, n", [(35, 20, 6), (63, 28, 8), (0, 0, 4)])
def test_fidelity_grows_with_both_parameters(count, depth, n):
    levels = [0.9, 0.95, 0.99, 0.999, 1.0]
    for f_idle in levels:
        by_gate = [fidelity_from_counts(count, depth, n, NoiseParams(f, f_idle)) for f in levels]
        assert by_gate == sorted(by_gate)
    for f_2q in levels:
        by_idle = [fidelity_from_counts(count, depth, n, NoiseParams(f_2q, f)) for f in levels]
        assert by_idle == sorted(by_idle)
