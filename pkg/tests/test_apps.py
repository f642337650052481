import math

import numpy as np
import pytest

from cxsynth.apps import Problem, qaoa, qft, qft_approx, trotter_step
from cxsynth.apps.qft import window_for
from cxsynth.errors import SpecError, UnsupportedError
from cxsynth.topology import all_to_all, grid, heavy_hex, ladder, lnn
from cxsynth.verification import (
    _evolve,
    check_result,
    dense_unitary,
    permutation_matrix,
    reference_qaoa,
    reference_qft,
    reference_trotter,
)

SMALL_GRAPHS = [lnn(2), lnn(3), lnn(5), ladder(4), ladder(6), grid(2, 2), grid(3, 2), heavy_hex(1),
                all_to_all(3), all_to_all(5)]


def _ids(graphs):
    return [g.tag for g in graphs]


def random_problem(n, rng, fields=True, transverse=False):
    J = [[i, j, float(rng.uniform(-1, 1))] for i in range(n) for j in range(i + 1, n)]
    h = [[i, float(rng.uniform(-1, 1))] for i in range(n)] if fields else None
    g = [[i, float(rng.uniform(0.2, 1.5))] for i in range(n)] if transverse else None
    return Problem.from_lists(n, J=J, h=h, g=g)


@pytest.mark.parametrize("graph", SMALL_GRAPHS + [lnn(6)], ids=_ids(SMALL_GRAPHS + [lnn(6)]))
def test_qft_matches_reference(graph):
    result = qft(graph)
    ok, error = check_result(result, reference_qft(graph.n, result.order))
    assert ok, error
    assert result.schedule.replay(result.circuit, result.start)


def test_all_to_all_qft_size():
    assert qft(all_to_all(4)).circuit.cx_count == 9


def test_qft_reports_a_visit_order():
    result = qft(ladder(6))
    assert sorted(result.order) == list(range(6))
    assert sorted(result.permutation) == list(range(6))


def test_window_for_threshold():
    assert window_for(0, 7) == 7
    assert window_for(math.pi / 4, 7) == 3
    assert window_for(math.pi, 7) == 1
    with pytest.raises(SpecError):
        window_for(-0.1, 4)


def test_zero_threshold_is_the_exact_transform():
    assert qft_approx(all_to_all(5), 0).circuit == qft(all_to_all(5)).circuit


def test_large_threshold_drops_every_cx():
    result = qft_approx(all_to_all(5), math.pi)
    assert result.circuit.cx_count == 0


def test_truncated_transform():
    n, window = 5, 3
    result = qft_approx(all_to_all(n), math.pi / 4)
    assert result.circuit.cx_count == 13
    steps = []
    for j in range(n):
        steps.append(("h", (j,), None))
        for r in range(j + 1, min(n, j + window)):
            steps.append(("cp", (r, j), math.pi / 2 ** (r - j)))
    ok, error = check_result(result, _evolve(n, steps))
    assert ok, error


def test_approximate_qft_needs_all_to_all():
    with pytest.raises(UnsupportedError):
        qft_approx(lnn(4), 0.1)


@pytest.mark.parametrize("graph", SMALL_GRAPHS, ids=_ids(SMALL_GRAPHS))
@pytest.mark.parametrize("p", [1, 2])
def test_qaoa_matches_reference(graph, p, rng):
    problem = random_problem(graph.n, rng)
    betas = list(rng.uniform(0, math.pi, p))
    alphas = list(rng.uniform(0, math.pi, p))
    result = qaoa(graph, problem, betas, alphas)
    ok, error = check_result(result, reference_qaoa(problem, betas, alphas))
    assert ok, error


def test_qaoa_with_three_body_terms(rng):
    problem = Problem.from_lists(4, J=[[0, 1, 0.4], [2, 3, -0.9]], M=[[0, 1, 2, 0.5], [1, 2, 3, -0.3]])
    result = qaoa(lnn(4), problem, [0.3], [0.8])
    ok, error = check_result(result, reference_qaoa(problem, [0.3], [0.8]))
    assert ok, error


@pytest.mark.parametrize("n", [3, 4, 6])
def test_qaoa_lnn_cycle_size(n, rng):
    problem = random_problem(n, rng, fields=False)
    result = qaoa(lnn(n), problem, [0.1, 0.2, 0.3], [0.4, 0.5, 0.6])
    assert result.circuit.cx_count == 3 * (n * n - 1)


def test_qaoa_skeleton_does_not_depend_on_angles(rng):
    graph = grid(3, 2)
    problem = random_problem(6, rng)
    first = qaoa(graph, problem, [0.2, 0.9], [0.5, 1.1]).circuit
    second = qaoa(graph, problem, [1.3, -0.4], [2.0, 0.1]).circuit
    assert [g for g in first.gates() if g.is_cx] == [g for g in second.gates() if g.is_cx]


def test_qaoa_rejects_bad_input(rng):
    problem = random_problem(4, rng)
    with pytest.raises(SpecError):
        qaoa(lnn(4), problem, [0.1], [0.1, 0.2])
    with pytest.raises(SpecError):
        qaoa(lnn(5), problem, [0.1], [0.1])


@pytest.mark.parametrize("graph", SMALL_GRAPHS, ids=_ids(SMALL_GRAPHS))
def test_trotter_matches_reference(graph, rng):
    problem = random_problem(graph.n, rng, transverse=True)
    result = trotter_step(graph, problem, 0.37)
    ok, error = check_result(result, reference_trotter(problem, 0.37))
    assert ok, error
    assert result.schedule.replay(result.circuit, result.start)


def test_trotter_keeps_the_two_body_skeleton(rng):
    problem = random_problem(5, rng, transverse=True)
    result = trotter_step(lnn(5), problem, 0.2)
    assert result.circuit.cx_count == 24
    assert result.circuit.cx_depth == 16


def test_zero_time_step_is_a_relabeling(rng):
    problem = random_problem(4, rng, transverse=True)
    result = trotter_step(ladder(4), problem, 0.0)
    ok, _ = check_result(result, np.eye(16))
    assert ok
    assert np.allclose(np.abs(dense_unitary(result.circuit)), permutation_matrix(result.permutation))


def test_trotter_rejects_three_body_terms():
    problem = Problem.from_lists(3, M=[[0, 1, 2, 1.0]])
    with pytest.raises(UnsupportedError):
        trotter_step(lnn(3), problem, 0.1)


@pytest.mark.parametrize("rows", [
    {"J": [[0, 0, 1.0]]},
    {"J": [[0, 5, 1.0]]},
    {"h": [[0]]},
])
def test_problem_validation(rows):
    with pytest.raises(SpecError):
        Problem.from_lists(3, **rows)


@pytest.mark.parametrize("graph", [grid(2, 2), ladder(4), heavy_hex(1)], ids=_ids([grid(2, 2), ladder(4), heavy_hex(1)]))
def test_three_body_qaoa_needs_a_line_or_full_device(graph):
    problem = Problem.from_lists(graph.n, M=[[0, 1, 2, 0.5]])
    with pytest.raises(UnsupportedError, match=graph.family):
        qaoa(graph, problem, [0.3], [0.8])


@pytest.mark.parametrize("rows", [
    {"M": [[0, 1.5, 2, 1.0]]},
    {"h": [[0.5, 1.0]]},
    {"J": [[0, 2.25, 1.0]]},
])
def test_problem_rejects_fractional_indices(rows):
    with pytest.raises(SpecError, match="not an integer"):
        Problem.from_lists(3, **rows)


def test_problem_accepts_integral_floats():
    problem = Problem.from_lists(3, J=[[0.0, 2.0, 1.0]])
    assert problem.J == Problem.from_lists(3, J=[[0, 2, 1.0]]).J


def _bit_reversed_dft(n):
    dim = 2 ** n
    k = np.arange(dim)
    dft = np.exp(2j * np.pi * np.outer(k, k) / dim) / np.sqrt(dim)
    reversal = [int(format(i, f"0{n}b")[::-1], 2) for i in range(dim)]
    return dft[reversal]


@pytest.mark.parametrize("n", range(1, 6))
def test_qft_reference_is_the_bit_reversed_dft(n):
    assert np.allclose(reference_qft(n), _bit_reversed_dft(n))


@pytest.mark.parametrize("n", range(2, 6))
def test_all_to_all_qft_matches_the_dft(n):
    ok, error = check_result(qft(all_to_all(n)), _bit_reversed_dft(n))
    assert ok, error


@pytest.mark.parametrize("seed", [1, 7, 42, 1234, 99991])
@pytest.mark.parametrize("graph", [lnn(4), grid(2, 3), heavy_hex(1), all_to_all(4)],
                         ids=_ids([lnn(4), grid(2, 3), heavy_hex(1), all_to_all(4)]))
def test_qaoa_over_seeds(graph, seed):
    rng = np.random.default_rng(seed)
    problem = random_problem(graph.n, rng)
    betas = list(rng.uniform(0, math.pi, 2))
    alphas = list(rng.uniform(0, math.pi, 2))
    ok, error = check_result(qaoa(graph, problem, betas, alphas), reference_qaoa(problem, betas, alphas))
    assert ok, error


@pytest.mark.parametrize("n", [6, 9, 12])
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_qaoa_lnn_depth_bound(n, p, rng):
    problem = random_problem(n, rng, fields=False)
    result = qaoa(lnn(n), problem, [0.3] * p, [0.7] * p)
    assert result.circuit.cx_depth <= 2 * n * (p + 1) + 3 * p


@pytest.mark.slow
@pytest.mark.parametrize("cols", [4, 6, 8])
@pytest.mark.parametrize("p", [1, 3])
def test_qaoa_grid_depth_bound_for_odd_p(cols, p, rng):
    n = 3 * cols
    problem = random_problem(n, rng, fields=False)
    result = qaoa(grid(3, cols), problem, [0.3] * p, [0.7] * p)
    assert result.circuit.cx_depth <= 3 * n * (p + 1) + 30
