from fractions import Fraction
from math import comb

import pytest

from cxsynth.circuit import run_and_collect
from cxsynth.errors import NoClosedFormError, SpecError
from cxsynth.generators import GeneratorSpec, build, expected_metrics
from cxsynth.generators import lnn
from cxsynth.labels import Label, LabelState, k_body_labels, special_labels, up_to_k_body_labels
from cxsynth.metrics import metrics
from cxsynth.verification import connectivity_check, generator_check
from cxsynth.topology import lnn as lnn_graph

EXACT_KINDS = ["ptc", "cxc", "cxc_mod", "swc", "ptn", "ptc_mod", "ptn_mod", "ptn3", "ptn4", "cl", "g2", "g3",
               "clean_special_g4"]


def _sizes(kind, n_max):
    return [n for n in range(lnn.MIN_QUBITS[kind], n_max + 1)]


@pytest.mark.parametrize("kind", EXACT_KINDS)
def test_size_and_depth_match_closed_forms(kind):
    for n in _sizes(kind, 16):
        if kind in ("ptn3", "ptn4") and n < 5:
            continue
        if kind == "cl" and n < 4:
            continue
        spec = GeneratorSpec(kind, n)
        circuit = build(spec)
        want = expected_metrics(spec)
        assert (circuit.cx_count, circuit.cx_depth) == (want.cnot_count, want.cnot_depth), (kind, n)


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["ptn", "g2", "ptn_mod", "ptn3", "ptn4", "cl", "g3", "clean_special_g4"])
def test_closed_forms_up_to_64(kind):
    for n in range(max(5, lnn.MIN_QUBITS[kind]), 65):
        spec = GeneratorSpec(kind, n)
        circuit = build(spec)
        want = expected_metrics(spec)
        assert (circuit.cx_count, circuit.cx_depth) == (want.cnot_count, want.cnot_depth), (kind, n)


def test_known_values():
    assert build(GeneratorSpec("g2", 8)).cx_count == 63
    assert (build(GeneratorSpec("cl", 4)).cx_count, build(GeneratorSpec("cl", 5)).cx_count) == (9, 20)
    g4 = expected_metrics(GeneratorSpec("clean_special_g4", 5))
    assert (g4.cnot_count, g4.cnot_depth) == (53, 44)
    g3 = expected_metrics(GeneratorSpec("g3", 4))
    assert (g3.cnot_count, g3.cnot_depth) == (20, 18)


def test_ptc_pairs_the_first_label_with_all_others():
    n = 6
    final, collected = _run(lnn.ptc(n))
    want = {Label.from_indices([0, j]) for j in range(1, n)}
    assert want <= collected
    assert final.z[-1] == Label.single(0)
    assert final.z[0] == Label.from_indices([0, 1])


def test_ptc_against_all_two_body_labels():
    certificate = generator_check(lnn.ptc(6), LabelState.single_body(6), k_body_labels(6, 2))
    assert certificate.missing == frozenset(l for l in k_body_labels(6, 2) if 0 not in l)
    assert not certificate.clean


@pytest.mark.parametrize("n", range(2, 12))
def test_ptn_generates_all_pairs(n):
    certificate = generator_check(lnn.ptn(n), LabelState.single_body(n), k_body_labels(n, 2))
    assert certificate.missing == frozenset()


@pytest.mark.parametrize("n", range(2, 21))
def test_g2_is_clean_and_reverses(n):
    final, collected = _run(lnn.g2(n))
    assert k_body_labels(n, 2) <= collected
    assert final.permutation() == tuple(range(n - 1, -1, -1))


@pytest.mark.parametrize("n", range(3, 21))
def test_g3_output_order(n):
    final, collected = _run(lnn.g3(n))
    assert k_body_labels(n, 3) <= collected
    odd = list(range(0, n, 2))
    even = list(range(1, n, 2))
    assert final.permutation() == tuple(odd + even[::-1])


@pytest.mark.parametrize("n", range(4, 11))
def test_clean_special_g4_covers_special_family(n):
    circuit = lnn.clean_special_g4(n)
    certificate = generator_check(circuit, LabelState.single_body(n), special_labels(n, 4))
    assert certificate.missing == frozenset()
    assert certificate.clean


@pytest.mark.parametrize("k, n_max", [(2, 10), (3, 10), (4, 8), (5, 7)])
def test_gk_covers_all_labels_up_to_k_bodies(k, n_max):
    for n in range(k, n_max + 1):
        circuit = lnn.gk(n, k)
        certificate = generator_check(circuit, LabelState.single_body(n), up_to_k_body_labels(n, k))
        assert certificate.missing == frozenset(), (k, n)
        assert certificate.clean
        assert connectivity_check(circuit, lnn_graph(n)).connectivity_ok


def test_average_count_is_at_least_one():
    for n in range(3, 12):
        for k in (2, 3):
            circuit = lnn.gk(n, k)
            assert metrics(circuit, comb(n, k)).mu_n >= 1


def test_g3_average_count_is_exact():
    for n in range(3, 20):
        m = expected_metrics(GeneratorSpec("g3", n))
        assert m.mu_n == Fraction(2 * (n + 1), n - 2)


def test_placed_range():
    circuit = build(GeneratorSpec("ptc", 6, p=2, q=4))
    assert circuit.n == 6
    assert circuit.cx_count == 4
    assert all(2 <= q <= 4 for g in circuit.gates() for q in g.qubits)


@pytest.mark.parametrize("spec", [
    GeneratorSpec("nope", 4),
    GeneratorSpec("ptn4", 3),
    GeneratorSpec("gk", 3, k=4),
    GeneratorSpec("clean_special_gk", 6, k=3),
    GeneratorSpec("ptc", 4, p=2, q=5),
])
def test_invalid_specs(spec):
    with pytest.raises(SpecError):
        build(spec)


@pytest.mark.parametrize("kind, k", [("gk", 4), ("gk", 5), ("clean_special_gk", 5)])
def test_no_closed_form_for_general_k(kind, k):
    with pytest.raises(NoClosedFormError) as info:
        expected_metrics(GeneratorSpec(kind, 8, k=k))
    assert info.value.detail


def _run(circuit):
    return run_and_collect(circuit, LabelState.single_body(circuit.n))


@pytest.mark.slow
@pytest.mark.parametrize("k", [3, 4, 5])
def test_gk_lower_bodies_up_to_ten_qubits(k):
    for n in range(k, 11):
        _, collected = _run(lnn.gk(n, k))
        assert up_to_k_body_labels(n, k) <= collected, (k, n)


def test_gk_starts_with_the_lower_generator():
    lower = lnn.gk(6, 3)
    circuit = lnn.gk(6, 4)
    assert circuit.cx_count > lower.cx_count
    assert circuit.moments[:lower.depth] == lower.moments


@pytest.mark.parametrize("kind", ["ptc", "cxc", "cxc_mod", "swc"])
def test_single_qubit_chains_have_empty_metrics(kind):
    m = expected_metrics(GeneratorSpec(kind, 1))
    assert (m.cnot_count, m.cnot_depth) == (0, 0)
    assert m.mu_n is None
    assert lnn.target_size(kind, 1) in (0, None)
