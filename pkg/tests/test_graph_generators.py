from fractions import Fraction

import pytest

from cxsynth.circuit import run_and_collect, schedule
from cxsynth.errors import HgpError, UnsupportedError
from cxsynth.generators.graph import (
    _alternating_specials,
    decode_gates,
    g2_graph,
    g3_graph,
    gk_graph,
    initializer,
    long_range_cx,
    network_plan,
    ptc_graph,
    ptn_graph,
    special_order,
)
from cxsynth.labels import Label, LabelState, k_body_labels
from cxsynth.sweeps import check_asymptote, sweep
from cxsynth.topology import Hgp, all_to_all, builtin_hgp, custom, grid, heavy_hex, ladder, lnn
from cxsynth.verification import certify, connectivity_check


def _single(n):
    return LabelState.single_body(n)


@pytest.mark.parametrize("cols", range(2, 7))
def test_g2_on_three_row_grids(cols):
    graph = grid(3, cols)
    certificate = certify(g2_graph(graph), graph, k_body_labels(graph.n, 2))
    assert certificate.ok
    assert certificate.clean


@pytest.mark.parametrize("cells", range(1, 6))
def test_g2_on_heavy_hex_strips(cells):
    graph = heavy_hex(cells)
    certificate = certify(g2_graph(graph), graph, k_body_labels(graph.n, 2))
    assert certificate.ok
    assert certificate.clean


@pytest.mark.parametrize("n", range(2, 17, 2))
def test_g2_on_ladders(n):
    graph = ladder(n)
    certificate = certify(g2_graph(graph), graph, k_body_labels(n, 2))
    assert certificate.ok
    assert certificate.clean


@pytest.mark.slow
@pytest.mark.parametrize("graph", [grid(3, c) for c in range(7, 13)] + [heavy_hex(c) for c in range(6, 10)]
                         + [ladder(n) for n in range(18, 41, 2)])
def test_g2_on_larger_devices(graph):
    certificate = certify(g2_graph(graph), graph, k_body_labels(graph.n, 2))
    assert certificate.ok and certificate.clean


def test_ladder_hand_traced_state():
    graph = ladder(4)
    final, collected = run_and_collect(ptn_graph(graph), _single(4))
    assert k_body_labels(4, 2) <= collected
    assert final.z[1] == Label.single(0)
    assert network_plan(graph).retire == (1, 3, 0, 2)


def test_ptc_graph_pairs_the_head_with_everyone():
    graph = grid(3, 3)
    hgp = builtin_hgp(graph)
    head = hgp.spine[0]
    _, collected = run_and_collect(ptc_graph(graph), _single(graph.n))
    want = {Label.from_indices([head, q]) for q in range(graph.n) if q != head}
    assert want <= collected
    assert connectivity_check(ptc_graph(graph), graph).connectivity_ok


def test_ptc_graph_start_must_be_a_spine_end():
    graph = grid(3, 3)
    spine = builtin_hgp(graph).spine
    assert ptc_graph(graph, start_node=spine[-1]).cx_count == ptc_graph(graph).cx_count
    with pytest.raises(HgpError):
        ptc_graph(graph, start_node=spine[1])


def test_initializer_multiplies_the_special_label_in():
    graph = grid(3, 3)
    final, _ = run_and_collect(initializer(graph, special_node=4), _single(9))
    assert final.z[4] == Label.single(4)
    for q in range(9):
        if q != 4:
            assert final.z[q] == Label.from_indices([q, 4])
    assert connectivity_check(initializer(graph, special_node=4), graph).connectivity_ok


def test_initializer_rejects_unknown_special():
    with pytest.raises(HgpError):
        initializer(lnn(4), special_node=7)


def test_long_range_cx_restores_the_path():
    graph = lnn(4)
    final, _ = run_and_collect(schedule(4, long_range_cx(graph, 0, 3)), _single(4))
    assert final.z == (Label.single(0), Label.single(1), Label.single(2), Label.from_indices([0, 3]))


def test_decode_uses_adjacent_cx_when_possible():
    assert decode_gates(lnn(3), (0, 1, 2)) == [
        *decode_gates(lnn(3), (0, 1)),
        *decode_gates(lnn(3), (1, 2)),
    ]
    assert len(decode_gates(lnn(3), (0, 1, 2))) == 2


def test_special_order_walks_cells():
    hgp = Hgp.from_mapping([0, 1, 2], {1: [3]})
    assert special_order(hgp) == [0, 3, 1, 2]


@pytest.mark.parametrize("graph", [heavy_hex(1), heavy_hex(2), grid(3, 2), grid(3, 3), ladder(6)])
def test_g3_graph_covers_three_body_labels(graph):
    certificate = certify(g3_graph(graph), graph, k_body_labels(graph.n, 3))
    assert certificate.ok
    assert certificate.clean


def test_custom_graph_with_user_hgp():
    graph = custom(4, [(0, 1), (1, 2), (1, 3)])
    hgp = Hgp.from_mapping([0, 1, 2], {1: [3]})
    certificate = certify(g2_graph(graph, hgp), graph, k_body_labels(4, 2))
    assert certificate.ok and certificate.clean


def test_builders_delegate_for_lnn_and_all_to_all():
    assert g2_graph(lnn(6)).cx_count == 35
    assert gk_graph(all_to_all(5), 2).cx_count < gk_graph(lnn(5), 2).cx_count
    with pytest.raises(UnsupportedError):
        network_plan(all_to_all(4))
    with pytest.raises(UnsupportedError):
        gk_graph(grid(3, 2), 4)


@pytest.mark.parametrize("cols", range(2, 9))
def test_three_row_grid_g2_count(cols):
    n = 3 * cols
    assert g2_graph(grid(3, cols)).cx_count == (2 * n * n + 2 * n) // 3 - 2


def test_three_row_grid_cells_retire_around_their_spine_node():
    graph = grid(3, 4)
    spine = set(builtin_hgp(graph).spine)
    retire = network_plan(graph).retire
    assert [q in spine for q in retire] == [False, True, False] * 4
    assert all(graph.has_edge(a, b) for a, b in zip(retire, retire[1:]))
    assert len(decode_gates(graph, retire)) == graph.n - 1


def test_chains_reach_a_slot_past_a_retired_spine_node():
    graph = grid(3, 3)
    plan = network_plan(graph)
    detours = [c for c in plan.chains if c.path[-1] not in builtin_hgp(graph).spine]
    assert detours
    for chain in detours:
        assert connectivity_check(schedule(graph.n, [g for step in chain.steps() for g in step]), graph).connectivity_ok


def test_grid_average_count_at_sixty_qubits():
    rows = sweep("grid", 2, [60])
    assert abs(rows[0].mu - Fraction(4, 3)) / Fraction(4, 3) < Fraction(5, 100)


@pytest.mark.parametrize("family, n_values", [("grid", range(6, 40, 3)), ("heavy_hex", range(4, 38, 3))])
def test_average_count_approaches_the_family_limit(family, n_values):
    report = check_asymptote(sweep(family, 2, n_values))
    assert all(entry["monotone"] for entry in report)
    assert report[-1]["gap"] < report[0]["gap"]


@pytest.mark.parametrize("n", range(4, 21, 2))
def test_ladder_ptn_depth(n):
    assert ptn_graph(ladder(n)).cx_depth == 3 * n - 5


def test_g3_rounds_alternate_between_spine_ends():
    hgp = builtin_hgp(grid(3, 3))
    rounds = list(_alternating_specials(hgp))
    assert [side for _, side in rounds] == [0, 1] * 4 + [0]
    assert sorted(special for special, _ in rounds) == list(range(9))
    assert rounds[0][0] in special_order(hgp)[:2]
    assert rounds[1][0] in special_order(hgp)[-3:-1]


@pytest.mark.slow
def test_three_row_grid_g3_depth():
    graph = grid(3, 16)
    assert g3_graph(graph).cx_depth / graph.n ** 2 < 2.5
