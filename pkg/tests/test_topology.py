import pytest

from cxsynth.errors import HgpError, SpecError
from cxsynth.topology import (
    Hgp,
    all_to_all,
    builtin_hgp,
    custom,
    grid,
    heavy_hex,
    ladder,
    lnn,
    mirror_map,
    parse_graph_spec,
    validate_hgp,
)


def test_family_sizes():
    assert len(lnn(5).edges) == 4
    assert len(all_to_all(5).edges) == 10
    assert len(ladder(6).edges) == 3 + 2 + 2
    assert len(grid(3, 4).edges) == 3 * 3 + 2 * 4
    hex2 = heavy_hex(2)
    assert hex2.n == 7
    assert len(hex2.edges) == 4 + 2


@pytest.mark.parametrize("text, family, n", [
    ("lnn:8", "lnn", 8),
    ("ladder:6", "ladder", 6),
    ("grid:3x4", "grid", 12),
    ("heavy-hex:2", "heavy_hex", 7),
    ("all-to-all:5", "all_to_all", 5),
])
def test_parse_graph_spec(text, family, n):
    graph = parse_graph_spec(text)
    assert graph.family == family
    assert graph.n == n
    assert graph.tag == text


@pytest.mark.parametrize("text", ["grid:1x5", "ladder:5", "lnn:0", "torus:4", "lnn", "lnn:x"])
def test_invalid_graph_specs(text):
    with pytest.raises(SpecError):
        parse_graph_spec(text)


def test_custom_graph_must_be_connected():
    with pytest.raises(SpecError):
        custom(4, [(0, 1), (2, 3)])


@pytest.mark.parametrize("graph", [lnn(6), ladder(8), grid(3, 4), grid(4, 3), grid(2, 5), heavy_hex(3), all_to_all(5)])
def test_builtin_hgp_is_valid(graph):
    certificate = validate_hgp(graph, builtin_hgp(graph))
    assert certificate.covered == graph.n


@pytest.mark.parametrize("graph", [lnn(5), ladder(6), grid(3, 3), heavy_hex(2), all_to_all(4)])
def test_mirror_map_is_an_automorphism(graph):
    mapping = mirror_map(graph)
    assert sorted(mapping) == list(range(graph.n))
    for i, j in graph.edges:
        assert graph.has_edge(mapping[i], mapping[j])


def test_custom_graph_has_no_mirror():
    assert mirror_map(custom(3, [(0, 1), (1, 2)])) is None


def test_hgp_violations_are_named():
    graph = lnn(4)
    with pytest.raises(HgpError, match="path violation"):
        validate_hgp(graph, Hgp.from_mapping([0, 2], {}))
    with pytest.raises(HgpError, match="adjacency violation"):
        validate_hgp(graph, Hgp.from_mapping([1, 2], {1: [3], 2: [0]}))
    with pytest.raises(HgpError, match="does not cover"):
        validate_hgp(graph, Hgp.from_mapping([1, 2], {1: [0]}))


def test_custom_graph_needs_explicit_hgp():
    with pytest.raises(HgpError):
        builtin_hgp(custom(3, [(0, 1), (1, 2)]))
