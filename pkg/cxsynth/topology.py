"""Device connectivity graphs, the built-in families and Hamiltonian grid paths.

Canonical node numbering per family:

* ``lnn(n)``: 0..n-1 along the line.
* ``ladder(n)``: n = 2m; rail A is 0..m-1, rail B is m..2m-1, rungs (i, m+i).
* ``grid(r, c)``: node ``row * c + col``.
* ``heavy_hex(cells)``: spine line 0..2*cells, then one pendant per odd spine
  position j, numbered 2*cells+1+(j-1)//2. n = 3*cells + 1.
* ``all_to_all(n)``: 0..n-1.
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from cxsynth.errors import HgpError, SpecError

logger = logging.getLogger(__name__)

FAMILIES = {"lnn", "ladder", "grid", "heavy_hex", "all_to_all", "custom"}


@dataclass(frozen=True)
class Hgp:
    spine: tuple
    neighbors: tuple = ()  # ((spine_node, (nb, ...)), ...) in spine order

    @classmethod
    def from_mapping(cls, spine, neighbors):
        spine = tuple(spine)
        lookup = {int(k): tuple(v) for k, v in dict(neighbors).items()}
        return cls(spine, tuple((s, lookup[s]) for s in spine if lookup.get(s)))

    def neighbors_of(self, node):
        for s, nbs in self.neighbors:
            if s == node:
                return nbs
        return ()

    def cells(self):
        return [(s, self.neighbors_of(s)) for s in self.spine]

    def owner(self):
        """Map every qubit to the spine node of its cell."""
        out = {s: s for s in self.spine}
        for s, nbs in self.neighbors:
            for nb in nbs:
                out[nb] = s
        return out

    def to_dict(self):
        return {"spine": list(self.spine), "neighbors": {str(s): list(nbs) for s, nbs in self.neighbors}}


@dataclass(frozen=True)
class HgpCertificate:
    spine_size: int
    neighbor_count: int
    covered: int


@dataclass(frozen=True)
class ConnectivityGraph:
    n: int
    edges: frozenset
    family: str = "custom"
    params: tuple = ()
    hgp: Hgp = field(default=None, compare=False)

    def __post_init__(self):
        norm = set()
        for i, j in self.edges:
            if i == j:
                raise SpecError(f"self-loop on qubit {i}")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise SpecError(f"edge ({i}, {j}) outside 0..{self.n - 1}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "edges", frozenset(norm))
        if self.family not in FAMILIES:
            raise SpecError(f"unknown family {self.family!r}")
        if self.n < 1:
            raise SpecError("graph needs at least one qubit")
        if self.n > 1 and not nx.is_connected(self.nx):
            raise SpecError("connectivity graph must be connected")

    @cached_property
    def nx(self):
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(sorted(self.edges))
        return g

    def has_edge(self, i, j):
        return (min(i, j), max(i, j)) in self.edges

    @property
    def tag(self):
        if self.family == "grid":
            return f"grid:{self.params[0]}x{self.params[1]}"
        if self.family == "heavy_hex":
            return f"heavy-hex:{self.params[0]}"
        return f"{self.family.replace('_', '-')}:{self.n}"

    def to_dict(self):
        body = {"n": self.n, "edges": [list(e) for e in sorted(self.edges)], "family": self.family}
        if self.hgp is not None:
            body["hgp"] = self.hgp.to_dict()
        return body


# ── Families ──────────────────────────────────────────────────────────────────

def lnn(n):
    return ConnectivityGraph(n, frozenset((i, i + 1) for i in range(n - 1)), "lnn", (n,))


def all_to_all(n):
    return ConnectivityGraph(
        n, frozenset((i, j) for i in range(n) for j in range(i + 1, n)), "all_to_all", (n,)
    )


def ladder(n):
    if n < 2 or n % 2:
        raise SpecError(f"ladder needs an even qubit count >= 2, got {n}")
    m = n // 2
    edges = {(i, m + i) for i in range(m)}
    edges |= {(i, i + 1) for i in range(m - 1)}
    edges |= {(m + i, m + i + 1) for i in range(m - 1)}
    return ConnectivityGraph(n, frozenset(edges), "ladder", (n,))


def grid(rows, cols):
    if rows < 2 or cols < 2:
        raise SpecError(f"grid needs r >= 2 and c >= 2, got {rows}x{cols}")
    edges = set()
    for r in range(rows):
        for c in range(cols):
            node = r * cols + c
            if c + 1 < cols:
                edges.add((node, node + 1))
            if r + 1 < rows:
                edges.add((node, node + cols))
    return ConnectivityGraph(rows * cols, frozenset(edges), "grid", (rows, cols))


def heavy_hex(cells):
    if cells < 1:
        raise SpecError(f"heavy_hex needs cells >= 1, got {cells}")
    length = 2 * cells + 1
    edges = {(j, j + 1) for j in range(length - 1)}
    for j in range(1, length - 1, 2):
        edges.add((j, length + (j - 1) // 2))
    return ConnectivityGraph(length + cells, frozenset(edges), "heavy_hex", (cells,))


def custom(n, edges, hgp=None):
    return ConnectivityGraph(n, frozenset(tuple(e) for e in edges), "custom", (), hgp)


_BUILDERS = {
    "lnn": lnn,
    "all_to_all": all_to_all,
    "ladder": ladder,
    "grid": grid,
    "heavy_hex": heavy_hex,
}


def build_family(tag, *params):
    tag = tag.replace("-", "_")
    if tag not in _BUILDERS:
        raise SpecError(f"unknown family {tag!r}")
    try:
        params = [int(p) for p in params]
    except (TypeError, ValueError):
        raise SpecError(f"family parameters must be integers, got {params}")
    if tag != "grid" and len(params) != 1:
        raise SpecError(f"{tag} takes one parameter")
    if tag == "grid" and len(params) != 2:
        raise SpecError("grid takes rows and columns")
    if tag in ("lnn", "all_to_all") and params[0] < 1:
        raise SpecError(f"{tag} needs n >= 1")
    return _BUILDERS[tag](*params)


def parse_graph_spec(text):
    """Parse ``lnn:N``, ``ladder:N``, ``grid:RxC``, ``heavy-hex:CELLS`` or ``all-to-all:N``."""
    family, _, arg = text.partition(":")
    if not arg:
        raise SpecError(f"graph spec {text!r} needs FAMILY:PARAMS")
    family = family.strip().lower()
    if family == "grid":
        rows, _, cols = arg.lower().partition("x")
        return build_family("grid", rows, cols)
    return build_family(family, arg)


def mirror_map(graph):
    """A reflection automorphism of a built-in family, or None for custom graphs."""
    n = graph.n
    if graph.family in ("lnn", "all_to_all"):
        return tuple(n - 1 - i for i in range(n))
    if graph.family == "ladder":
        m = n // 2
        return tuple(m - 1 - i if i < m else m + (m - 1 - (i - m)) for i in range(n))
    if graph.family == "grid":
        rows, cols = graph.params
        return tuple((i // cols) * cols + (cols - 1 - i % cols) for i in range(n))
    if graph.family == "heavy_hex":
        length = 2 * graph.params[0] + 1
        out = []
        for i in range(n):
            if i < length:
                out.append(length - 1 - i)
            else:
                j = 2 * (i - length) + 1
                out.append(length + (length - 1 - j - 1) // 2)
        return tuple(out)
    return None


# ── Hamiltonian grid paths ────────────────────────────────────────────────────

def _grid_hgp(rows, cols):
    spine_rows = list(range(1, rows, 3))
    if spine_rows[-1] < rows - 2:
        spine_rows.append(rows - 1)
    spine = []
    for k, r in enumerate(spine_rows):
        cols_order = range(cols) if k % 2 == 0 else range(cols - 1, -1, -1)
        spine.extend(r * cols + c for c in cols_order)
        if k + 1 < len(spine_rows):
            turn = cols - 1 if k % 2 == 0 else 0
            spine.extend(rr * cols + turn for rr in range(r + 1, spine_rows[k + 1]))
    on_spine = set(spine)
    neighbors = {}
    for node in range(rows * cols):
        if node in on_spine:
            continue
        up, down = node - cols, node + cols
        anchor = up if up >= 0 and up in on_spine else down
        if anchor not in on_spine:
            raise HgpError(f"grid {rows}x{cols}: node {node} has no spine neighbour")
        neighbors.setdefault(anchor, []).append(node)
    return Hgp.from_mapping(spine, neighbors)


def builtin_hgp(graph):
    n = graph.n
    if graph.hgp is not None:
        return graph.hgp
    if graph.family == "lnn":
        if n == 1:
            return Hgp((0,))
        if n == 2:
            return Hgp.from_mapping([0], {0: [1]})
        neighbors = {1: [0]}
        neighbors.setdefault(n - 2, []).append(n - 1)
        return Hgp.from_mapping(range(1, n - 1), neighbors)
    if graph.family == "all_to_all":
        return Hgp.from_mapping([0], {0: list(range(1, n))})
    if graph.family == "ladder":
        m = n // 2
        return Hgp.from_mapping(range(m), {i: [m + i] for i in range(m)})
    if graph.family == "grid":
        return _grid_hgp(*graph.params)
    if graph.family == "heavy_hex":
        length = 2 * graph.params[0] + 1
        return Hgp.from_mapping(
            range(length), {j: [length + (j - 1) // 2] for j in range(1, length - 1, 2)}
        )
    raise HgpError("custom graph needs a user-supplied HGP")


def validate_hgp(graph, hgp):
    spine = list(hgp.spine)
    if not spine:
        raise HgpError("spine is empty")
    if len(set(spine)) != len(spine):
        raise HgpError("spine visits a node twice")
    for node in spine:
        if not 0 <= node < graph.n:
            raise HgpError(f"spine node {node} outside the graph")
    for a, b in zip(spine, spine[1:]):
        if not graph.has_edge(a, b):
            raise HgpError(f"path violation: spine step {a}-{b} is not an edge")
    seen = set(spine)
    count = 0
    for s, nbs in hgp.neighbors:
        if s not in seen or s not in hgp.spine:
            raise HgpError(f"neighbor list attached to non-spine node {s}")
        for nb in nbs:
            if nb in seen:
                raise HgpError(f"node {nb} appears twice in the HGP")
            if not graph.has_edge(s, nb):
                raise HgpError(f"adjacency violation: neighbor {nb} not adjacent to spine node {s}")
            seen.add(nb)
            count += 1
    if len(seen) != graph.n:
        missing = sorted(set(range(graph.n)) - seen)
        raise HgpError(f"HGP does not cover qubits {missing}")
    return HgpCertificate(len(spine), count, len(seen))
