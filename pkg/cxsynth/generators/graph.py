"""Generators adapted to grid, heavy-hex, ladder and custom connectivity.

Every network is planned as a list of traveling-label chains over a Hamiltonian
grid path (HGP) and then laid out with the ASAP scheduler:

* a chain walks the spine from its head, hits every live HGP neighbour with one
  CX and moves on with a DX; it ends by moving the traveling label into its
  slot qubit, which then retires;
* cells retire from the far end of the spine backwards; inside a cell the
  spine node may go before some of its neighbours, whose chains then leave
  the spine early and reach the slot through live neighbours;
* after the last chain every retired qubit holds a product of two consecutive
  labels of one telescoping sequence, which the decode planner unwinds with
  nearest-neighbour CX gates.

Ladders use two alternating spines, one per rail, so each chain only needs one
DX per rung.
"""
import logging
from dataclasses import dataclass
from itertools import permutations

import networkx as nx

from cxsynth.circuit import run_and_collect, schedule
from cxsynth.errors import CertificationError, HgpError, UnsupportedError
from cxsynth.gates import cx, dx_gates
from cxsynth.generators import lnn
from cxsynth.generators.compress import compress_all_to_all
from cxsynth.labels import LabelState
from cxsynth.topology import Hgp, builtin_hgp, validate_hgp

logger = logging.getLogger(__name__)

_MAX_REORDERED_CELL = 3


@dataclass(frozen=True)
class Chain:
    path: tuple
    attached: tuple  # ((walk_node, (nb, ...)), ...)
    slot: int
    special: int = None  # qubit whose label is stripped from the head first

    def steps(self):
        """Gate groups in order; a new label is visible after each group."""
        out = []
        if self.special is not None:
            out.append([cx(self.special, self.path[0])])
        nbs = dict(self.attached)
        for i, s in enumerate(self.path):
            for nb in nbs.get(s, ()):
                out.append([cx(s, nb)])
            if i + 1 < len(self.path):
                out.append(dx_gates(s, self.path[i + 1]))
        if self.slot != self.path[-1]:
            out.append(dx_gates(self.path[-1], self.slot))
        return out

    @property
    def cx_count(self):
        moves = len(self.path) - 1 + (self.slot != self.path[-1])
        return 2 * moves + sum(len(nbs) for _, nbs in self.attached) + (self.special is not None)


@dataclass(frozen=True)
class NetworkPlan:
    n: int
    chains: tuple
    retire: tuple
    closing: tuple = ()

    def network_steps(self):
        for chain in self.chains:
            yield from chain.steps()
        for gate in self.closing:
            yield [gate]


# ── Decode planner ────────────────────────────────────────────────────────────

def long_range_cx(graph, control, target):
    """CX between distant qubits along a shortest path; intermediates are restored."""
    path = nx.shortest_path(graph.nx, control, target)
    m = len(path) - 1
    gates = [cx(path[i], path[i + 1]) for i in range(m - 1, -1, -1)]
    gates += [cx(path[i], path[i + 1]) for i in range(1, m)]
    gates += [cx(path[i], path[i + 1]) for i in range(m - 2, -1, -1)]
    gates += [cx(path[i], path[i + 1]) for i in range(1, m - 1)]
    return gates


def decode_gates(graph, retire):
    """Unwind retire[k] = u_k u_(k+1) into single labels, carrier starting at retire[0]."""
    gates = []
    if len(retire) < 2:
        return gates
    carrier, k, last = retire[0], 1, len(retire) - 1
    while k <= last:
        target = retire[k]
        if graph.has_edge(carrier, target):
            gates.append(cx(carrier, target))
            carrier, k = target, k + 1
        elif k < last and graph.has_edge(carrier, retire[k + 1]) and graph.has_edge(retire[k + 1], target):
            a, b = target, retire[k + 1]
            gates += [cx(carrier, b), cx(b, a), cx(a, b), cx(carrier, b)]
            carrier, k = a, k + 2
        else:
            gates += long_range_cx(graph, carrier, target)
            carrier, k = target, k + 1
    return gates


# ── Plans ─────────────────────────────────────────────────────────────────────

def _candidate_orders(s, nbs):
    """Retire orders tried for one cell; the first keeps the spine node last."""
    if len(nbs) > _MAX_REORDERED_CELL:
        return [(*nbs, s)]
    return [(*p[:cut], s, *p[cut:]) for p in permutations(nbs) for cut in range(len(p), -1, -1)]


def _walk(graph, cells, r, slot, alive, spines):
    """Live spine prefix up to cell r, extended through live neighbours once the cell's spine is gone."""
    walk = [s for s, _ in cells[: r + 1] if s in alive]
    own = cells[r][0]
    if slot == own or own in alive:
        return walk
    if not walk:
        return None
    usable = (alive - spines) | {walk[-1]}
    try:
        route = nx.shortest_path(graph.nx.subgraph(usable), walk[-1], slot)
    except nx.NetworkXNoPath:
        return None
    return walk + route[1:-1]


def _chain_for(graph, cells, r, slot, alive, spines, special):
    walk = _walk(graph, cells, r, slot, alive, spines)
    if not walk:
        return None
    on_walk = set(walk)
    home = {nb: s for s, nbs in cells for nb in nbs}
    attached = {w: [] for w in walk}
    for s, nbs in cells[: r + 1]:
        for q in (s, *nbs):
            if q not in alive or q in on_walk or q == slot:
                continue
            anchor = home.get(q)
            if anchor not in on_walk:
                anchor = next((w for w in walk if graph.has_edge(w, q)), None)
                if anchor is None:
                    return None
            attached[anchor].append(q)
    return Chain(tuple(walk), tuple((w, tuple(q)) for w, q in attached.items() if q), slot, special)


def _cell_chains(graph, cells, r, order, alive, spines, special):
    alive = set(alive)
    chains = []
    for slot in order:
        if len(alive) == 1:
            break
        chain = _chain_for(graph, cells, r, slot, alive, spines, special)
        if chain is None:
            return None
        chains.append(chain)
        alive.discard(slot)
    return chains


def _plan_chains(graph, cells, alive, special=None):
    """Retire cells from the far end; per cell keep the order with the fewest chain and decode CX gates."""
    spines = {s for s, _ in cells}
    retire, chains = [], []
    for r in range(len(cells) - 1, -1, -1):
        s, nbs = cells[r]
        best = None
        for order in _candidate_orders(s, nbs):
            if r == 0 and special is not None and order[-1] != s and not graph.has_edge(special, order[-1]):
                continue
            trial = _cell_chains(graph, cells, r, order, alive, spines, special)
            if trial is None:
                continue
            cost = sum(c.cx_count for c in trial) + len(decode_gates(graph, retire + list(order)))
            if best is None or cost < best[0]:
                best = (cost, order, trial)
        _, order, trial = best
        retire += order
        chains += trial
        alive = alive - set(order)
    return retire, chains


def _static_plan(graph, hgp, active=None, special=None):
    alive = set(range(graph.n)) if active is None else set(active)
    alive.discard(special)
    cells = [(s, tuple(nb for nb in nbs if nb in alive)) for s, nbs in hgp.cells() if s in alive]
    covered = {s for s, _ in cells} | {nb for _, nbs in cells for nb in nbs}
    if covered != alive:
        raise HgpError(f"HGP does not cover the live qubits {sorted(alive - covered)}")
    retire, chains = _plan_chains(graph, cells, alive, special)
    closing = () if special is None else (cx(special, retire[-1]),)
    return NetworkPlan(graph.n, tuple(chains), tuple(retire), closing)


def _lnn_plan(n):
    chains = tuple(Chain(tuple(range(n - j)), (), n - 1 - j) for j in range(n - 1))
    return NetworkPlan(n, chains, tuple(range(n - 1, -1, -1)))


def _ladder_plan(graph):
    n = graph.n
    m = n // 2
    rails = (tuple(range(m)), tuple(range(m, n)))
    chains, retire = [], []
    for step in range(n - 1):
        rung = m - 1 - step // 2
        rail, other = rails[step % 2], rails[1 - step % 2]
        reach = rung + 1 if step % 2 == 0 else rung
        attached = tuple((rail[i], (other[i],)) for i in range(reach))
        chains.append(Chain(rail[: rung + 1], attached, rail[rung]))
        retire.append(rail[rung])
    retire.append(rails[1][0])
    return NetworkPlan(n, tuple(chains), tuple(retire))


def _checked_hgp(graph, hgp):
    hgp = builtin_hgp(graph) if hgp is None else hgp
    validate_hgp(graph, hgp)
    return hgp


def network_plan(graph, hgp=None):
    """Chains and retire order of the two-body network for a non-all-to-all graph."""
    if graph.family == "all_to_all":
        raise UnsupportedError("all-to-all networks are built by compressing the LNN constructions")
    if graph.n < 2:
        raise UnsupportedError("a network needs at least two qubits")
    if graph.family == "lnn" and hgp is None:
        return _lnn_plan(graph.n)
    if graph.family == "ladder" and hgp is None:
        return _ladder_plan(graph)
    return _static_plan(graph, _checked_hgp(graph, hgp))


def _flatten(steps):
    return [gate for step in steps for gate in step]


def _certify_clean(circuit, what):
    final = LabelState.single_body(circuit.n)
    state, _ = run_and_collect(circuit, final)
    if state.permutation() is None:
        raise CertificationError(f"{what} did not return to single-body labels")
    return circuit


# ── Public builders ───────────────────────────────────────────────────────────

def ptc_graph(graph, hgp=None, start_node=None):
    """One traveling-label chain over the whole HGP."""
    hgp = _checked_hgp(graph, hgp)
    spine = list(hgp.spine)
    if start_node is not None and start_node != spine[0]:
        if start_node != spine[-1]:
            raise HgpError(f"start node {start_node} is not an end of the spine")
        spine.reverse()
    chain = Chain(tuple(spine), hgp.neighbors, spine[-1])
    return schedule(graph.n, _flatten(chain.steps()))


def ptn_graph(graph, hgp=None):
    if graph.family == "all_to_all":
        return compress_all_to_all(lnn.ptn(graph.n))[0]
    plan = network_plan(graph, hgp)
    circuit = schedule(graph.n, _flatten(plan.network_steps()))
    logger.debug(f"ptn on {graph.tag}: size {circuit.cx_count}, depth {circuit.cx_depth}")
    return circuit


def g2_graph(graph, hgp=None):
    """Clean two-body generator; LNN and all-to-all use the exact constructions."""
    if graph.family == "lnn" and hgp is None:
        return lnn.g2(graph.n)
    if graph.family == "all_to_all":
        return compress_all_to_all(lnn.g2(graph.n))[0]
    plan = network_plan(graph, hgp)
    gates = _flatten(plan.network_steps()) + decode_gates(graph, plan.retire)
    circuit = schedule(graph.n, gates)
    logger.debug(f"g2 on {graph.tag}: size {circuit.cx_count}, depth {circuit.cx_depth}")
    return _certify_clean(circuit, f"g2 on {graph.tag}")


def _initializer_gates(graph, active, root):
    sub = graph.nx.subgraph(active)
    parent = {}
    order = []
    for u, v in nx.bfs_edges(sub, root):
        parent[v] = u
        order.append(v)
    gates = [cx(parent[q], q) for q in reversed(order)]
    gates += [cx(parent[q], q) for q in order if parent[q] != root]
    return gates


def initializer(graph, hgp=None, special_node=0):
    """Multiply the special qubit's label into every other label; two CX sweeps of a BFS tree."""
    if hgp is not None:
        validate_hgp(graph, hgp)
    if not 0 <= special_node < graph.n:
        raise HgpError(f"special node {special_node} outside the graph")
    return schedule(graph.n, _initializer_gates(graph, range(graph.n), special_node))


def special_order(hgp):
    """Qubits in the order they serve as special qubit: per cell, neighbours then spine node."""
    out = []
    for s, nbs in hgp.cells():
        out += list(nbs) + [s]
    return out


def _round_gates(graph, hgp, active, special):
    plan = _static_plan(graph, hgp, active, special)
    gates = _initializer_gates(graph, active, special)
    gates += _flatten(plan.network_steps())
    gates += decode_gates(graph, plan.retire)
    return gates


def _alternating_specials(hgp):
    """(special, side) per round; side 0 takes the next special from the spine head, side 1 from its far end."""
    ends = (special_order(hgp), special_order(Hgp(hgp.spine[::-1], hgp.neighbors)))
    cursors = [0, 0]
    used = set()
    for index in range(len(ends[0])):
        side = index % 2
        while ends[side][cursors[side]] in used:
            cursors[side] += 1
        special = ends[side][cursors[side]]
        used.add(special)
        yield special, side


def g3_graph(graph, hgp=None):
    """Three-body generator from special-qubit rounds on shrinking qubit sets.

    Rounds alternate between the two ends of the spine. A far-end round is
    planned on the reversed HGP and emitted inverted, so it works the far end
    while the previous round is still busy near the head.
    """
    if graph.family == "lnn" and hgp is None:
        return lnn.g3(graph.n)
    if graph.family == "all_to_all":
        return compress_all_to_all(lnn.g3(graph.n))[0]
    if graph.n < 3:
        raise UnsupportedError("three-body generators need at least three qubits")
    hgp = _checked_hgp(graph, hgp)
    hgps = (hgp, Hgp(hgp.spine[::-1], hgp.neighbors))
    active = set(range(graph.n))
    gates = []
    for special, side in _alternating_specials(hgp):
        if len(active) < 3:
            break
        round_gates = _round_gates(graph, hgps[side], active, special)
        gates += list(reversed(round_gates)) if side else round_gates
        active.discard(special)
    circuit = schedule(graph.n, gates)
    logger.debug(f"g3 on {graph.tag}: size {circuit.cx_count}, depth {circuit.cx_depth}")
    return _certify_clean(circuit, f"g3 on {graph.tag}")


def gk_graph(graph, k, hgp=None):
    if k == 2:
        return g2_graph(graph, hgp)
    if k == 3:
        return g3_graph(graph, hgp)
    if graph.family == "lnn" and hgp is None:
        return lnn.gk(graph.n, k)
    if graph.family == "all_to_all":
        return compress_all_to_all(lnn.gk(graph.n, k))[0]
    raise UnsupportedError(f"{k}-body generators are only built for lnn and all-to-all devices")
