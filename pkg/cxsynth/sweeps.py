"""Count/depth sweeps over n and their convergence towards the asymptotic averages."""
import csv
import io
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from config.settings import Config
from cxsynth.errors import SpecError
from cxsynth.generators.graph import gk_graph
from cxsynth.topology import build_family, grid, heavy_hex

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("family", "k", "n", "count", "depth", "mu", "nu")

# (mu, nu) limits; nu is given as a function of k, None where no limit is recorded.
ASYMPTOTES = {
    "lnn": (lambda k: Fraction(2), lambda k: Fraction(k)),
    "all_to_all": (lambda k: Fraction(1), lambda k: Fraction(k, 2)),
    "grid": (lambda k: Fraction(4, 3), None),
    "heavy_hex": (lambda k: Fraction(5, 3), None),
}


@dataclass(frozen=True)
class SweepRow:
    family: str
    k: int
    n: int
    count: int
    depth: int
    mu: Fraction
    nu: Fraction

    def to_dict(self):
        return {
            "family": self.family,
            "k": self.k,
            "n": self.n,
            "count": self.count,
            "depth": self.depth,
            "mu": float(self.mu),
            "nu": float(self.nu),
        }


def graph_for(family, n):
    """Family member with exactly n qubits, or None when the family has no such size."""
    family = family.replace("-", "_")
    if family == "grid":
        return grid(3, n // 3) if n % 3 == 0 and n >= 6 else None
    if family == "heavy_hex":
        return heavy_hex((n - 1) // 3) if n % 3 == 1 and n >= 4 else None
    if family == "ladder" and (n % 2 or n < 2):
        return None
    return build_family(family, n)


def sweep(family, k, n_values):
    rows = []
    for n in n_values:
        if n > Config.MAX_SWEEP_N:
            raise SpecError(f"n={n} exceeds the sweep limit {Config.MAX_SWEEP_N}")
        if n < k:
            continue
        graph = graph_for(family, n)
        if graph is None:
            continue
        circuit = gk_graph(graph, k)
        labels = comb(n, k)
        count, depth = circuit.cx_count, circuit.cx_depth
        rows.append(
            SweepRow(graph.family, k, n, count, depth, Fraction(count, labels), Fraction(depth * n, 2 * labels))
        )
        logger.debug(f"sweep {family} k={k} n={n}: {count} CX, depth {depth}")
    return rows


def check_asymptote(rows):
    """Distance of every row to the recorded limit and whether it shrinks monotonically."""
    report = []
    previous = None
    for row in rows:
        limits = ASYMPTOTES.get(row.family)
        if limits is None:
            continue
        target = limits[0](row.k)
        gap = abs(row.mu - target)
        entry = {
            "n": row.n,
            "mu": float(row.mu),
            "mu_target": float(target),
            "gap": float(gap),
            "monotone": previous is None or gap <= previous,
        }
        if limits[1] is not None:
            entry["nu_target"] = float(limits[1](row.k))
        report.append(entry)
        previous = gap
    return report


def to_csv(rows):
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.to_dict())
    return buffer.getvalue()
