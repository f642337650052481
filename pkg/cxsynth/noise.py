"""Analytical fidelity model: two-qubit gate errors plus idling errors, single-qubit gates excluded."""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

from cxsynth.errors import NoiseParamError, SpecError

logger = logging.getLogger(__name__)

# Clean two-body generator per family: count (n^2, n) and effective depth (n, 1) coefficients.
DESIGN_TABLE = {
    "lnn": ((Fraction(1), Fraction(0)), (Fraction(3), Fraction(2))),
    "heavy_hex": ((Fraction(5, 6), Fraction(17, 6)), (Fraction(10, 3), Fraction(51, 3))),
    "ladder": ((Fraction(3, 4), Fraction(1)), (Fraction(9, 4), Fraction(3, 2))),
    "grid": ((Fraction(2, 3), Fraction(2, 3)), (Fraction(11, 3), Fraction(4, 3))),
}


@dataclass(frozen=True)
class NoiseParams:
    f_2q: float
    f_idle: float

    def __post_init__(self):
        for name in ("f_2q", "f_idle"):
            value = getattr(self, name)
            if not 0 < value <= 1:
                raise NoiseParamError(f"{name} must lie in (0, 1], got {value}")

    @classmethod
    def from_times(cls, f_2q, t1, t2, tg):
        return cls(f_2q, idle_fidelity(t1, t2, tg))

    @property
    def physical(self):
        """Two-qubit gates are expected to be worse than two idling qubits."""
        return self.f_2q <= self.f_idle ** 2

    def to_dict(self):
        return {"f_2q": self.f_2q, "f_idle": self.f_idle, "physical": self.physical}


def idle_fidelity(t1, t2, tg):
    if t1 <= 0 or t2 <= 0:
        raise NoiseParamError(f"lifetimes must be positive, got T1={t1}, T2={t2}")
    if tg < 0:
        raise NoiseParamError(f"gate time must be >= 0, got {tg}")
    return 0.5 + (2 * math.exp(-tg / t2) + math.exp(-tg / t1)) / 6


def fidelity_from_counts(count, depth, n, params):
    """F_2q^count * F_idle^(n*depth - 2*count)."""
    if count < 0 or depth < 0:
        raise NoiseParamError("count and depth must be non-negative")
    idle_slots = n * depth - 2 * count
    if idle_slots < 0:
        raise NoiseParamError(f"depth {depth} too small for {count} CX on {n} qubits")
    return params.f_2q ** count * params.f_idle ** idle_slots


def circuit_fidelity(metrics, n, params, effective=False):
    """Expected fidelity of a circuit; ``effective`` swaps CX depth for effective depth."""
    depth = metrics.effective_depth if effective else metrics.cnot_depth
    if depth is None:
        raise SpecError("metrics carry no effective depth")
    return fidelity_from_counts(metrics.cnot_count, float(depth), n, params)


def design_metrics(family, n):
    """Count and effective depth of the clean two-body generator, as exact fractions."""
    if family not in DESIGN_TABLE:
        raise SpecError(f"no design figures for {family!r}")
    (c2, c1), (d1, d0) = DESIGN_TABLE[family]
    return c2 * n * n + c1 * n, d1 * n + d0


def crossover_exponent(n, family_a, family_b):
    """x with equal fidelity of both designs along F_2q = F_idle^x; ``n=None`` gives the large-n limit."""
    if n is None:
        (a2, _), (da, _) = DESIGN_TABLE[family_a]
        (b2, _), (db, _) = DESIGN_TABLE[family_b]
        if a2 == b2:
            raise SpecError(f"{family_a} and {family_b} share the leading count")
        return 2 + (db - da) / (a2 - b2)
    count_a, depth_a = design_metrics(family_a, n)
    count_b, depth_b = design_metrics(family_b, n)
    if count_a == count_b:
        raise SpecError(f"{family_a} and {family_b} have equal counts at n={n}")
    return 2 + n * (depth_b - depth_a) / (count_a - count_b)


def log_fidelity_ratio(n, family_a, family_b, params):
    """log(F_a / F_b) from the design table."""
    count_a, depth_a = design_metrics(family_a, n)
    count_b, depth_b = design_metrics(family_b, n)
    log_2q, log_idle = math.log(params.f_2q), math.log(params.f_idle)
    return float(count_a - count_b) * (log_2q - 2 * log_idle) + n * float(depth_a - depth_b) * log_idle


@dataclass(frozen=True)
class DesignRanking:
    n: int
    params: NoiseParams
    ranking: tuple  # ((family, fidelity), ...) best first
    crossovers: dict

    @property
    def best(self):
        return self.ranking[0][0]

    def to_dict(self):
        return {
            "n": self.n,
            "params": self.params.to_dict(),
            "ranking": [{"family": f, "fidelity": v} for f, v in self.ranking],
            "crossovers": {f"{a}/{b}": str(x) for (a, b), x in self.crossovers.items()},
        }


def best_design(n, params):
    if n < 2:
        raise SpecError("design comparison needs n >= 2")
    if not params.physical:
        logger.warning(f"F_2q={params.f_2q} exceeds F_idle^2; outside the physical region")
    scores = []
    for family in DESIGN_TABLE:
        count, depth = design_metrics(family, n)
        scores.append((family, fidelity_from_counts(float(count), float(depth), n, params)))
    scores.sort(key=lambda item: item[1], reverse=True)
    families = list(DESIGN_TABLE)
    crossovers = {}
    for i, a in enumerate(families):
        for b in families[i + 1:]:
            try:
                crossovers[(a, b)] = crossover_exponent(n, a, b)
            except SpecError:
                continue
    return DesignRanking(n, params, tuple(scores), crossovers)


def process_fidelity(probs):
    probs = [float(p) for p in probs]
    m = len(probs)
    if m < 2:
        raise NoiseParamError("process fidelity needs at least two probabilities")
    for p in probs:
        if not 0 <= p <= 1:
            raise NoiseParamError(f"probability {p} outside [0, 1]")
    root_mean = sum(math.sqrt(p) for p in probs) / m
    return m / (m - 1) * root_mean ** 2 - sum(probs) / (m * (m - 1))
