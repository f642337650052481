"""Exact constructions for linear nearest-neighbour devices.

Docstrings use the 1-based qubit notation of the defining equations
(``CX(1,2)`` acts on device qubits 0 and 1). Every builder returns the literal
moment structure of its definition; nothing here is re-packed.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from cxsynth.circuit import Circuit, adjoint, concat, concat_shifted, place, relabel, reverse
from cxsynth.errors import NoClosedFormError, SpecError
from cxsynth.gates import Block, cx
from cxsynth.metrics import Metrics

logger = logging.getLogger(__name__)

KINDS = (
    "ptc", "cxc", "cxc_mod", "swc", "ptn", "ptc_mod", "ptn_mod", "ptn3", "ptn4",
    "cl", "g2", "g3", "clean_special_g4", "clean_special_gk", "gk",
)
MIN_QUBITS = {
    "ptc": 1, "cxc": 1, "cxc_mod": 1, "swc": 1, "ptn": 2, "ptc_mod": 2, "ptn_mod": 3,
    "ptn3": 3, "ptn4": 4, "cl": 4, "g2": 2, "g3": 3, "clean_special_g4": 4,
}


# ── Moment placement helpers ──────────────────────────────────────────────────

def _circuit(n, placed):
    if not placed:
        return Circuit.empty(n)
    moments = [[] for _ in range(max(m for m, _ in placed) + 1)]
    for m, gate in placed:
        moments[m].append(gate)
    return Circuit(n, tuple(tuple(m) for m in moments))


def _dx_at(c, t, moment):
    block = Block("dx")
    return [(moment, cx(t - 1, c - 1, block)), (moment + 1, cx(c - 1, t - 1, block))]


def _sw_at(c, t, moment):
    block = Block("sw")
    return [
        (moment, cx(c - 1, t - 1, block)),
        (moment + 1, cx(t - 1, c - 1, block)),
        (moment + 2, cx(c - 1, t - 1, block)),
    ]


def single_cx(n, c, t):
    """One CX on 0-based qubits."""
    return Circuit(n, ((cx(c, t),),))


def swap(n, c, t):
    return _circuit(n, _sw_at(c + 1, t + 1, 0))


# ── Chains ────────────────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def ptc(n):
    """PTC: DX(j,j+1) at moments 2j-2, 2j-1. Output (l1l2, ..., l1ln, l1)."""
    placed = []
    for j in range(1, n):
        placed += _dx_at(j, j + 1, 2 * j - 2)
    return _circuit(n, placed)


@lru_cache(maxsize=None)
def cxc(n):
    return _circuit(n, [(j - 1, cx(j - 1, j)) for j in range(1, n)])


@lru_cache(maxsize=None)
def cxc_bar(n):
    return reverse(cxc(n))


@lru_cache(maxsize=None)
def cxc_mod(n):
    """CX(j,j+1) every second moment; depth 2n-3."""
    return _circuit(n, [(2 * j - 2, cx(j - 1, j)) for j in range(1, n)])


@lru_cache(maxsize=None)
def swc(n):
    placed = []
    for j in range(1, n):
        placed += _sw_at(j, j + 1, 3 * (j - 1))
    return _circuit(n, placed)


@lru_cache(maxsize=None)
def ptc_mod(n):
    """PTC' = CX(1,2) followed by PTC on qubits 2..n."""
    return concat(single_cx(n, 0, 1), place(ptc(n - 1), 1, n))


# ── Networks ──────────────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def ptn(n):
    """PTN: PTC(n) with PTN(n-1) starting four moments in."""
    if n <= 2:
        return ptc(n)
    return concat_shifted(ptc(n), place(ptn(n - 1), 0, n), 4)


@lru_cache(maxsize=None)
def ptn_mod(n):
    """PTN': modified chains PTC'(m) for m = n..3, each four moments after the last, closed by CX(1,2)."""
    acc = concat(place(ptc_mod(3), 0, n), single_cx(n, 0, 1))
    for m in range(4, n + 1):
        acc = concat_shifted(place(ptc_mod(m), 0, n), acc, 4)
    return acc


@lru_cache(maxsize=None)
def ptn3(n):
    """PTN3 = (CX(2,3) then CXC'(3,n)) with PTN' starting at moment 1."""
    encode = concat(single_cx(n, 1, 2), place(cxc_mod(n - 2), 2, n))
    return concat_shifted(encode, ptn_mod(n), 1)


@lru_cache(maxsize=None)
def ptn4(n):
    """PTN4 = CXC'(3,n) shifted by -2(n-3) against PTC(n) with PTN'(1,n-1) at moment 5."""
    body = concat_shifted(ptc(n), place(ptn_mod(n - 1), 0, n), 5)
    return concat_shifted(place(cxc_mod(n - 2), 2, n), body, -2 * (n - 3))


def _shift(m):
    if m == 3:
        return 0
    if m == 4:
        return -1
    return -2 * (m - 4)


def _mirrored_tail(circuit, n):
    """Place an (n-1)-qubit circuit on qubits 2..n and mirror it there."""
    return relabel(circuit, [n - 1 - q for q in range(circuit.n)], n)


@lru_cache(maxsize=None)
def w3(n):
    if n == 3:
        return ptn3(3)
    return concat_shifted(ptn3(n), _mirrored_tail(w3(n - 1), n), _shift(n - 1))


@lru_cache(maxsize=None)
def w4(n):
    if n == 4:
        return ptn4(4)
    return concat_shifted(ptn4(n), _mirrored_tail(w4(n - 1), n), _shift(n - 1))


# ── Generators ────────────────────────────────────────────────────────────────

@lru_cache(maxsize=None)
def g2(n):
    """Clean two-body generator; output is the reversed input."""
    if n == 2:
        return concat(ptn(2), cxc_bar(2))
    return concat_shifted(ptn(n), cxc_bar(n), -(n - 3))


def _g3_closing_pair(n):
    if n % 2:
        return (n + 1) // 2 + 1, (n + 1) // 2
    return n // 2, n // 2 + 1


@lru_cache(maxsize=None)
def g3(n):
    c, t = _g3_closing_pair(n)
    return concat(adjoint(cxc(n)), w3(n), single_cx(n, c - 1, t - 1))


@lru_cache(maxsize=None)
def cl(n):
    """Post-cleanup circuit CL(n)."""
    m = -(-(n - 1) // 2)
    odd = n % 2 == 1
    c, t = (m + 1, m + 2) if odd else (m + 1, m)
    parts = [single_cx(n, c - 1, t - 1)]
    if odd:
        parts.append(place(swc(3), m - 1, n))
    parts.append(place(ptc(n - m - 1), m + 1, n))
    parts.append(reverse(place(swc(n - m + 1), m - 1, n), m - 1, n - 1))
    parts.append(reverse(place(ptc(m), 0, n), 0, m - 1))
    return concat(*parts)


@lru_cache(maxsize=None)
def clean_special_g4(n):
    return concat(adjoint(place(cxc(n - 1), 1, n)), w4(n), cl(n))


@lru_cache(maxsize=None)
def _wk(n, k):
    head = concat(single_cx(n, 0, 1), place(clean_special_gk(n - 1, k - 1), 1, n))
    if n == k:
        return head
    return concat(head, swap(n, 0, 1), place(_wk(n - 1, k), 1, n))


@lru_cache(maxsize=None)
def clean_special_gk(n, k):
    """Clean special k-body generator with the special label on qubit 1; base case k = 4."""
    if k == 4:
        return clean_special_g4(n)
    return concat(
        _wk(n, k),
        single_cx(n, n - k, n - k + 1),
        reverse(place(ptc(n - k + 1), 0, n), 0, n - k),
    )


@lru_cache(maxsize=None)
def gk(n, k):
    """Clean generator of every j-body label for 2 <= j <= k.

    For k >= 4 the special passes run after gk(n, k - 1); they only need the
    single-body labels in some order, which a clean prefix leaves behind.
    """
    if k == 2:
        return g2(n)
    if k == 3:
        return g3(n)
    passes = [place(clean_special_gk(n - i, k), i, n) for i in range(n - k + 1)]
    return concat(gk(n, k - 1), *passes)


# ── Entry points ──────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    n: int
    k: int = None
    p: int = None
    q: int = None

    @property
    def width(self):
        return self.n if self.p is None else self.q - self.p + 1

    def validate(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown generator kind {self.kind!r}")
        if self.p is not None or self.q is not None:
            if self.p is None or self.q is None or not 0 <= self.p <= self.q < self.n:
                raise SpecError(f"range ({self.p}, {self.q}) invalid for {self.n} qubits")
        width = self.width
        if self.kind in ("gk", "clean_special_gk"):
            if self.k is None or self.k < 2:
                raise SpecError(f"{self.kind} needs k >= 2")
            if self.kind == "clean_special_gk" and self.k < 4:
                raise SpecError("clean_special_gk needs k >= 4")
            if width < self.k:
                raise SpecError(f"{self.kind} needs n >= k, got n={width}, k={self.k}")
        elif width < MIN_QUBITS[self.kind]:
            raise SpecError(f"{self.kind} needs at least {MIN_QUBITS[self.kind]} qubits, got {width}")
        return self

    def to_dict(self):
        return {"kind": self.kind, "n": self.n, "k": self.k, "p": self.p, "q": self.q}


_BUILDERS = {
    "ptc": ptc, "cxc": cxc, "cxc_mod": cxc_mod, "swc": swc, "ptn": ptn, "ptc_mod": ptc_mod,
    "ptn_mod": ptn_mod, "ptn3": ptn3, "ptn4": ptn4, "cl": cl, "g2": g2, "g3": g3,
    "clean_special_g4": clean_special_g4,
}


def build(spec):
    spec.validate()
    width = spec.width
    if spec.kind == "gk":
        circuit = gk(width, spec.k)
    elif spec.kind == "clean_special_gk":
        circuit = clean_special_gk(width, spec.k)
    else:
        circuit = _BUILDERS[spec.kind](width)
    logger.debug(f"built {spec.kind}(n={width}, k={spec.k}): size {circuit.cx_count}, depth {circuit.cx_depth}")
    if spec.p is not None:
        circuit = place(circuit, spec.p, spec.n)
    return circuit


def target_size(kind, n, k=None):
    """Size of the label family a kind is meant to generate, or None."""
    sizes = {
        "ptc": lambda: n - 1,
        "ptn": lambda: comb(n, 2),
        "g2": lambda: comb(n, 2),
        "ptc_mod": lambda: n - 2,
        "ptn_mod": lambda: comb(n - 1, 2),
        "ptn3": lambda: comb(n - 1, 2),
        "ptn4": lambda: comb(n - 2, 2),
        "g3": lambda: comb(n, 3),
        "clean_special_g4": lambda: comb(n - 1, 3),
        "gk": lambda: comb(n, k),
        "clean_special_gk": lambda: comb(n - 1, k - 1),
    }
    size = sizes.get(kind)
    return None if size is None else size()


def _sign_term(n):
    return Fraction(-1, 2) ** (n % 2)


def _closed_form(kind, n, k):
    if kind == "ptc":
        return 2 * (n - 1), 2 * (n - 1)
    if kind == "cxc":
        return n - 1, n - 1
    if kind == "cxc_mod":
        return n - 1, max(2 * n - 3, 0)
    if kind == "swc":
        return 3 * (n - 1), 3 * (n - 1)
    if kind == "ptn":
        return n * n - n, 4 * n - 6
    if kind == "ptc_mod":
        return 2 * n - 3, 2 * n - 3
    if kind == "ptn_mod":
        return n * n - 2 * n + 1, 4 * n - 8
    if kind in ("ptn3", "ptn4"):
        return n * n - n - 1, 4 * n - 7
    if kind == "cl":
        value = Fraction(7 * n, 2) - 5 * _sign_term(n)
        return int(value), int(value)
    if kind == "g2" or (kind == "gk" and k == 2):
        if n == 2:
            return 3, 3
        return n * n - 1, 4 * n - 4
    if kind == "g3" or (kind == "gk" and k == 3):
        depth = 8 if n == 3 else 18 if n == 4 else n * n + 5 * n - 19
        return (n ** 3 - n) // 3, depth
    if kind == "clean_special_g4" or (kind == "clean_special_gk" and k == 4):
        size = Fraction(n ** 3, 3) + Fraction(19 * n, 6) - 7 - 5 * _sign_term(n)
        depth = 20 if n == 4 else n * n + Fraction(17 * n, 2) - 26 - 5 * _sign_term(n)
        return int(size), int(depth)
    return None


def asymptotic_metrics(kind, n, k):
    """Leading-order size and depth for general k-body constructions."""
    if kind == "gk":
        return Fraction(2 * n ** k, factorial(k)), Fraction(2 * n ** (k - 1), factorial(k - 1))
    if kind == "clean_special_gk":
        return Fraction(2 * n ** (k - 1), factorial(k - 1)), Fraction(2 * n ** (k - 2), factorial(k - 2))
    raise NoClosedFormError(f"no asymptotic form recorded for {kind}")


def expected_metrics(spec):
    spec.validate()
    n, k = spec.width, spec.k
    values = _closed_form(spec.kind, n, k)
    if values is None:
        lead = asymptotic_metrics(spec.kind, n, k) if spec.kind in ("gk", "clean_special_gk") else None
        detail = None if lead is None else [f"size ~ {float(lead[0]):.1f}", f"depth ~ {float(lead[1]):.1f}"]
        raise NoClosedFormError(f"no closed form for {spec.kind} (n={n}, k={k})", detail=detail)
    count, depth = values
    labels = target_size(spec.kind, n, k)
    mu = nu = None
    if labels:
        mu = Fraction(count, labels)
        nu = Fraction(depth * n, 2 * labels)
    return Metrics(cnot_count=count, cnot_depth=depth, effective_depth=None, mu_n=mu, nu_n=nu)
