from dataclasses import dataclass, field
from numbers import Real

from cxsynth.errors import SpecError
from cxsynth.labels import Label


def _index(value, n, what):
    try:
        index = int(value)
    except (TypeError, ValueError):
        raise SpecError(f"{what} index {value!r} is not an integer")
    if isinstance(value, Real) and value != index:
        raise SpecError(f"{what} index {value!r} is not an integer")
    if not 0 <= index < n:
        raise SpecError(f"{what} index {index} outside 0..{n - 1}")
    return index


def _terms(rows, n, arity, what):
    out = {}
    for row in rows or ():
        row = list(row)
        if len(row) != arity + 1:
            raise SpecError(f"{what} entries need {arity} indices and a coefficient, got {row}")
        indices = [_index(v, n, what) for v in row[:arity]]
        if len(set(indices)) != arity:
            raise SpecError(f"{what} entry {row} repeats an index")
        label = Label.from_indices(indices)
        out[label] = out.get(label, 0.0) + float(row[arity])
    return out


@dataclass(frozen=True)
class Problem:
    """Ising-type cost/Hamiltonian: Z couplings J, fields h, transverse fields g, three-body M."""

    n: int
    J: dict = field(default_factory=dict)
    h: dict = field(default_factory=dict)
    g: dict = field(default_factory=dict)
    M: dict = field(default_factory=dict)

    @classmethod
    def from_lists(cls, n, J=None, h=None, g=None, M=None):
        if int(n) < 1:
            raise SpecError("problem needs at least one qubit")
        n = int(n)
        return cls(
            n,
            _terms(J, n, 2, "J"),
            _terms(h, n, 1, "h"),
            {_index(i, n, "g"): float(v) for i, v in (g or ())},
            _terms(M, n, 3, "M"),
        )

    @property
    def order(self):
        """Highest interaction order present (1, 2 or 3)."""
        if self.M:
            return 3
        if self.J:
            return 2
        return 1

    def z_terms(self):
        terms = {}
        for group in (self.h, self.J, self.M):
            terms.update(group)
        return terms

    def transverse(self, index):
        return self.g.get(index, 0.0)
