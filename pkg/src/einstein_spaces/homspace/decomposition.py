"""Isotropy decompositions: summand dimensions plus symmetric bracket triples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence

from ..polycore import ParamCoefficient, ParamPoly, coerce_coefficient
from ..polycore.param import PoleError, specialize_coefficient


def canonical(k: int, i: int, j: int) -> tuple[int, int, int]:
    return tuple(sorted((k, i, j)))


def _is_numeric(v) -> bool:
    return isinstance(v, (int, Fraction))


def _value_at(v, n0):
    if n0 is None or _is_numeric(v):
        return v
    if isinstance(v, (ParamCoefficient, ParamPoly)):
        return specialize_coefficient(v, n0)
    return v


class IsotropyDecomposition:
    """Summands m_1..m_q with dims d_k and triples [k|ij] (0-based indices).

    ``triples`` may be given with any key ordering; values are stored per
    symmetry orbit. Conflicting values within an orbit are kept in
    ``conflicts`` so :func:`validate_decomposition` can report them.
    """

    def __init__(self, dims: Sequence, triples: Mapping[tuple, object], labels=None,
                 validity: tuple | None = None, name: str = "", variables=None):
        self.dims = [coerce_coefficient(d) for d in dims]
        self.q = len(self.dims)
        self.labels = list(labels) if labels is not None else [str(i + 1) for i in range(self.q)]
        self.variables = tuple(variables) if variables is not None else tuple(
            f"x{i + 1}" for i in range(self.q))
        if len(self.variables) != self.q:
            raise ValueError("one metric variable per summand is required")
        self.validity = validity  # inclusive (n_min, n_max or None) for parametric data
        self.name = name
        self.conflicts: list[tuple] = []
        self.raw_triples = dict(triples)
        self._triples: dict[tuple, object] = {}
        for key, val in triples.items():
            if len(key) != 3 or any(not 0 <= x < self.q for x in key):
                raise ValueError(f"bad triple index {key}")
            c = canonical(*key)
            val = coerce_coefficient(val)
            if not val:
                continue
            if c in self._triples and self._triples[c] != val:
                self.conflicts.append((c, self._triples[c], val))
                continue
            self._triples[c] = val

    def triple(self, k: int, i: int, j: int):
        return self._triples.get(canonical(k, i, j), Fraction(0))

    @property
    def triples(self) -> dict:
        return dict(self._triples)

    def nonzero_triples(self) -> list[tuple]:
        return sorted(self._triples)

    def specialize(self, n0) -> "IsotropyDecomposition":
        return IsotropyDecomposition(
            [_value_at(d, n0) for d in self.dims],
            {k: _value_at(v, n0) for k, v in self._triples.items()},
            self.labels, None, self.name, self.variables)

    def to_json_dict(self) -> dict:
        def enc(v):
            if isinstance(v, Fraction):
                return str(v)
            return {"expr": str(v)}

        return {
            "name": self.name,
            "labels": self.labels,
            "variables": list(self.variables),
            "dims": [enc(d) for d in self.dims],
            "triples": [{"k": list(k), "value": enc(v)} for k, v in sorted(self._triples.items())],
            "validity": list(self.validity) if self.validity else None,
        }

    def __repr__(self) -> str:
        return f"IsotropyDecomposition({self.name or self.labels}, dims={[str(d) for d in self.dims]})"


@dataclass
class ValidationReport:
    valid: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.valid


def _positive(v, n0=None) -> bool | None:
    """True/False when decidable, None for symbolic values without a test point."""
    try:
        x = _value_at(v, n0)
    except PoleError:
        return False
    if _is_numeric(x):
        return x > 0
    return None


def validate_decomposition(d: IsotropyDecomposition, sample_n: Sequence | None = None) -> ValidationReport:
    """Symmetry closure, positive dimensions and non-negative triples.

    Parametric data is checked at ``sample_n`` (defaults to the first few
    values of the validity range).
    """
    violations = []
    for c, a, b in d.conflicts:
        violations.append(f"triple orbit {c} has inconsistent values {a} and {b}")
    if sample_n is None:
        if d.validity:
            lo = d.validity[0]
            hi = d.validity[1] if d.validity[1] is not None else lo + 10
            sample_n = range(lo, min(hi, lo + 10) + 1)
        else:
            sample_n = [None]
    for n0 in sample_n:
        for k, dim in enumerate(d.dims):
            ok = _positive(dim, n0)
            if ok is False:
                violations.append(f"dimension of {d.labels[k]} not positive at n={n0}")
        for key, v in d.triples.items():
            x = _value_at(v, n0)
            if _is_numeric(x) and x < 0:
                violations.append(f"negative triple {key} at n={n0}")
    # the raw table must agree on every permutation that was supplied
    for key, v in d.raw_triples.items():
        for perm in set(permutations(key)):
            if perm in d.raw_triples and d.raw_triples[perm] != v:
                violations.append(f"triples {key} and {perm} differ")
    return ValidationReport(not violations, sorted(set(violations)))
