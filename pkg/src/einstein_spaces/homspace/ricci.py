"""Ricci components, scalar curvature and Einstein systems from bracket data.

For a metric x_1 B|m_1 + ... + x_q B|m_q the Ricci components are

    r_k = 1/(2 x_k) + 1/(4 d_k) sum_{i,j} [k|ij] x_k/(x_i x_j)
                    - 1/(2 d_k) sum_{i,j} [j|ki] x_j/(x_k x_i)

with both sums over all ordered pairs (i, j).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..polycore import LaurentPoly, MultiPoly
from .decomposition import IsotropyDecomposition, validate_decomposition


class InvalidDecompositionError(ValueError):
    pass


class DisconnectedPairingError(ValueError):
    pass


def _mono(variables, exps: Mapping[int, int], coeff) -> LaurentPoly:
    e = [0] * len(variables)
    for i, k in exps.items():
        e[i] += k
    return LaurentPoly(variables, {tuple(e): coeff})


def ricci_components(d: IsotropyDecomposition, check: bool = True) -> list[LaurentPoly]:
    if check:
        rep = validate_decomposition(d)
        if not rep:
            raise InvalidDecompositionError("; ".join(rep.violations))
    V = d.variables
    q = d.q
    out = []
    for k in range(q):
        terms: dict[tuple, object] = {}

        def add(exps, c):
            e = [0] * q
            for i, x in exps:
                e[i] += x
            e = tuple(e)
            terms[e] = terms[e] + c if e in terms else c

        add([(k, -1)], Fraction(1, 2))
        a = 1 / (4 * d.dims[k])
        b = 1 / (2 * d.dims[k])
        for i in range(q):
            for j in range(q):
                t = d.triple(k, i, j)
                if t:
                    add([(k, 1), (i, -1), (j, -1)], a * t)
                t = d.triple(j, k, i)
                if t:
                    add([(j, 1), (k, -1), (i, -1)], -b * t)
        out.append(LaurentPoly(V, terms))
    return out


def scalar_curvature(d: IsotropyDecomposition, components: Sequence[LaurentPoly] | None = None) -> LaurentPoly:
    """S = sum_k d_k r_k."""
    rs = components if components is not None else ricci_components(d)
    total = LaurentPoly.zero(d.variables)
    for dk, r in zip(d.dims, rs):
        total = total + r * dk
    return total


def scalar_curvature_formula(d: IsotropyDecomposition) -> LaurentPoly:
    """(1/2) sum_k d_k/x_k - (1/4) sum_{i,j,k} [k|ij] x_k/(x_i x_j)."""
    V, q = d.variables, d.q
    total = LaurentPoly.zero(V)
    for k in range(q):
        total = total + _mono(V, {k: -1}, d.dims[k] / 2)
    for k in range(q):
        for i in range(q):
            for j in range(q):
                t = d.triple(k, i, j)
                if t:
                    e = {k: 1}
                    e[i] = e.get(i, 0) - 1
                    e[j] = e.get(j, 0) - 1
                    total = total - _mono(V, e, t / 4)
    return total


def scalar_identity_holds(d: IsotropyDecomposition) -> bool:
    return scalar_curvature(d) == scalar_curvature_formula(d)


@dataclass
class EinsteinSystem:
    equations: list
    variables: tuple
    normalization: dict
    pairing: list
    provenance: dict = field(default_factory=dict)
    scalars: list = field(default_factory=list)

    def specialize(self, n0) -> "EinsteinSystem":
        prov = dict(self.provenance)
        prov["n"] = n0
        return EinsteinSystem([e.specialize(n0) for e in self.equations], self.variables,
                              self.normalization, self.pairing, prov)

    def to_json_dict(self) -> dict:
        from ..polycore import to_json_dict
        return {
            "provenance": {k: str(v) for k, v in self.provenance.items()},
            "normalization": {k: str(v) for k, v in self.normalization.items()},
            "pairing": [list(p) for p in self.pairing],
            "variables": list(self.variables),
            "equations": [to_json_dict(e) for e in self.equations],
        }


def _connected(q: int, pairing) -> bool:
    parent = list(range(q))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for i, j in pairing:
        parent[find(i)] = find(j)
    return len({find(i) for i in range(q)}) == 1


def resolve_index(d: IsotropyDecomposition, key) -> int:
    if isinstance(key, int):
        return key
    for lst in (d.variables, d.labels):
        if key in lst:
            return list(lst).index(key)
    raise KeyError(f"unknown summand {key!r}")


def cleared_difference(ri: LaurentPoly, rj: LaurentPoly, normalization: Mapping[str, object],
                       keep: Sequence[str], order="lex") -> tuple[object, MultiPoly]:
    """Numerator of r_i - r_j after pinning the normalization; returns (content, primitive)."""
    diff = (ri - rj).substitute_values(normalization)
    if not diff:
        return Fraction(0), MultiPoly.zero(keep, order)
    num = diff.clear_denominators(keep, order)
    return num.content_primitive()


def einstein_system(d: IsotropyDecomposition, normalization: Mapping[str, object] | None = None,
                    pairing: Sequence | None = None, order="lex", provenance=None,
                    components: Sequence[LaurentPoly] | None = None) -> EinsteinSystem:
    """Cleared numerators of r_i - r_j for each pair, content-normalized.

    ``pairing`` defaults to the consecutive chain (0,1), (1,2), ...; indices
    may be ints, variable names or labels. ``normalization`` pins variables
    (e.g. ``{"x23": 1}``) before clearing.
    """
    normalization = dict(normalization or {})
    if pairing is None:
        pairing = [(i, i + 1) for i in range(d.q - 1)]
    pairs = [(resolve_index(d, a), resolve_index(d, b)) for a, b in pairing]
    if d.q > 1 and not _connected(d.q, pairs):
        raise DisconnectedPairingError(f"pairing {pairing} does not connect all summands")
    rs = components if components is not None else ricci_components(d)
    keep = tuple(v for v in d.variables if v not in normalization)
    eqs, scalars = [], []
    for i, j in pairs:
        content, prim = cleared_difference(rs[i], rs[j], normalization, keep, order)
        eqs.append(prim)
        scalars.append(content)
    prov = {"case": d.name}
    prov.update(provenance or {})
    return EinsteinSystem(eqs, keep, normalization, pairs, prov, scalars)


def is_einstein(d: IsotropyDecomposition, x: Mapping[str, object], n0=None,
                components: Sequence[LaurentPoly] | None = None) -> bool:
    rs = components if components is not None else ricci_components(d)
    vals = [r.evaluate(x, n0) for r in rs]
    return all(v == vals[0] for v in vals)
