"""Exact bracket triples for so(N) block decompositions from explicit matrices.

Basis: E_ab = e_ab - e_ba (a < b). With B(X, Y) = (N-2) tr(XY) we have
-B(E_ab, E_ab) = 2(N-2), so e_ab = E_ab / sqrt(2(N-2)) is -B-orthonormal.
Brackets of the E's have integer coordinates c, and the normalized
structure constants satisfy A^2 = c^2 / (2(N-2)), which is rational.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from ..polycore import ParamCoefficient, ParamPoly
from .decomposition import IsotropyDecomposition


def _module_layout(blocks: Sequence[int], isotropy: Sequence[int]):
    """Index ranges of the blocks, and the list of metric modules.

    Modules: diagonal so(k_a) for blocks not in ``isotropy`` (skipped when
    k_a < 2, since so(1) = 0), then off-diagonal m_ab for a < b.
    """
    starts = np.cumsum([0] + list(blocks))[:-1]
    block_of = []
    for a, k in enumerate(blocks):
        block_of += [a] * k
    modules = []  # (label, var, kind, data)
    for a, k in enumerate(blocks):
        if a in isotropy or k < 2:
            continue
        modules.append((f"so({k})", f"x{a + 1}", "diag", a))
    for a, b in combinations(range(len(blocks)), 2):
        modules.append((f"m{a + 1}{b + 1}", f"x{a + 1}{b + 1}", "off", (a, b)))
    return starts, block_of, modules


def so_structure_constants(blocks: Sequence[int], isotropy: Sequence[int] = (),
                           name: str = "") -> IsotropyDecomposition:
    """Brute-force dims and [k|ij] for so(N), N = sum(blocks).

    ``isotropy`` lists the (0-based) diagonal blocks whose so(k) lies in the
    isotropy algebra; the remaining diagonal blocks become metric summands.
    """
    blocks = [int(k) for k in blocks]
    if any(k < 1 for k in blocks):
        raise ValueError("block sizes must be positive")
    N = sum(blocks)
    if N < 3:
        raise ValueError("so(N) needs N >= 3 for a nondegenerate Killing form")
    starts, block_of, modules = _module_layout(blocks, set(isotropy))

    pairs = list(combinations(range(N), 2))
    index = {p: i for i, p in enumerate(pairs)}

    def module_of(p):
        a, b = block_of[p[0]], block_of[p[1]]
        for m, (_, _, kind, data) in enumerate(modules):
            if kind == "diag" and a == b == data:
                return m
            if kind == "off" and {a, b} == set(data) and a != b:
                return m
        return None  # isotropy

    mod = [module_of(p) for p in pairs]
    basis = []
    for a, b in pairs:
        E = np.zeros((N, N), dtype=np.int64)
        E[a, b], E[b, a] = 1, -1
        basis.append(E)

    q = len(modules)
    sums = np.zeros((q, q, q), dtype=np.int64)
    for al in range(len(pairs)):
        ma = mod[al]
        if ma is None:
            continue
        for be in range(len(pairs)):
            mb = mod[be]
            if mb is None:
                continue
            C = basis[al] @ basis[be] - basis[be] @ basis[al]
            # coordinates in the E basis: coefficient of E_ab is C[a, b]
            rows, cols = np.nonzero(np.triu(C, 1))
            for r, c in zip(rows, cols):
                mg = mod[index[(int(r), int(c))]]
                if mg is not None:
                    sums[ma, mb, mg] += int(C[r, c]) ** 2
    scale = 2 * (N - 2)
    triples = {}
    for i in range(q):
        for j in range(q):
            for k in range(q):
                if sums[i, j, k]:
                    triples[(k, i, j)] = Fraction(int(sums[i, j, k]), scale)
    dims = []
    for label, var, kind, data in modules:
        if kind == "diag":
            k = blocks[data]
            dims.append(k * (k - 1) // 2)
        else:
            dims.append(blocks[data[0]] * blocks[data[1]])
    return IsotropyDecomposition(dims, triples, [m[0] for m in modules], None,
                                 name or f"so{tuple(blocks)}", [m[1] for m in modules])


def oracle_symmetric(d: IsotropyDecomposition) -> bool:
    """All supplied permutations of every triple agree (raw table check)."""
    raw = d.raw_triples
    for (k, i, j), v in raw.items():
        for perm in ((k, j, i), (j, k, i), (i, j, k), (i, k, j), (j, i, k)):
            if raw.get(perm, 0) != v:
                return False
    return True


def stiefel_decomposition(k1, k2, k3, name: str = "") -> IsotropyDecomposition:
    """Closed-form triples for so(k1+k2+k3) with metric summands
    so(k1), so(k2), m12, m13, m23 (so(k3) in the isotropy).

    Any of k1, k2, k3 may be a ParamPoly in n; summands so(k) with k = 1 are
    dropped. Values (all divided by 2(N-2)):
      [so(k1)|so(k1),so(k1)] = k1(k1-1)(k1-2)
      [so(k1)|m12,m12] = k1(k1-1)k2     [so(k1)|m13,m13] = k1(k1-1)k3
      [so(k2)|m12,m12] = k2(k2-1)k1     [so(k2)|m23,m23] = k2(k2-1)k3
      [m12|m13,m23] = k1 k2 k3
    and the same with so(k2) in place of so(k1) for the cubic term.
    """
    ks = [ParamCoefficient(k) if isinstance(k, ParamPoly) else Fraction(k) for k in (k1, k2, k3)]
    K1, K2, K3 = ks
    N = K1 + K2 + K3
    s = 1 / (2 * (N - 2))
    labels, variables, dims = [], [], []
    idx = {}
    for name_, var, k in (("so(k1)", "x1", K1), ("so(k2)", "x2", K2)):
        if isinstance(k, Fraction) and k < 2:
            continue
        idx[var] = len(labels)
        labels.append(name_)
        variables.append(var)
        dims.append(k * (k - 1) / 2)
    for lab, var, dim in (("m12", "x12", K1 * K2), ("m13", "x13", K1 * K3), ("m23", "x23", K2 * K3)):
        idx[var] = len(labels)
        labels.append(lab)
        variables.append(var)
        dims.append(dim)
    t = {}

    def put(a, b, c, v):
        if all(x in idx for x in (a, b, c)) and v:
            t[(idx[a], idx[b], idx[c])] = v * s

    put("x1", "x1", "x1", K1 * (K1 - 1) * (K1 - 2))
    put("x2", "x2", "x2", K2 * (K2 - 1) * (K2 - 2))
    put("x1", "x12", "x12", K1 * (K1 - 1) * K2)
    put("x1", "x13", "x13", K1 * (K1 - 1) * K3)
    put("x2", "x12", "x12", K2 * (K2 - 1) * K1)
    put("x2", "x23", "x23", K2 * (K2 - 1) * K3)
    put("x12", "x13", "x23", K1 * K2 * K3)
    return IsotropyDecomposition(dims, t, labels, None, name or "stiefel", variables)


def wallach_decomposition(l, m, n) -> IsotropyDecomposition:
    """SO(l+m+n)/(SO(l) x SO(m) x SO(n)): summands m12, m13, m23 and the one
    nonzero orbit [m23|m12,m13] = l m n / (2(l+m+n-2))."""
    l, m, n = Fraction(l), Fraction(m), Fraction(n)
    v = l * m * n / (2 * (l + m + n - 2))
    return IsotropyDecomposition([l * m, l * n, m * n], {(2, 0, 1): v}, ["m12", "m13", "m23"],
                                 None, f"wallach{(int(l), int(m), int(n))}", ["x12", "x13", "x23"])
