"""Solving for unknown bracket triples from a prescribed Einstein metric."""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from ..polycore import RationalFunction
from .decomposition import IsotropyDecomposition
from .ricci import ricci_components


class DegenerateSolveError(ValueError):
    pass


def _solve_linear(A: list[list], b: list):
    """Gauss-Jordan elimination over any exact field; A is square."""
    n = len(A)
    M = [list(row) + [rhs] for row, rhs in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            raise DegenerateSolveError("singular linear system")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def _ricci_at(dims, triples, labels, variables, point):
    d = IsotropyDecomposition(dims, triples, labels, variables=variables)
    return [r.evaluate_generic(point) for r in ricci_components(d, check=False)]


def solve_brackets(dims: Sequence, known: Mapping[tuple, object], unknown: Sequence[tuple],
                   point: Mapping[str, object], variables=None, labels=None) -> dict:
    """Find values of the ``unknown`` triple orbits making ``point`` Einstein.

    Ricci components at a fixed point are affine in the triples, so this is
    a square linear system (consecutive differences r_k - r_{k+1}); the number
    of unknowns must equal q - 1.
    """
    q = len(dims)
    variables = tuple(variables) if variables is not None else tuple(f"x{i + 1}" for i in range(q))
    if len(unknown) != q - 1:
        raise DegenerateSolveError("need exactly q-1 unknown triples")

    def diffs(values):
        t = dict(known)
        t.update(zip(unknown, values))
        r = _ricci_at(dims, t, labels, variables, point)
        return [r[k] - r[k + 1] for k in range(q - 1)]

    zero = [Fraction(0)] * len(unknown)
    base = diffs(zero)
    cols = []
    for u in range(len(unknown)):
        e = list(zero)
        e[u] = Fraction(1)
        cols.append([x - y for x, y in zip(diffs(e), base)])
    A = [[cols[c][r] for c in range(len(unknown))] for r in range(q - 1)]
    sol = _solve_linear(A, [-x for x in base])
    return dict(zip(unknown, sol))


def bracket_from_kahler_einstein(d1, d2):
    """[2|11] for the two-summand case, from r_1 = r_2 at x = (1, 2)."""
    for d in (d1, d2):
        if isinstance(d, (int, Fraction)) and d <= 0:
            raise ValueError("dimensions must be positive")
    sol = solve_brackets([d1, d2], {}, [(1, 0, 0)], {"x1": 1, "x2": 2})
    return sol[(1, 0, 0)]


def symbolic_dims(*names: str) -> list[RationalFunction]:
    return [RationalFunction.symbol(s, names) for s in names]
