"""Buchberger engine on packed monomials.

Monomials are encoded as a single non-negative integer that is a *linear*
function of the exponent vector, chosen so that integer comparison agrees
with the monomial order. Multiplying monomials is then integer addition.

    lex      fields (e1, e2, ..., en)
    grevlex  fields (deg, e1+..+e_{n-1}, e1+..+e_{n-2}, ..., e1)
    grlex    fields (deg, e1, ..., e_{n-1})

Each field gets ``BITS`` bits, far more than any degree reached here.

Over Q the engine works fraction-free: polynomials are primitive with
integer (mpz) coefficients and a positive leading coefficient, and reduction
scales the working polynomial instead of dividing. Over Q(n) polynomials
are kept monic.
"""

from __future__ import annotations

import heapq
import logging
import os
from dataclasses import dataclass, field

import gmpy2

BITS = 32
MASK = (1 << BITS) - 1

log = logging.getLogger(__name__)


class GroebnerBudgetError(RuntimeError):
    """A resource cap was hit; the computation was abandoned, not truncated."""


class Packer:
    def __init__(self, nvars: int, order: str):
        if order not in ("lex", "grevlex", "grlex"):
            raise ValueError(order)
        self.n = nvars
        self.order = order

    def _fields(self, e):
        n = self.n
        if self.order == "lex" or n == 0:
            return e
        d = sum(e)
        if self.order == "grlex":
            return (d,) + tuple(e[: n - 1])
        out = [d]
        s = sum(e[: n - 1])
        for k in range(n - 1, 0, -1):
            out.append(s)
            s -= e[k - 1]
        return tuple(out)

    def pack(self, e) -> int:
        key = 0
        for f in self._fields(e):
            key = (key << BITS) | f
        return key

    def unpack(self, key: int) -> tuple:
        n = self.n
        fields = [0] * n
        for i in range(n - 1, -1, -1):
            fields[i] = key & MASK
            key >>= BITS
        if self.order == "lex" or n == 0:
            return tuple(fields)
        d = fields[0]
        if self.order == "grlex":
            return tuple(fields[1:]) + (d - sum(fields[1:]),)
        # fields[j] = e1+..+e_{n-j} for j >= 1
        partial = [0] + [fields[j] for j in range(n - 1, 0, -1)] + [d]
        return tuple(partial[i + 1] - partial[i] for i in range(n))


def _divides(a, b) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a, b) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class Poly:
    """Leading key/exponent plus descending tail terms.

    ``lc`` is None for monic polynomials; in integer mode it holds the
    leading coefficient of the primitive integer polynomial.
    """

    __slots__ = ("lm", "lexp", "tail", "index", "lc")

    def __init__(self, lm, lexp, tail, index=-1, lc=None):
        self.lm = lm
        self.lexp = lexp
        self.tail = tail
        self.index = index
        self.lc = lc

    def __len__(self):
        return len(self.tail) + 1


def make_monic(terms: dict, packer: Packer, one):
    """dict key->coeff (nonzero) to a monic Poly; returns (Poly, leading coeff)."""
    keys = sorted(terms, reverse=True)
    lk = keys[0]
    lc = terms[lk]
    inv = one / lc
    tail = [(k, terms[k] * inv) for k in keys[1:]]
    return Poly(lk, packer.unpack(lk), tail), lc


def make_primitive(terms: dict, packer: Packer):
    """dict key->mpz (nonzero) to a primitive Poly with positive lc."""
    keys = sorted(terms, reverse=True)
    g = gmpy2.mpz(0)
    for c in terms.values():
        g = gmpy2.gcd(g, c)
        if g == 1:
            break
    if terms[keys[0]] < 0:
        g = -g
    if g != 1:
        terms = {k: c // g for k, c in terms.items()}
    return Poly(keys[0], packer.unpack(keys[0]), [(k, terms[k]) for k in keys[1:]], lc=terms[keys[0]])


@dataclass
class Stats:
    pairs_total: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    skipped_coprime: int = 0
    skipped_chain: int = 0
    basis_peak: int = 0
    reduction_steps: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass
class Budget:
    max_pairs: int | None = None
    max_terms: int | None = None

    @classmethod
    def resolve(cls, max_pairs=None, max_terms=None) -> "Budget":
        if max_pairs is None:
            max_pairs = int(os.environ.get("SPACES_GB_MAX_PAIRS", "200000"))
        if max_terms is None:
            max_terms = int(os.environ.get("SPACES_GB_MAX_TERMS", "20000000"))
        return cls(max_pairs, max_terms)


class Reducer:
    """Division by a list of monic polynomials with the fixed tie-break.

    Candidates are scanned in ascending (leading key, index); the first one
    whose leading monomial divides the current term is used.
    """

    def __init__(self, polys: list[Poly]):
        self.polys = sorted(polys, key=lambda p: (p.lm, p.index))

    def find(self, e):
        for p in self.polys:
            if _divides(p.lexp, e):
                return p
        return None

    def reduce(self, work: dict, packer: Packer, stats: Stats | None = None,
               quotients: dict | None = None, top_only: bool = False):
        """Fully reduce ``work`` (consumed). Returns remainder dict."""
        heap = [-k for k in work]
        heapq.heapify(heap)
        rem = {}
        steps = 0
        unpack = packer.unpack
        find = self.find
        while heap:
            k = -heapq.heappop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            g = find(unpack(k))
            if g is None:
                rem[k] = c
                if top_only:
                    rem.update(work)
                    return rem
                continue
            steps += 1
            m = k - g.lm
            if quotients is not None:
                q = quotients.setdefault(g.index, {})
                q[m] = q[m] + c if m in q else c
            get = work.get
            for gk, gc in g.tail:
                nk = gk + m
                v = get(nk)
                if v is None:
                    work[nk] = -(c * gc)
                    heapq.heappush(heap, -nk)
                else:
                    v = v - c * gc
                    if v:
                        work[nk] = v
                    else:
                        del work[nk]
        if stats is not None:
            stats.reduction_steps += steps
        return rem

    def reduce_integer(self, work: dict, packer: Packer, stats: Stats | None = None) -> dict:
        """Fraction-free full reduction of an mpz dict (consumed).

        The result is a nonzero integer multiple of the true remainder;
        callers take the primitive part.
        """
        heap = [-k for k in work]
        heapq.heapify(heap)
        rem = []  # (key, coeff, scale in force when the term was stored)
        scale = gmpy2.mpz(1)
        steps = 0
        unpack = packer.unpack
        find = self.find
        gcd = gmpy2.gcd
        while heap:
            k = -heapq.heappop(heap)
            c = work.pop(k, None)
            if c is None:
                continue
            g = find(unpack(k))
            if g is None:
                rem.append((k, c, scale))
                continue
            steps += 1
            a = g.lc
            d = gcd(c, a)
            if d != 1:
                a //= d
                c //= d
            if a != 1:
                for key in work:
                    work[key] *= a
                scale *= a
            m = k - g.lm
            get = work.get
            for gk, gc in g.tail:
                nk = gk + m
                v = get(nk)
                if v is None:
                    work[nk] = -(c * gc)
                    heapq.heappush(heap, -nk)
                else:
                    v = v - c * gc
                    if v:
                        work[nk] = v
                    else:
                        del work[nk]
        if stats is not None:
            stats.reduction_steps += steps
        return {k: c * (scale // s) for k, c, s in rem}


def s_poly_terms(f: Poly, g: Poly, packer: Packer) -> dict:
    L = packer.pack(_lcm(f.lexp, g.lexp))
    mf = L - f.lm
    mg = L - g.lm
    af = bg = None
    if f.lc is not None:
        d = gmpy2.gcd(f.lc, g.lc)
        af, bg = g.lc // d, f.lc // d
    out = {}
    for k, c in f.tail:
        out[k + mf] = c if af is None else c * af
    for k, c in g.tail:
        nk = k + mg
        if bg is not None:
            c = c * bg
        v = out.get(nk)
        if v is None:
            out[nk] = -c
        else:
            v = v - c
            if v:
                out[nk] = v
            else:
                del out[nk]
    return out


def _update(G: list[int], B: list, ih: int, polys: list[Poly], stats: Stats):
    """Gebauer-Moeller installation of a new basis element ``ih``."""
    h = polys[ih]
    mh = h.lexp
    C = list(G)
    D = []
    while C:
        ig = C.pop()
        mg = polys[ig].lexp
        if _coprime(mh, mg):
            D.append(ig)
            continue
        lhg = _lcm(mh, mg)
        dominated = any(_divides(_lcm(mh, polys[j].lexp), lhg) for j in C) or \
            any(_divides(_lcm(mh, polys[j].lexp), lhg) for j in D)
        if dominated:
            stats.skipped_chain += 1
        else:
            D.append(ig)
    E = []
    for ig in D:
        if _coprime(mh, polys[ig].lexp):
            stats.skipped_coprime += 1
        else:
            E.append((ig, ih))
    B_new = []
    for (i, j) in B:
        mi, mj = polys[i].lexp, polys[j].lexp
        lij = _lcm(mi, mj)
        if not _divides(mh, lij) or _lcm(mi, mh) == lij or _lcm(mj, mh) == lij:
            B_new.append((i, j))
        else:
            stats.skipped_chain += 1
    B_new.extend(E)
    G_new = [ig for ig in G if not _divides(mh, polys[ig].lexp)]
    G_new.append(ih)
    return G_new, B_new


def _pair_key(pair, polys, packer, strategy):
    i, j = pair
    L = _lcm(polys[i].lexp, polys[j].lexp)
    if strategy == "degree":
        return (sum(L), packer.pack(L), min(i, j), max(i, j))
    return (packer.pack(L), min(i, j), max(i, j))


STRATEGIES = ("normal", "degree")


def buchberger(gens: list[dict], packer: Packer, one, budget: Budget,
               stats: Stats | None = None, strategy: str = "normal",
               integer: bool = False) -> list[Poly]:
    """Reduced Groebner basis (sorted by descending leading key).

    With ``integer`` the inputs hold mpz coefficients and the output
    polynomials are primitive (``lc`` set); otherwise they are monic.

    ``normal`` selects the pair whose lcm is smallest in the term order;
    ``degree`` compares total degree of the lcm first (identical for graded
    orders). Ties go to the lower indices.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    stats = stats if stats is not None else Stats()
    polys: list[Poly] = []
    G: list[int] = []
    B: list = []
    total_terms = 0

    def install(terms: dict):
        nonlocal G, B, total_terms
        p = make_primitive(terms, packer) if integer else make_monic(terms, packer, one)[0]
        p.index = len(polys)
        polys.append(p)
        total_terms += len(p)
        if budget.max_terms is not None and total_terms > budget.max_terms:
            raise GroebnerBudgetError(
                f"term budget exceeded ({total_terms} > {budget.max_terms})")
        G, B = _update(G, B, p.index, polys, stats)
        stats.basis_peak = max(stats.basis_peak, len(G))

    # inter-reduce the input first, smallest leading monomial first
    start = sorted((g for g in gens if g), key=lambda t: max(t))
    for g in start:
        red = _reduce(Reducer([polys[i] for i in G]), dict(g), packer, stats, integer)
        if red:
            install(red)
            if polys[-1].lm == 0:
                break

    while B:
        if any(polys[i].lm == 0 for i in G):
            break  # unit ideal
        best = min(B, key=lambda pr: _pair_key(pr, polys, packer, strategy))
        B.remove(best)
        stats.pairs_total += 1
        if budget.max_pairs is not None and stats.pairs_total > budget.max_pairs:
            raise GroebnerBudgetError(
                f"pair budget exceeded ({stats.pairs_total} > {budget.max_pairs})")
        i, j = best
        s = s_poly_terms(polys[i], polys[j], packer)
        if not s:
            stats.zero_reductions += 1
            continue
        red = _reduce(Reducer([polys[k] for k in G]), s, packer, stats, integer)
        stats.pairs_reduced += 1
        if not red:
            stats.zero_reductions += 1
            continue
        install(red)
        log.debug("pair %s: new element, lm=%s, %d terms, |G|=%d, |B|=%d",
                  best, polys[-1].lexp, len(polys[-1]), len(G), len(B))

    return _interreduce([polys[i] for i in G], packer, one, integer)


def _reduce(reducer: Reducer, work: dict, packer: Packer, stats: Stats, integer: bool) -> dict:
    if integer:
        return reducer.reduce_integer(work, packer, stats)
    return reducer.reduce(work, packer, stats)


def _interreduce(basis: list[Poly], packer: Packer, one, integer: bool = False) -> list[Poly]:
    if any(p.lm == 0 for p in basis):
        return [Poly(0, packer.unpack(0), [], 0, gmpy2.mpz(1) if integer else None)]
    # minimal basis: drop elements whose leading monomial is divisible by another
    basis = sorted(basis, key=lambda p: p.lm)
    minimal: list[Poly] = []
    for p in basis:
        if not any(_divides(q.lexp, p.lexp) for q in minimal):
            minimal.append(p)
    out = []
    for p in minimal:
        others = Reducer([q for q in minimal if q is not p])
        if integer:
            work = dict(p.tail)
            work[p.lm] = p.lc
            # the leading term is irreducible, so it survives scaled
            q = make_primitive(others.reduce_integer(work, packer), packer)
        else:
            tail = others.reduce(dict(p.tail), packer)
            terms = {p.lm: one}
            terms.update(tail)
            q, _ = make_monic(terms, packer, one)
        out.append(q)
    out.sort(key=lambda p: p.lm, reverse=True)
    for i, p in enumerate(out):
        p.index = i
    return out
