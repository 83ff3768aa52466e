"""Monomial orders on exponent tuples.

A monomial is a plain tuple of non-negative ints aligned with a declared
variable sequence. Each order supplies a sort key; larger key means larger
monomial.
"""

from __future__ import annotations

from typing import Callable

Monomial = tuple[int, ...]


def _lex_key(m: Monomial):
    return m


def _grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def _grlex_key(m: Monomial):
    return (sum(m), m)


class MonomialOrder:
    __slots__ = ("name", "key")

    def __init__(self, name: str, key: Callable):
        self.name = name
        self.key = key

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = get_order(other)
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return self.name


LEX = MonomialOrder("lex", _lex_key)
GREVLEX = MonomialOrder("grevlex", _grevlex_key)
GRLEX = MonomialOrder("grlex", _grlex_key)

_ORDERS = {"lex": LEX, "grevlex": GREVLEX, "grlex": GRLEX, "degrevlex": GREVLEX}


def get_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    try:
        return _ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return not any(x and y for x, y in zip(a, b))
