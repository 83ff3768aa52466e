"""Exact arithmetic: rationals, Q(n), sparse multivariate and Laurent polynomials."""

from .laurent import LaurentPoly
from .multipoly import (MultiPoly, VariableMismatchError, coerce_coefficient,
                        equal_up_to_scalar, exact_divide)
from .orders import GREVLEX, GRLEX, LEX, MonomialOrder, get_order
from .param import ParamCoefficient, ParamPoly, PoleError, specialize_coefficient
from .parse import ParseError, parse_laurent, parse_param, parse_poly
from .ratfunc import RationalFunction
from .rational import Rational, decimal_str, rational_str, to_rational
from .serialize import dumps, from_json_dict, loads, to_json_dict

__all__ = [
    "LaurentPoly", "MultiPoly", "VariableMismatchError", "coerce_coefficient",
    "equal_up_to_scalar", "exact_divide", "GREVLEX", "GRLEX", "LEX", "MonomialOrder",
    "get_order", "ParamCoefficient", "ParamPoly", "PoleError", "specialize_coefficient",
    "ParseError", "parse_laurent", "parse_param", "parse_poly", "RationalFunction",
    "Rational", "decimal_str", "rational_str", "to_rational", "dumps", "from_json_dict",
    "loads", "to_json_dict",
]
