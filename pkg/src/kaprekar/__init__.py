"""Generalized Kaprekar routine in base 10: digit steps, parametric classes,
parametric maps, class graphs and order-r equivalences."""

from .core import DigitNumber, kaprekar_step, make_number, orbit, params
from .parametric import FamilyTag, ParamVector, apply_f, classify

__all__ = [
    "DigitNumber",
    "FamilyTag",
    "ParamVector",
    "apply_f",
    "classify",
    "kaprekar_step",
    "make_number",
    "orbit",
    "params",
]
