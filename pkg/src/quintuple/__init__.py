"""Exact formal-series verification of the quintuple product identity,
its two semi-finite forms and the finite-n identities connecting them."""

from .series import (Monomial, NotAUnit, OrderOutOfRange, QZSeries, TruncationOverflow,
                     add, coeff, equal_up_to, invert, min_q_order, monomial, mul,
                     subst_z_qshift)
from .qprod import Divergent, poch_finite, poch_inf, poch_inf_step
from .identities import VerifyReport, list_identities, verify, verify_all

__all__ = [
    "Monomial", "QZSeries", "NotAUnit", "OrderOutOfRange", "TruncationOverflow", "Divergent",
    "add", "coeff", "equal_up_to", "invert", "min_q_order", "monomial", "mul",
    "subst_z_qshift", "poch_finite", "poch_inf", "poch_inf_step",
    "VerifyReport", "list_identities", "verify", "verify_all",
]
