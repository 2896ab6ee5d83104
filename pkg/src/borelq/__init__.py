"""Exact computations in the half quantum group U_q^{>=0}(g)."""
from __future__ import annotations

__version__ = "0.1.0"

from .scalars import GENERIC, Cyclotomic, RationalFunction, ScalarContext, q_binomial, q_factorial, q_int
from .cartan import (CartanDatum, PositiveRootFrame, cartan_datum, default_frame, kostant_dim,
                     longest_element, positive_root_frame, weyl_group)
from .algebra import (AlgebraElement, BasisCache, ReducedElement, UqBorel, dimension_check, pbw_check,
                      serre_check, smash_check)
from .hopf import BorelHopf, Tensor, antipode, antipode_inv, borel_axiom_check, counit, delta, hopf_axiom_check
from .quotient import FiniteHopf, QuotientSpec, quotient_spec
from .rmatrix import classify, solve_finite, solve_generic, sweedler_R, verify_qcc, witness_tensor
from .repmod import TensorSlice, TruncatedVerma, decompose_tensor, tensor_of_vermas
from .yd import BetaChar, build_H_beta_g, phi_invariants, yd_compatibility_check
from .expr import eval_borel, parse, to_text

__all__ = [name for name in dir() if not name.startswith("_")]
