"""Exact-arithmetic toolkit for the supersingular/superspecial dictionary.

Geometric side: enumerate the supersingular locus at a prime with its Galois
involution (sslocus).  Arithmetic side: exact mass and class-number formulas
(massform, exactnum).  Both sides of the finite-model Selberg-style trace
formula (cosettrace).  Field and polynomial substrate (ffield, fppoly), batch
CLI (cli), acceptance suite (acceptance).
"""

from .cosettrace import (FiniteGroupModel, TraceReport, build_model, delta_sets,
                         double_cosets, factored_trace, involution_census,
                         kernel_trace, orbital_trace, volume_identity_check)
from .exactnum import BernoulliTable, BigRational, bernoulli, zeta_negative
from .ffield import Fp2Element, Fp2Field, canonical_nonresidue, frobenius, lambda_to_j
from .finitegroup import Group, group_from_kind
from .fppoly import FpPoly, hasse_poly, roots_in_fp2
from .massform import (GenusKind, MassParams, MassResult, class_number_level,
                       component_genus, gsp_order, nonprincipal_class_number_level,
                       principal_mass, recover_type_number)
from .sslocus import (Census, CensusCache, census, class_number_crosscheck,
                      eichler_mass, trace_R_pi0, type_number)

__all__ = [
    "BernoulliTable", "BigRational", "bernoulli", "zeta_negative",
    "Fp2Element", "Fp2Field", "canonical_nonresidue", "frobenius", "lambda_to_j",
    "FpPoly", "hasse_poly", "roots_in_fp2",
    "Census", "CensusCache", "census", "class_number_crosscheck", "eichler_mass",
    "trace_R_pi0", "type_number",
    "GenusKind", "MassParams", "MassResult", "class_number_level",
    "component_genus", "gsp_order", "nonprincipal_class_number_level",
    "principal_mass", "recover_type_number",
    "Group", "group_from_kind",
    "FiniteGroupModel", "TraceReport", "build_model", "delta_sets",
    "double_cosets", "factored_trace", "involution_census", "kernel_trace",
    "orbital_trace", "volume_identity_check",
]

__version__ = "0.1.0"
