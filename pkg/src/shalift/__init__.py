"""Strictification of homotopy actions of finite-dimensional algebras on bounded complexes."""

from .algebra import Algebra, ModuleRep, Report, algebra_validate, module_validate, tensor_module
from .bar import (BimoduleComplex, Certificate, adjunction_unit, build_bar_bimodule, compare_lifts,
                  h_unitality_check, hochschild_check, restrict_R)
from .complexes import (Complex, GradedMap, chain_map_validate, complex_validate, homology, is_quasi_iso,
                        nullhomotopy_solve, truncate_smart)
from .errors import (ComparisonFailed, InputError, InternalSignError, NoHomotopy, ShaliftError, TodaViolation,
                     UnitNotHomotopicToIdentity)
from .field import Field
from .lift import (HomotopyActionInput, build_m2_m3, build_m4_special, complete_action, lift_action,
                   normalize_unit, toda_condition)
from .linalg import Matrix
from .pipeline import special_case_deg01, special_case_deg012, strictify, verify_certificate
from .sha import StrongHomotopyAction, check_b_squared, check_sha_morphism, check_sha_relations

__version__ = "0.1.0"

__all__ = [
    "Algebra", "ModuleRep", "Report", "algebra_validate", "module_validate", "tensor_module",
    "BimoduleComplex", "Certificate", "adjunction_unit", "build_bar_bimodule", "compare_lifts",
    "h_unitality_check", "hochschild_check", "restrict_R",
    "Complex", "GradedMap", "chain_map_validate", "complex_validate", "homology", "is_quasi_iso",
    "nullhomotopy_solve", "truncate_smart",
    "ComparisonFailed", "InputError", "InternalSignError", "NoHomotopy", "ShaliftError", "TodaViolation",
    "UnitNotHomotopicToIdentity",
    "Field", "HomotopyActionInput", "build_m2_m3", "build_m4_special", "complete_action", "lift_action",
    "normalize_unit", "toda_condition", "Matrix",
    "special_case_deg01", "special_case_deg012", "strictify", "verify_certificate",
    "StrongHomotopyAction", "check_b_squared", "check_sha_morphism", "check_sha_relations",
]
