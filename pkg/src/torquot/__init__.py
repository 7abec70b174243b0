"""Exact toric certificates for the 1/3(1,2,...,1,2) quotient model."""

from .cohomvec import CohomologyVector
from .lattice import (CapacityError, Cone, HilbertBasis, Lattice, LatticeError,
                      LatticePoint, dual_cone, hilbert_basis, is_regular, pair,
                      quotient_lattice)
from .fans import (Fan, FanError, MonomialIdeal, SNCReport, TDivisor,
                   canonical_divisor, curve_degree, discrepancy, fan_from_text,
                   fan_to_text, is_complete, is_smooth, normal_fan_blowup,
                   projbundle_fan, projective_space_fan, product_fan,
                   snc_certificate, star_fan, star_fan_of_cone,
                   support_equals_cone, vanishing_order)
from .faniso import fan_isomorphic
from .cech import line_bundle_cohomology
from .sheaves import (ProjBundleData, PropagationError, bott_forms, bott_line,
                      les_solve, line_twist_cohomology, sym_decompose,
                      verify_deformation_vanishings)
from .model import (QuotientData, build_model, expected_fan,
                    generator_exponents_closed_form, invariant_ideal,
                    model_lattice, orthant_cone, verify_model)
from .report import CertificateReport, CheckResult

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
