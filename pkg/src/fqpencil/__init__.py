"""fqpencil: finite-field curve pencils, irreducible-specialization counting
and effective bound verification."""

from .bivar import (BivariatePoly, CurveReport, curve_invariants,
                    homogenize_and_degree, is_smooth)
from .counting import (BoundReport, CountReport, GaloisData,
                       SpecializationResult, application_bound,
                       count_irreducible_pairs, find_specialization,
                       galois_parameters, geyer_jarden_rhs,
                       geyer_jarden_rhs_bounds, verify_application)
from .errors import FqPencilError
from .field import Field, embed, field_of_order, make_field
from .lifting import IrreducibilityCertificate, bivariate_irreducible
from .parsing import parse_poly, parse_univariate
from .pencil import (FiberPattern, PatternHistogram, PencilDescriptor,
                     branch_loci_disjoint, fiber_pattern, find_generic_point,
                     is_generic_point, pattern_histogram, pencil_discriminant)
from .reducible import ConradInstance, conrad_polynomial, verify_conrad
from .unipoly import (UnivariatePoly, count_monic_irreducibles, discriminant,
                      factor, is_irreducible, resultant, squarefree_part)

__version__ = "1.0.0"

__all__ = [name for name in dir() if not name.startswith("_")]
