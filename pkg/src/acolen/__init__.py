"""Colength asymptotics for families of monomial ideals."""
from .monomial import (AcolenError, ColonByZeroWarning, DimensionMismatchError, MonomialIdeal,
                       NotMPrimaryError, bracket_power, colength, colength_value, colon,
                       contains_ideal, contains_monomial, generalized_bracket_power, ideal_sum,
                       intersect, is_m_primary, normalize, num_min_gens, power,
                       power_containment_threshold, product)
from .parsing import IdealSyntaxError, format_ideal, parse_ideal, read_ideal
from .newton import (InexactVolumeWarning, closure_of_power, integral_closure,
                     newton_polyhedron, np_complement_volume, np_membership)
from .families import (FamilyEvaluator, FamilySpec, bracket, classify, closure_of, colon_of,
                       explicit, family_from_json, floor_power, generalized_bracket,
                       intersect_of, powers, product_of, sum_of, template)
from .asymptotics import (Report, colength_sequence, default_plan, height_sample,
                          hilbert_kunz, hilbert_samuel, limit_estimate, lipschitz_audit,
                          region_volume, scaled_region, trajectory_classify, verify_brosowsky,
                          verify_minkowski, verify_positivity, verify_volume_multiplicity)
from .charp import frobenius_converse_check, frobenius_cover_check, ok_basis, verify_ok_basis

__version__ = "0.1.0"
