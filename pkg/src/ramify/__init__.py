"""Branched coverings of the Riemann sphere: rational maps, passports,
monodromy, local lifting, and the integer invariants of surfaces whose Gauss
map omits values."""
from .errors import *  # noqa: F401,F403
from .fgt import (CheckReport, EndRecord, FgtRecord, LiftedRecord, bend, check_branched_covering,
                  check_missed_fiber, check_rh, check_tc, classify_covering, enumerate_admissible,
                  no_extension_two_missed, obstruct_three_missed, omitted_value_consequences)
from .lifting import c0_extension_divisibility, local_lift, passport_lift_feasibility
from .monodromy import MonodromyRep, monodromy_rep
from .parsing import parse_map, parse_point, parse_points
from .picard import check_converse, construct, construct_for_targets, picard_map
from .polynomial import Polynomial
from .rational_map import (Passport, RationalMap, critical_points, degree, fiber, local_degree,
                           passport_over)
from .scalars import GaussianRational
from .sphere import INF, MobiusTransform, SpherePoint, chordal_distance, mobius_sending_three, pt

__version__ = "0.1.0"
