"""Set families whose k-wise intersection sizes follow a residue pattern."""

from .bounds import b2, upper_bound
from .constructions import ConstructionSpec, build, catalog, served_pattern, solve_anm_params
from .errors import (CapExceeded, DuplicateMembersError, GroundError, NotTabulated, ParameterError,
                     PreconditionError, TownsError, UnsupportedPattern, UsageError)
from .family import (STAR, Pattern, PatternClass, SetFamily, Violation, classify_pattern,
                     find_violation, intersection_size, pattern_dual, pattern_sum, verify_pattern)
from .gf2 import Gf2Matrix, characteristic_matrix, check_claim_a2, isotropic_count, rank, span_dims
from .io import load_family, save_family
from .reference import ReferenceBound, reference_value
from .search import SearchConfig, SearchResult, candidate_universe, max_family, oracle_max
from .transforms import complement_family, dualize, partition_sum, restrict_outside, trace

__version__ = "0.1.0"
