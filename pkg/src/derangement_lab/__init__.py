"""Derangement graphs of transitive permutation groups and their EKR invariants."""

from .constructions import (build_agl2, build_cyclic_regular, build_example6, build_fourell,
                            build_gq, build_mq, build_on_pairs)
from .dgraph import build_graph, complete_multipartite_decomposition, derangement_set
from .errors import CapExceeded, DerangementLabError, InconsistencyError
from .gf import make_field
from .perm import Permutation, PermGroup, fix_subgroup, generate_group
from .solver import analyze, intersection_density, max_clique, max_coclique, two_p_clique

__version__ = "0.1.0"
