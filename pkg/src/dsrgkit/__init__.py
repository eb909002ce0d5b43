"""Construct, verify and search directed strongly regular graphs via pi-joins."""
from __future__ import annotations

from .digraph import Digraph, FormatError, complement, load_matrix, read_matrix, transpose, write_matrix
from .families import FamilySpec, expected_params, known_partitions, make_graph
from .params import ParameterSet, complement_params, feasibility_check, pi_join_params, spectrum
from .pijoin import (JoinSolution, Partition, build_pi_join, is_good_partition, measure_quotient,
                     pi_join_matrix, solve_eq1)
from .search import brute_force_partitions, find_good_partitions
from .verify import Equivalence, Kind, classify, equivalence, isomorphic

__version__ = "0.1.0"
