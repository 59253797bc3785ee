"""Computable moduli of witch curves and their stratifying posets.

The package realizes compactified witch-curve moduli as exact objects:
``trees`` and ``treepair`` carry the combinatorics (rooted ribbon trees
and stable tree-pairs), ``strata`` builds the stratification posets,
``moduli`` holds exact-rational moduli points, ``limits`` computes
symbolic Gromov limits of degenerating Laurent families, and ``metric``
evaluates the chordal distance functionals defining the topology.
"""

from .errors import WitchModuliError
from .laurent import Laurent, ext_limit, t_power
from .limits import (
    GromovLimit,
    ReparamFamily1,
    ReparamFamily2,
    SmoothFamily,
    apply_gauge,
    check_gromov_convergence,
    classify_new_point,
    gromov_limit,
    insert_point,
    limit_disk_tree,
    smooth_family,
)
from .metric import MuWitness, chordal_d, mu_eps, mu_eps_with_data, rho_eps_with_data
from .moduli import (
    INF,
    DiskTree,
    ExtendedPoint,
    Reparam1,
    Reparam2,
    WitchCurve,
    apply_reparam,
    canonical_form,
    derived_point_x,
    derived_point_z,
    is_isomorphic,
    smooth_witch_curve,
    special_sets,
)
from .strata import StratumPoset, enumerate_k, enumerate_w, forgetful, poset_leq
from .treepair import (
    TreePair,
    TreePairSurjection,
    contiguous,
    enumerate_moves,
    from_disk_tree,
    smooth_tree_pair,
    tree_pair_surjections,
    validate_tree_pair,
)
from .trees import RRT, RRTSurjection, enumerate_stable_rrts, path, rrt_surjections, subtree_through, validate_rrt

__version__ = "0.1.0"
