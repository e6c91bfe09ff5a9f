"""Exact region counting for integer deformations of the braid arrangement.

The arrangement attached to a finite offset set S has hyperplanes
x_i - x_j = k for k in S.  For transitive S its regions biject onto a set
of labeled (m+1)-ary trees, and the branch statistic on those trees
reproduces the absolute coefficients of the characteristic polynomial.
This package enumerates the trees, computes the polynomial by two
independent exact methods, and ships the closed forms, the Dyck-path
statistics, and a CLI for machine-checking all of it.
"""

from .offsets import OffsetSet, family, parse_spec
from .trees import (
    ArityError,
    DuplicateLabelError,
    Tree,
    TreeFormatError,
    TreeSyntaxError,
    cadet,
    drift,
    lsib,
    parse,
    serialize,
    trunk,
    twigs,
)
from .enumeration import (
    admissible_trees,
    branch_distribution,
    branch_nodes,
    compartment_distribution,
    compartments,
    count_admissible,
    decompose_branches,
    glue_branches,
    invert_lift,
    is_admissible,
    lift_disconnected,
    tree_shapes,
)
from .charpoly import (
    IntPolynomial,
    InterpolationGuardError,
    SignPatternError,
    abs_coefficients,
    chi_exponential,
    chi_finite_field,
    count_points,
    region_count,
)
from .catalan import (
    Triangle,
    coeff_moebius,
    coeff_trunk,
    forest_count,
    stirling_first,
    stirling_second,
    total_trees,
    triangle,
    trunk_shape_count,
    verify_inequalities,
)
from .dyck import (
    DyckPath,
    enumerate_paths,
    path_compartments,
    path_rl_maxima,
    path_to_tree,
    primitive_parts,
    tree_to_path,
)

__version__ = "0.1.0"
