"""Exact computations with representations of bound quiver algebras.

Covers path algebras with relations, modules and their maps, syzygies and
Ext, Auslander-Reiten theory for representation-finite algebras, cluster
tilting subcategories, and machine checks of the equivalences between
quotient categories and modules over stable endomorphism algebras.
"""

__version__ = "0.1.0"

from .exactla import QQ, GF, Mat, parse_field
from .algebra import Algebra, Arrow, Quiver, Relation, build_algebra, gabriel_quiver, opposite
from .repmod import (
    Module, ModuleMap, decompose, direct_sum, dual, find_isomorphism, hom_space, is_indecomposable,
    is_isomorphic,
)
from .homology import (
    costable_hom, cosyzygy, ext, ext_dim, injective, projective, simple, stable_hom, syzygy,
)
from .artheory import ar_quiver, ar_sequence, tau, tau_minus, tau_n, tau_n_minus, transpose
from .cluster import (
    Subcategory, compute_M_L, compute_M_R, generate_by_tau_orbit, is_cluster_tilting, is_rigid,
    omega_bar_M, omega_M, perp_left, perp_right, subcategory,
)
from .equivfun import (
    GammaAlgebra, QuotientCategory, functor_F, functor_G, mu, pseudokernel, quotient_hom,
    stable_endo_algebra, verify_equivalence, verify_square,
)
from .formats import load_algebra, load_module
