"""Finite left regular bands and the homological algebra of their monoid algebras."""
from .complexes import (BettiVector, SimplicialComplex, clique_complex, cross_cut_complex,
                        is_chordal, leray_number, order_complex, reduced_betti)
from .constructions import (free_lrb, free_partially_commutative, karnofsky_rhodes,
                            quiver_lrb, real_face_monoid_from_covectors,
                            real_face_monoid_from_normals, rhodes_expansion)
from .core import (FinitePoset, Lrb, SupportLattice, interval_submonoid, r_order,
                   support_lattice, validate_lrb)
from .homological import ext_dims, global_dimension, quiver
from .linalg import QQ, Field
from .oracle import bar_ext, idempotents, oracle_crosscheck

__version__ = "0.1.0"
