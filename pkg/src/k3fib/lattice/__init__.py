"""Even integer lattices and the constructive embedding procedures."""

from .core import (Lattice, LatticeError, DiscGroup, diagonalize, standard_lattice, root_lattice,
                   direct_sum, diag_lattice, discriminant_group, isotropic_order2, overlattice,
                   index_p_sublattice, kummer_ns_lattice, parse_root_name)
from .roots import RootSystem, RootComponent, root_sublattice, short_vectors, find_norm_zero_primitive
from .forms import hilbert_symbol, hasse_invariant, rationally_isometric, rational_invariants, is_rational_square
from .procedures import (Chain, PreconditionError, embed_into_unimodular, drop_prime_square,
                         genus1_divisor_mod_p, unit_split)
