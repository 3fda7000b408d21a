"""Decomposition and isomorph-free search tools for group-invariant
self-dual binary codes.

The package splits a binary code invariant under an odd-order abelian
permutation group into components over extension fields, transports
duality and weight data to the components, and drives canonical-form
pruned backtracking searches over the component data.  Three packaged
pipelines certify that no self-dual [72, 36, 16] binary code admits
certain automorphisms of orders 9, 7 and 10.
"""

from .binary import (BinaryCode, CodeError, WeightProfile, extremal_bound,
                     min_weight, min_weight_at_least, rref_bits)
from .canon import (ActionError, ActionSpec, CanonicalResult, Monomial,
                    are_equivalent, automorphism_group, canonical_form,
                    orbit_of_code)
from .component import (ComponentCode, assemble, binary_image,
                        component_dual, dump_code, load_code, parse_code,
                        save_code, split)
from .fields import GF
from .groupalg import (ComponentIso, Decomposition, GroupError, GroupSpec,
                       Idempotent, central_primitive_idempotents)
from .permgroup import PermGroup, from_cycles
from .spankey import SpanKey, dihedral_key, semilinear_monomial_key

__version__ = "0.1.0"

__all__ = [
    "ActionError", "ActionSpec", "BinaryCode", "CanonicalResult",
    "CodeError", "ComponentCode", "ComponentIso", "Decomposition", "GF",
    "GroupError", "GroupSpec", "Idempotent", "Monomial", "PermGroup",
    "SpanKey", "WeightProfile", "are_equivalent", "assemble",
    "automorphism_group", "binary_image", "canonical_form",
    "central_primitive_idempotents", "component_dual", "dihedral_key",
    "dump_code", "extremal_bound", "from_cycles", "load_code",
    "min_weight", "min_weight_at_least", "orbit_of_code", "parse_code",
    "rref_bits", "save_code", "semilinear_monomial_key", "split",
]
