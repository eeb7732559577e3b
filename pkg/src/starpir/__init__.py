"""starpir: star-product private information retrieval over coded storage.

Construct linear codes over small finite fields (cyclic, BCH,
Reed-Muller, one-point elliptic), compute star products and every
parameter of the schemes they induce, verify the structural identities
by independent brute force, search retrieval codes for a given storage
code, and simulate the protocol end to end with exact privacy checks.
"""

from .agcode import EllipticCurve, ag_one_point, curve_points, curve_search
from .code import INFINITE, CodeParams, LinearCode
from .cyclic import (BchSpec, CyclicSpec, bch, bch_bound, bch_defining_set,
                     coset_count, cyclic_code, cyclotomic_coset, cyclotomic_cosets,
                     defining_set_from_poly, dual_defining_set, generator_polynomial,
                     low_cost_scheme, minimal_polynomial, star_cyclic, sumset,
                     two_weight_irreducible)
from .errors import CapExceededError
from .gf import Field, FieldElement, Poly, field_create, nth_root_of_unity, order_of, poly_gcd
from .matrix import Matrix
from .pir import (PirAnalysis, StorageSystem, Transcript, analyze,
                  collusion_partition_bound, exact_query_distribution, privacy_level,
                  privacy_verify, rm_collusion_bound, simulate)
from .rmext import punctured_rm_spec, rm_bch_scheme_rate, rm_code, two_adic_weight
from .search import (AgOnePointFamily, AllCyclicFamily, BchDualFamily,
                     DirectSumFamily, ExplicitFamily, ParetoEntry, pareto)

__version__ = "0.1.0"
