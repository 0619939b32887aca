"""Chain complexes of free Z/n-modules and the generating hypothesis.

The package decides, with exact integer linear algebra over ``Z/n``, whether
a chain map between finite complexes is null-homotopic, and uses this to
search for maps that vanish on homology without being null-homotopic.
"""

from .linalg import (
    HowellForm,
    InvariantFactors,
    MatZn,
    Modulus,
    howell_form,
    is_projective,
    kernel_basis,
    left_obstruction,
    module_structure,
    solve_linear,
)
from .rings import (
    IdealZn,
    RelativeReason,
    RingReport,
    annihilator,
    annihilator_criterion,
    crt_decompose,
    double_annihilator_check,
    ideal_is_ring_summand,
    is_regular,
    nilpotence_criterion,
    nilradical,
    relative_gh_predicate,
    ring_report,
)
from .complexes import (
    ChainComplex,
    ChainMap,
    Homotopy,
    InvalidComplexError,
    Obstruction,
    Violation,
    compose,
    cone,
    direct_sum,
    dualize,
    homology,
    homotopy_obstruction,
    identity_map,
    induced_homology_map,
    is_contractible,
    is_quasi_iso,
    koszul,
    koszul_contracts,
    null_homotopy,
    scalar_map,
    sphere,
    suspend,
    tensor,
    validate,
    zero_complex,
    zero_map,
)
from .harness import (
    DEFAULT_SEED,
    CounterexampleReport,
    SearchConfig,
    SquarefreeModulusError,
    Witness,
    annihilator_witness_map,
    canonical_counterexample,
    gh_search,
    koszul_gh_suite,
    quasi_iso_cone_suite,
    random_chain_map,
    random_complex,
    target_sphere_search,
    theorem_suite,
)

__version__ = "0.1.0"
