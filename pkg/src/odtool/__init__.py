"""Exact construction and verification of orthogonal designs."""
from .algebra import (
    DEFAULT_REGISTRY, DimensionError, NonlinearEntryError, PolyMatrix,
    Polynomial, Registry, RegistryFull, Var, VarDecomposition, backcirc, block,
    circ, decompose_by_variable, gram, hadamard_product, is_scalar_identity,
    kron, mat_mul, substitute, transpose, var, variables,
)
from .designs import (
    AodSplit, OverlappingVariables, TypeVector, VerificationReport, collapse,
    fresh_vars, is_full, rename, type_of, verify_amicable, verify_antiamicable,
    verify_aod, verify_disjoint, verify_od, verify_pairwise_amicable, verify_pd,
)
from .constructions import (
    AOD, OD, PD, CatalogEntry, ConstructionError, WolfeSets, aod16_vars,
    aod24_vars, aod512, aod_2, catalog, combine_pd_aod, construction_16n,
    construction_24n, double_aod, get_entry, od1024, pd8, pd12,
    sylvester_hadamard, wolfe_sets,
)
from .numtheory import (
    DELTA, ExistenceVerdict, RFType, Status, decide_pd133, hilbert, legendre,
    radon_hurwitz, rational_family_exists, relevant_primes, rho_t_bound, s_p,
    wolfe_bound,
)

__version__ = "0.1.0"
