"""Exact verification of multisetting all-versus-nothing arguments.

The heavy lifting lives in the compiled extension ``ghzkit._core``: instance
generation, quantum-side eigenstate checks with exact root-of-unity
arithmetic, and the two independent hidden-variable solvers (Smith normal
form and pruned exhaustive search) over Z_D.
"""

from ghzkit._core import (
    DEFAULT_BRUTE_CAP,
    SCHEMA_VERSION,
    Error,
    Instance,
    ParseError,
    System,
    brute_force_solve,
    dimension_check,
    eigenvector_overlap,
    extract_system,
    generate_npartite,
    generate_tripartite,
    genuine_in_parties,
    has_proper_prime_reduction,
    instance_from_json,
    irreducibility_scan,
    is_irreducible,
    lr_congruence,
    load_instance,
    mermin_system,
    party_removal_check,
    prime_reduction,
    satisfies,
    save_instance,
    snf_solve,
    solve_lr,
    verify_concurrency,
)

__version__ = "1.0.0"

__all__ = [
    "DEFAULT_BRUTE_CAP",
    "SCHEMA_VERSION",
    "Error",
    "Instance",
    "ParseError",
    "System",
    "brute_force_solve",
    "dimension_check",
    "eigenvector_overlap",
    "extract_system",
    "generate",
    "generate_npartite",
    "generate_tripartite",
    "genuine_in_parties",
    "has_proper_prime_reduction",
    "instance_from_json",
    "irreducibility_scan",
    "is_irreducible",
    "lr_congruence",
    "load_instance",
    "mermin_system",
    "party_removal_check",
    "prime_reduction",
    "satisfies",
    "save_instance",
    "snf_solve",
    "solve_lr",
    "verify_concurrency",
]


def generate(parties=3, settings=None, dim_factor=1, pair=None):
    """Build an instance of either family.

    Three parties take an explicit setting count (default 3); an odd larger
    party count fixes the setting count to the party count.
    """
    if parties == 3:
        return generate_tripartite(3 if settings is None else settings,
                                   dim_factor, pair)
    if settings is not None and settings != parties:
        raise ValueError(
            "beyond three parties the setting count equals the party count")
    return generate_npartite(parties, dim_factor, pair)
