"""Sheaf duality for finite bounded distributive lattices with operators."""
from .blo import (
    OperatorAlgebra,
    center,
    closure_operator,
    dimension_set,
    is_conformal,
    make_blo,
    neat_reduct,
    validate_blo,
)
from .classify import (
    classify,
    is_directly_indecomposable,
    product_center_check,
    strongly_regular_equivalence_report,
)
from .epi import (
    Universe,
    amalgamation_check,
    clopen_partition_glue,
    enumerate_homomorphisms,
    es_experiment,
    is_epimorphism,
    one_point_sheaf_probe,
    universe_of_size,
)
from .ideals import (
    Congruence,
    Ideal,
    all_congruences,
    all_ideals,
    congruence_generated_by_class,
    gratzer_schmidt_report,
    ideal_congruence,
    ideal_generated,
    is_semisimple,
    is_simple,
    prime_ideals,
    quotient,
)
from .lattice import (
    Homomorphism,
    Lattice,
    build_lattice,
    check_homomorphism,
    find_isomorphism,
    is_distributive,
    is_relatively_complemented,
    join_irreducibles,
    product,
)
from .priestly import birkhoff_roundtrip, clopen_downsets, dual_of_lattice_hom, separation_check, spectrum
from .sheaf import (
    apply_sheaf_morphism,
    characteristic_section_check,
    dual_of_blo_hom,
    dual_space,
    eta_injectivity,
    eta_report,
    gamma,
    regular_ideal_openset_iso,
    restrict_to_closed,
    section_of,
)
