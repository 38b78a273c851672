"""Finite covers of Hilbert squares of surfaces, made executable.

The library models everything at the level of finite group actions: covers
are monodromy data, the Hilbert-square cover of a surface cover is built
as an explicit quotient construction on the square of a sheet space, and
every structural claim the package relies on is verified by exhaustive
computation at construction time.
"""
from .catalog import get_surface, surface_names
from .descriptors import CoverDescriptor, SurfaceDescriptor
from .errors import (
    BadLength,
    CapExceeded,
    DomainMismatch,
    EmptyBase,
    Hilb2Error,
    HomomorphismFailure,
    IncompleteTable,
    InfiniteAbelianization,
    InfiniteGroup,
    NonAbelianDeckGroup,
    NotAGroup,
    NotASubgroup,
    NotGalois,
    PresentationSyntaxError,
    UnknownCatalogEntry,
    UnknownGenerator,
    UnknownPoint,
)
from .fpgroup import (
    AbelianInvariants,
    AbelianSubgroup,
    Presentation,
    abelianization,
    coset_enumeration,
    parse_presentation,
    parse_word,
    permutation_realization,
    smith_invariant_factors,
    subgroups_of_abelian,
)
from .hilbcover import (
    GSet,
    HilbConstruction,
    SymPoint,
    SymQuotient,
    build_construction,
    diagonal_components,
    fixed_components,
    free_gset,
    hilb_square_cover,
    sign_and_splitting,
    symmetric_quotient,
)
from .hodge import (
    ISV_HILB_PATTERN,
    ISV_SURFACE_PATTERN,
    isv_pattern_check,
    isv_surface_check,
    symmetric_square_hodge,
)
from .monodromy import (
    classify_hilb_covers,
    cover_from_subgroup,
    cover_isomorphic,
    galois_closure,
    quasietale_correspondence,
    remove_base_labels,
    wreath_model,
    wreath_quotient_check,
)
from .permgroup import Group, Permutation, generate, normal_closure, orbits
from .tables import (
    GroupTable,
    abelian_group_tables,
    abelian_table,
    cyclic_table,
    direct_product,
    group_from_spec,
    quaternion_table,
    symmetric_table,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "AbelianSubgroup",
    "BadLength",
    "CapExceeded",
    "CoverDescriptor",
    "DomainMismatch",
    "EmptyBase",
    "GSet",
    "Group",
    "GroupTable",
    "Hilb2Error",
    "HilbConstruction",
    "HomomorphismFailure",
    "ISV_HILB_PATTERN",
    "ISV_SURFACE_PATTERN",
    "IncompleteTable",
    "InfiniteAbelianization",
    "InfiniteGroup",
    "NonAbelianDeckGroup",
    "NotAGroup",
    "NotASubgroup",
    "NotGalois",
    "Permutation",
    "Presentation",
    "PresentationSyntaxError",
    "SurfaceDescriptor",
    "SymPoint",
    "SymQuotient",
    "UnknownCatalogEntry",
    "UnknownGenerator",
    "UnknownPoint",
    "abelian_group_tables",
    "abelian_table",
    "abelianization",
    "build_construction",
    "classify_hilb_covers",
    "coset_enumeration",
    "cover_from_subgroup",
    "cover_isomorphic",
    "cyclic_table",
    "diagonal_components",
    "direct_product",
    "fixed_components",
    "free_gset",
    "galois_closure",
    "generate",
    "get_surface",
    "group_from_spec",
    "hilb_square_cover",
    "isv_pattern_check",
    "isv_surface_check",
    "normal_closure",
    "orbits",
    "parse_presentation",
    "parse_word",
    "permutation_realization",
    "quasietale_correspondence",
    "quaternion_table",
    "remove_base_labels",
    "sign_and_splitting",
    "smith_invariant_factors",
    "subgroups_of_abelian",
    "surface_names",
    "symmetric_quotient",
    "symmetric_square_hodge",
    "symmetric_table",
    "wreath_model",
    "wreath_quotient_check",
]
