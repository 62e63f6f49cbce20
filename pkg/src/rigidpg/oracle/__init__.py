"""Brute-force ground truth: explicit groups, PDS checks, cyclotomy, geometries."""

from rigidpg.oracle.fields import (
    CyclotomicClassSet,
    FiniteField,
    cyclotomic_classes,
    find_cyclotomic_pds,
    make_field,
)
from rigidpg.oracle.geometry import (
    AxiomViolation,
    Geometry,
    PgMeasurement,
    build_geometry,
    check_pg_axioms,
    check_rigid,
    partition_into_lines,
    pds_from_geometry,
)
from rigidpg.oracle.groups import (
    AbelianGroup,
    CosetProfile,
    GroupElement,
    NotAPds,
    NotASubgroup,
    PdsCandidate,
    PdsCheck,
    coset_profile,
    elementary_abelian_subgroups,
    format_pds_text,
    involution_free,
    multiplier_closed,
    pairs_with_difference_in,
    parse_pds_text,
    sylow_subgroup,
    verify_pds,
)
