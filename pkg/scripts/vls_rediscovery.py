"""Rebuild the pg(5,5,2) from cyclotomic classes of GF(81) and check it."""

import time

from rigidpg.oracle import (
    build_geometry,
    check_pg_axioms,
    check_rigid,
    cyclotomic_classes,
    find_cyclotomic_pds,
    partition_into_lines,
    verify_pds,
)
from rigidpg.params import PdsParams

TARGET = PdsParams(81, 30, 9, 12)


def main() -> None:
    start = time.perf_counter()
    classes = cyclotomic_classes(3, 4, 16)
    F = classes.field
    print(f"GF(81): modulus {F.modulus} (high degree first), primitive element {F.primitive_element}")
    unions = find_cyclotomic_pds(classes, TARGET)
    print(f"{len(unions)} unions of 6 classes give a {TARGET.as_tuple()} PDS:")
    for idx in unions:
        print("  ", idx)
    pds = classes.union(unions[0])
    print("verified:", verify_pds(pds).params.as_tuple())
    blocks = partition_into_lines(pds, 6, limit=1)[0]
    geo = build_geometry(pds, blocks)
    m = check_pg_axioms(geo)
    print(f"{m.label()} with {len(geo.lines)} lines, proper={m.proper}, rigid={check_rigid(geo)}")
    print(f"# {time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
