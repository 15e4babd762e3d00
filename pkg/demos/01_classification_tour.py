"""Tour of the stability classifier over the built-in catalog.

For every catalog algebra this script prints the structural case, the
stationary-set decomposition, and the verdict (with certificates) at each
labeled point.  Run:  python demos/01_classification_tour.py
"""

import numpy as np

from liestab import (
    builtin_catalog,
    center,
    classify_point,
    enumerate_stationary,
    find_stable_and_unstable,
    is_biinvariant,
    is_unimodular,
)


def describe(entry):
    alg = entry.algebra
    print(f"\n=== {entry.name} (dim {alg.n}) ===")
    print(f"    {entry.description}")
    print(f"    unimodular: {is_unimodular(alg)}, dim centre: {center(alg).dim}, "
          f"bi-invariant: {is_biinvariant(alg)}")

    try:
        families = enumerate_stationary(alg)
        kinds = ", ".join(f"{f.kind}[{f.label}]" for f in families)
        print(f"    stationary set: {kinds}")
    except Exception as ex:
        print(f"    stationary set: not enumerated ({ex})")
        families = None

    for lp in entry.labeled_points:
        v = classify_point(alg, lp.point)
        certs = ", ".join(f"{k}={val:.3g}" for k, val in sorted(v.certificates.items()))
        flag = " [marginal]" if v.marginal else ""
        print(f"    X={np.array2string(lp.point, precision=2)}: "
              f"{v.status} via {v.rule}{flag}  ({certs})")
        print(f"        note: {lp.note}")

    if families is not None:
        try:
            stable, unstable = find_stable_and_unstable(alg, seed=0)
            s = np.array2string(stable, precision=3)
            u = "none (every point is stable)" if unstable is None \
                else np.array2string(unstable, precision=3)
            print(f"    witnesses: stable {s}; unstable {u}")
        except Exception as ex:
            print(f"    witnesses: {ex}")


if __name__ == "__main__":
    for entry in builtin_catalog():
        describe(entry)
