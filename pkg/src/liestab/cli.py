"""Command-line interface.

Subcommands: validate, classify, stationary, simulate, probe, suite, catalog.
Algebra files use the JSON format of algebra_core.load_algebra.  All numeric
output is printed with 17 significant digits so round trips are lossless.
The default tolerance can be overridden with the LIESTAB_TOL environment
variable.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .acceptance import run_all
from .algebra_core import (
    DimensionMismatchError,
    SpecFormatError,
    algebra_to_dict,
    center,
    is_unimodular,
    load_algebra,
    validate,
)
from .catalog import builtin_catalog, get_entry
from .classify import (
    NotStationaryError,
    UnsupportedCaseError,
    classify_point,
    enumerate_stationary,
)
from .euler import integrate
from .normal_forms import (
    StructureError,
    center_split_4d,
    codim1_split,
    milnor_frame,
)
from .probe import ProbeConfig, integral_set_for, probe_point

G17 = "%.17g"


def _fmt(x: float) -> str:
    return G17 % float(x)


def _parse_vector(text: str, n: int) -> np.ndarray:
    try:
        vals = [float(p) for p in text.split(",")]
    except ValueError as ex:
        raise SpecFormatError(f"cannot parse vector {text!r}: {ex}") from None
    if len(vals) != n:
        raise DimensionMismatchError(
            f"vector has {len(vals)} components, algebra has dimension {n}")
    return np.array(vals)


def _load(path: str):
    try:
        return load_algebra(path)
    except (OSError, json.JSONDecodeError, SpecFormatError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        raise SystemExit(2)


def cmd_validate(args) -> int:
    alg = _load(args.file)
    report = validate(alg)
    print(json.dumps(report.to_dict(), indent=2))
    return 0 if report.passed else 2


def _normal_form_payload(alg) -> dict:
    """Detected case and the associated normal-form data."""
    if alg.n == 3 and is_unimodular(alg):
        frame = milnor_frame(alg)
        return {"case": "3d-unimodular",
                "eigenvalues": list(frame.lam),
                "frame": frame.basis.tolist()}
    if alg.n in (2, 3):
        split = codim1_split(alg)
        return {"case": f"{alg.n}d-non-unimodular",
                "axis": split.e1.tolist(),
                "ideal_basis": split.ideal_basis.tolist(),
                "restriction": split.A.tolist()}
    if alg.n == 4 and is_unimodular(alg):
        dz = center(alg).dim
        if dz >= 2:
            return {"case": "4d-unimodular-central", "dim_center": dz}
        if dz == 1:
            split = center_split_4d(alg)
            return {"case": "4d-unimodular-z1",
                    "central_axis": split.e4.tolist(),
                    "S": split.S.tolist(), "l": split.l.tolist()}
        split = codim1_split(alg)
        return {"case": "4d-unimodular-centerless",
                "axis": split.e1.tolist(),
                "ideal_basis": split.ideal_basis.tolist(),
                "restriction": split.A.tolist()}
    return {"case": "unsupported"}


def cmd_classify(args) -> int:
    alg = _load(args.file)
    X = _parse_vector(args.point, alg.n)
    try:
        verdict = classify_point(alg, X)
    except NotStationaryError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 4
    payload = verdict.to_dict()
    if args.emit == "normal-form":
        try:
            payload["normal_form"] = _normal_form_payload(alg)
        except StructureError as ex:
            payload["normal_form"] = {"case": "error", "message": str(ex)}
    print(json.dumps(payload, indent=2))
    return 3 if verdict.status == "Unsupported" else 0


def cmd_stationary(args) -> int:
    alg = _load(args.file)
    try:
        families = enumerate_stationary(alg)
    except UnsupportedCaseError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 3
    cols = ",".join(f"x{i + 1}" for i in range(alg.n))
    print(f"family,{cols}")
    for fam in families:
        for pt in fam.sample(args.samples, seed=args.seed):
            print(f"{fam.kind}," + ",".join(_fmt(v) for v in pt))
    return 0


def cmd_simulate(args) -> int:
    alg = _load(args.file)
    y0 = _parse_vector(args.y0, alg.n)
    traj = integrate(alg, y0, T=args.t, h=args.step,
                     integrals=integral_set_for(alg))
    if args.out:
        with open(args.out, "w") as fh:
            traj.to_csv(fh)
    else:
        traj.to_csv(sys.stdout)
    if traj.aborted:
        print("warning: trajectory aborted (overflow)", file=sys.stderr)
    return 0


def cmd_probe(args) -> int:
    alg = _load(args.file)
    X = _parse_vector(args.point, alg.n)
    eps = tuple(float(p) for p in args.eps.split(","))
    config = ProbeConfig(epsilons=eps, trials=args.trials, seed=args.seed)
    try:
        report = probe_point(alg, X, config)
    except NotStationaryError as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 4
    print(json.dumps(report.to_dict(), indent=2))
    return 0


def cmd_suite(args) -> int:
    names = [f"criterion_{k}" for k in args.criteria.split(",")] if args.criteria else None
    results = run_all(names)
    return 0 if all(r.passed for r in results) else 1


def cmd_catalog(args) -> int:
    if args.dump:
        entry = get_entry(args.dump)
        data = algebra_to_dict(entry.algebra)
        text = json.dumps(data, indent=2)
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        else:
            print(text)
        return 0
    for entry in builtin_catalog():
        pts = ", ".join(f"{np.array2string(lp.point, precision=3)} -> {lp.expected}"
                        for lp in entry.labeled_points)
        print(f"{entry.name:18s} dim {entry.algebra.n}  {entry.description}")
        print(f"{'':18s} labeled: {pts}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="liestab",
        description="Geodesic-vector stability on low-dimensional metric Lie "
                    "algebras: validation, classification, simulation, probing.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="check antisymmetry/Jacobi/gram of an algebra file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("classify", help="classify the stability of a stationary point")
    sp.add_argument("file")
    sp.add_argument("--point", required=True, help="comma-separated coordinates")
    sp.add_argument("--emit", choices=["normal-form"], default=None,
                    help="also print the detected case and normal-form data")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("stationary", help="sample the stationary set, CSV with family labels")
    sp.add_argument("file")
    sp.add_argument("--samples", type=int, default=10, help="points per family")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_stationary)

    sp = sub.add_parser("simulate", help="integrate the Euler flow, trajectory CSV")
    sp.add_argument("file")
    sp.add_argument("--y0", required=True, help="comma-separated initial state")
    sp.add_argument("--t", type=float, default=200.0, help="time horizon")
    sp.add_argument("--h", dest="step", type=float, default=1e-3, help="step size")
    sp.add_argument("--out", default=None, help="output CSV path (default stdout)")
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("probe", help="perturb a stationary point, report excursions (JSON)")
    sp.add_argument("file")
    sp.add_argument("--point", required=True)
    sp.add_argument("--eps", default="1e-2,1e-3,1e-4", help="comma-separated radii")
    sp.add_argument("--trials", type=int, default=32)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_probe)

    sp = sub.add_parser("suite", help="run the acceptance criteria (nonzero exit on failure)")
    sp.add_argument("--criteria", default=None,
                    help="comma-separated criterion numbers, e.g. 1,5,6")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("catalog", help="list built-in algebras, or dump one to JSON")
    sp.add_argument("--dump", default=None, metavar="NAME")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_catalog)
    return p


_VECTOR_FLAGS = ("--point", "--y0", "--eps")


def _merge_vector_flags(argv: list[str]) -> list[str]:
    """Join '--point -1,0,0' into '--point=-1,0,0' so argparse does not
    mistake a leading minus sign for an option."""
    out = []
    skip = False
    for k, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if tok in _VECTOR_FLAGS and k + 1 < len(argv):
            out.append(f"{tok}={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_merge_vector_flags(list(argv)))
    try:
        return args.func(args)
    except (SpecFormatError, DimensionMismatchError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
