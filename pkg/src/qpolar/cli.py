"""Command-line front end.

Commands::

    qpolar degree STATE [--measure {chernoff,bures,both}] [--json]
    qpolar surface --family {superposition,mixture} ... --grid M
    qpolar sweep   --family {superposition,mixture} ... --points K
    qpolar transform STATE OUTPUT --phi F --theta F --psi F
    qpolar discriminate STATE_A STATE_B [--truncation T]

Exit codes: 0 success, 2 parse error, 3 invariant violation, 4 invalid
parameters, 5 truncation too small.  CSV goes to standard output with a
header row, "#"-prefixed comment rows, and 13 significant digits per value;
output is deterministic regardless of the evaluation parallelism.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor

from .errors import DomainError, InvalidStateError
from .families import (
    MixtureFamily,
    SuperpositionFamily,
    mixture_degrees,
    mixture_renyi,
    superposition_bures,
    superposition_chernoff,
    superposition_renyi,
)
from .measures import (
    bures_degree,
    chernoff_degree,
    chernoff_overlap_general,
    single_copy_error_probability,
)
from .states import max_manifold, to_dense, validate
from .stateio import StateFileError, read_state, write_state
from .su2 import EulerAngles, transform_state

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_INVALID_STATE = 3
EXIT_PARAMETERS = 4
EXIT_TRUNCATION = 5


class TruncationError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _map_ordered(fn, items, workers: int = 1) -> list:
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Family construction from flags


def _require_params(args, names: list[str]) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise DomainError(f"family '{args.family}' requires {', '.join(missing)}")


def _superposition(args, p: float) -> SuperpositionFamily:
    return SuperpositionFamily(args.n1, args.n2, p)


def _mixture(args, p: float) -> MixtureFamily:
    return MixtureFamily(p, args.alpha, args.beta, args.gamma)


# ---------------------------------------------------------------------------
# CSV builders (pure functions; used by the commands and directly testable)


def surface_csv(args, workers: int = 1) -> str:
    if args.grid < 2:
        raise DomainError(f"--grid must be at least 2, got {args.grid}")
    if args.family == "superposition":
        _require_params(args, ["n1", "n2", "p"])
        fam = _superposition(args, args.p)
        overlap = lambda s, pi1: superposition_renyi(fam, s, pi1)
        chern = superposition_chernoff(fam)
        pi_saddle = chern.optimal_weights.get(fam.n1)
    else:
        _require_params(args, ["p", "alpha", "beta", "gamma"])
        fam = _mixture(args, args.p)
        overlap = lambda s, pi1: mixture_renyi(fam, s, pi1)
        chern, _ = mixture_degrees(fam)
        pi_saddle = chern.optimal_weights.get(1)
    m = args.grid
    coords = [
        (i / (m - 1), j / (m - 1)) for i in range(m) for j in range(m)
    ]
    values = _map_ordered(lambda sp: overlap(*sp), coords, workers)
    lines = ["s,pi1,Q"]
    lines += [
        f"{_fmt(s)},{_fmt(pi)},{_fmt(q)}" for (s, pi), q in zip(coords, values)
    ]
    lines.append(
        f"# saddle: s_opt={_fmt(chern.s_opt)} pi1={_fmt(pi_saddle)} "
        f"Q={_fmt(chern.overlap)} boundary={int(chern.boundary_case)}"
    )
    return "\n".join(lines) + "\n"


def sweep_csv(args, workers: int = 1) -> str:
    if args.points < 2:
        raise DomainError(f"--points must be at least 2, got {args.points}")
    if args.family == "superposition":
        _require_params(args, ["n1", "n2"])

        def row(p: float):
            fam = _superposition(args, p)
            chern = superposition_chernoff(fam)
            return p, chern.degree, superposition_bures(fam), chern.s_opt, chern.boundary_case
    else:
        _require_params(args, ["alpha", "beta", "gamma"])

        def row(p: float):
            fam = _mixture(args, p)
            chern, bures = mixture_degrees(fam)
            return p, chern.degree, bures.degree, chern.s_opt, chern.boundary_case

    k = args.points
    ps = [i / (k - 1) for i in range(k)]
    rows = _map_ordered(row, ps, workers)
    lines = ["p,P_C,P_B,s_opt,boundary_flag"]
    lines += [
        f"{_fmt(p)},{_fmt(pc)},{_fmt(pb)},{_fmt(s)},{int(flag)}"
        for p, pc, pb, s, flag in rows
    ]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Commands


def _load_state(path):
    state = read_state(path)
    report = validate(state)
    if not report.passed:
        raise InvalidStateError(report.message())
    return state


def _weights_dict(weights) -> dict[str, float]:
    return {str(n): w for n, w in weights.weights}


def cmd_degree(args) -> int:
    state = _load_state(args.state)
    doc: dict = {"command": "degree", "measure": args.measure}
    doc["chernoff"] = None
    doc["bures"] = None
    out = []
    if args.measure in ("chernoff", "both"):
        res = chernoff_degree(state)
        doc["chernoff"] = {
            "degree": res.degree,
            "s_opt": res.s_opt,
            "overlap": res.overlap,
            "boundary_case": res.boundary_case,
            "optimal_weights": _weights_dict(res.optimal_weights),
        }
        out.append(
            f"P_C = {res.degree:.12f}  (s_opt = {res.s_opt:.12f}, "
            f"Q = {res.overlap:.12f}, boundary = {int(res.boundary_case)})"
        )
        out.append(
            "  pi_opt: "
            + "  ".join(f"N={n}: {w:.12f}" for n, w in res.optimal_weights.weights)
        )
    if args.measure in ("bures", "both"):
        res = bures_degree(state)
        doc["bures"] = {
            "degree": res.degree,
            "fidelity": res.fidelity,
            "optimal_weights": _weights_dict(res.optimal_weights),
        }
        out.append(f"P_B = {res.degree:.12f}  (fidelity = {res.fidelity:.12f})")
        out.append(
            "  pi_opt: "
            + "  ".join(f"N={n}: {w:.12f}" for n, w in res.optimal_weights.weights)
        )
    if args.json:
        print(json.dumps(doc, sort_keys=True, indent=1))
    else:
        print("\n".join(out))
    return EXIT_OK


def cmd_surface(args) -> int:
    sys.stdout.write(surface_csv(args))
    return EXIT_OK


def cmd_sweep(args) -> int:
    sys.stdout.write(sweep_csv(args))
    return EXIT_OK


def cmd_transform(args) -> int:
    state = _load_state(args.state)
    rotated = transform_state(state, EulerAngles(args.phi, args.theta, args.psi))
    write_state(args.output, rotated)
    return EXIT_OK


def cmd_discriminate(args) -> int:
    state_a = _load_state(args.state_a)
    state_b = _load_state(args.state_b)
    needed = max(max_manifold(state_a), max_manifold(state_b))
    truncation = args.truncation if args.truncation is not None else needed
    if truncation < needed:
        raise TruncationError(
            f"truncation {truncation} too small: states reach N={needed}"
        )
    rho = to_dense(state_a, truncation)
    sigma = to_dense(state_b, truncation)
    error = single_copy_error_probability(rho, sigma)
    chern = chernoff_overlap_general(rho, sigma)
    print(f"error_probability = {error:.12f}")
    print(f"chernoff_overlap Q = {chern.overlap:.12f}")
    print(f"chernoff_exponent xi = {chern.exponent:.12f}")
    print(f"s_opt = {chern.s_opt:.12f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qpolar",
        description="Distance-type degrees of polarization for two-mode light",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="degrees of polarization of a state file")
    p.add_argument("state", help="path to the state file")
    p.add_argument("--measure", choices=["chernoff", "bures", "both"], default="both")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.set_defaults(func=cmd_degree)

    def family_flags(sp, with_p: bool):
        sp.add_argument(
            "--family", choices=["superposition", "mixture"], required=True
        )
        sp.add_argument("--n1", type=int, help="lower photon number (superposition)")
        sp.add_argument("--n2", type=int, help="upper photon number (superposition)")
        if with_p:
            sp.add_argument("--p", type=float, help="lower-manifold probability")
        sp.add_argument("--alpha", type=float, help="1-photon diagonal entry (mixture)")
        sp.add_argument("--beta", type=float, help="2-photon diagonal entry (mixture)")
        sp.add_argument("--gamma", type=float, help="2-photon diagonal entry (mixture)")

    p = sub.add_parser("surface", help="Renyi overlap on an (s, pi1) grid as CSV")
    family_flags(p, with_p=True)
    p.add_argument("--grid", type=int, default=101, help="grid points per axis")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("sweep", help="degrees vs the probability p as CSV")
    family_flags(p, with_p=False)
    p.add_argument("--points", type=int, default=101, help="number of p values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("transform", help="apply a polarization rotation to a state file")
    p.add_argument("state", help="input state file")
    p.add_argument("output", help="output state file")
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--psi", type=float, default=0.0)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("discriminate", help="discrimination metrics for two state files")
    p.add_argument("state_a")
    p.add_argument("state_b")
    p.add_argument("--truncation", type=int, default=None, help="largest manifold kept")
    p.set_defaults(func=cmd_discriminate)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StateFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except InvalidStateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_STATE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETERS
    except TruncationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
