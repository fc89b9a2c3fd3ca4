"""Command-line front end: verify / crystal / witt.

Parameters come from an optional key=value config file overridden by
command-line flags.  Reports are deterministic JSON for a fixed
(config, seed) pair; p-adic scalars are serialized as
{digits, prec, pi_power_basis}.  Exit codes: 0 all checks pass,
1 a check failed (or the input is invalid), 2 inconclusive at the
requested precision/degree.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .characters import (
    extract_lambda_gamma,
    psi_basis,
    rank_table,
    solve_delta_characters,
    splitting_number,
    upsilon,
)
from .crystal import (
    build_crystal,
    de_rham_shadow,
    polygons,
    weak_admissibility,
)
from .errors import BadReduction, EngineError, Inconclusive
from .fgl import (
    formal_group_from_weierstrass,
    multiplicative_law,
    trace_of_frobenius,
)
from .ring import BaseRingSpec
from .verify import (
    ghost_components,
    run_character_suites,
    run_witt_suites,
    summarize,
)
from .witt import WittVector, frobenius_W, verschiebung

EXIT = {"pass": 0, "fail": 1, "inconclusive": 2}

DEFAULTS = {
    "p": 5, "e": 1, "prec": 8, "deg": None, "nmax": 3,
    "a4": None, "a6": None, "seed": 0, "cmd": "verify", "out": None,
}

_INT_KEYS = ("p", "e", "prec", "deg", "nmax", "a4", "a6", "seed")


def read_config(path: str) -> dict:
    """Plain-text key=value lines; '#' starts a comment."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"bad config line: {raw.strip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in DEFAULTS:
                raise ValueError(f"unknown config key: {key!r}")
            out[key] = int(val) if key in _INT_KEYS else val
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="arithjet",
        description="pi-typical Witt vectors, delta-characters and the "
                    "filtered crystal of a formal group at finite precision")
    ap.add_argument("--config", help="key=value parameter file")
    ap.add_argument("--cmd", choices=("verify", "crystal", "witt"))
    ap.add_argument("--p", type=int, help="residue characteristic")
    ap.add_argument("--e", type=int, help="ramification index")
    ap.add_argument("--prec", type=int, help="pi-adic working precision")
    ap.add_argument("--deg", type=int, help="series degree cap")
    ap.add_argument("--nmax", type=int, help="maximal character order")
    ap.add_argument("--a4", type=int, help="Weierstrass a4 (short form)")
    ap.add_argument("--a6", type=int, help="Weierstrass a6 (short form)")
    ap.add_argument("--seed", type=int, help="seed for randomized suites")
    ap.add_argument("--out", help="write the JSON report here")
    return ap


def resolve_params(argv) -> dict:
    args = build_parser().parse_args(argv)
    params = dict(DEFAULTS)
    if args.config:
        params.update(read_config(args.config))
    for key in DEFAULTS:
        val = getattr(args, key)
        if val is not None:
            params[key] = val
    return params


def _curve(spec: BaseRingSpec, params):
    a4, a6 = params["a4"], params["a6"]
    p = spec.p
    disc = -16 * (4 * a4 ** 3 + 27 * a6 ** 2)
    if disc % p == 0:
        raise BadReduction(
            f"discriminant {disc} vanishes mod {p}: bad reduction")
    shift_budget = 4
    prec = params["prec"] + shift_budget
    return formal_group_from_weierstrass(
        spec, spec.scalar(a4, prec), spec.scalar(a6, prec), params["deg"])


def cmd_verify(spec: BaseRingSpec, params) -> dict:
    suites = run_witt_suites(spec, n=2, trials=100, seed=params["seed"])
    if params["a4"] is not None and params["a6"] is not None:
        suites.extend(run_character_suites(_curve(spec, params)))
    return {"command": "verify", "suites": suites,
            "status": summarize(suites)}


def cmd_crystal(spec: BaseRingSpec, params) -> dict:
    if params["a4"] is not None and params["a6"] is not None:
        F = _curve(spec, params)
        ap = trace_of_frobenius(spec, *F.curve)
        extra = {"curve": {"a4": params["a4"], "a6": params["a6"],
                           "trace_of_frobenius": ap,
                           "ordinary": ap % spec.p != 0}}
    else:
        F = multiplicative_law(spec, params["deg"], params["prec"])
        extra = {"law": "multiplicative"}
    m = splitting_number(F, params["deg"])
    chars, _ = solve_delta_characters(F, m, params["deg"])
    theta = chars[0]
    psis = psi_basis(F, m)
    lam, gamma = extract_lambda_gamma(theta, psis)
    table = rank_table(F, params["nmax"], params["deg"])
    crys = build_crystal(spec, m, lam, gamma)
    hodge, newton = polygons(crys)
    cert = weak_admissibility(crys)
    shadow = de_rham_shadow(crys, upsilon(theta))
    report = {
        "command": "crystal",
        "m": m,
        "lambda": None if lam is None else lam.to_json(),
        "gamma": gamma.to_json(),
        "crystal": crys.to_json(),
        "hodge_polygon": [str(s) for s in hodge],
        "newton_polygon": [str(s) for s in newton],
        "weak_admissibility": cert,
        "ordp_normalization": "polygons in v/e units; slope test in pi units",
        "de_rham": shadow,
        "rank_table": table.to_json(),
        "status": "pass",
    }
    report.update(extra)
    return report


def cmd_witt(spec: BaseRingSpec, params) -> dict:
    """Explicit Witt arithmetic with ghost echoes for two seeded vectors."""
    rng = random.Random(params["seed"])
    n = min(params["nmax"], 3)
    prec = params["prec"]
    bound = spec.p ** prec

    def vec():
        return WittVector.from_ints(
            spec, [rng.randrange(bound) for _ in range(n + 1)], prec)

    def echo(v):
        return {"components": [c.to_json() for c in v.components],
                "ghost": [w.to_json() for w in ghost_components(v)]}

    x, y = vec(), vec()
    out = {
        "command": "witt",
        "x": echo(x), "y": echo(y),
        "sum": echo(x + y), "product": echo(x * y),
        "frobenius_x": echo(frobenius_W(x)),
        "verschiebung_x": echo(verschiebung(x)),
    }
    # the echo doubles as a check: ghost of the sum/product must match
    wx, wy = ghost_components(x), ghost_components(y)
    ok = all((a - (b + c)).is_zero() for a, b, c
             in zip(ghost_components(x + y), wx, wy))
    ok = ok and all((a - b * c).is_zero() for a, b, c
                    in zip(ghost_components(x * y), wx, wy))
    out["status"] = "pass" if ok else "fail"
    return out


def run(argv=None) -> int:
    params = resolve_params(argv)
    spec = BaseRingSpec(p=params["p"], e=params["e"])
    if params["deg"] is None:
        params["deg"] = spec.p ** 2 + 2
    try:
        if params["cmd"] == "verify":
            report = cmd_verify(spec, params)
        elif params["cmd"] == "crystal":
            report = cmd_crystal(spec, params)
        else:
            report = cmd_witt(spec, params)
    except Inconclusive as exc:
        report = {"command": params["cmd"], "status": "inconclusive",
                  "error": str(exc)}
    except EngineError as exc:
        report = {"command": params["cmd"], "status": "fail",
                  "error": f"{type(exc).__name__}: {exc}"}
    report["params"] = {k: params[k] for k in
                        ("cmd", "p", "e", "prec", "deg", "nmax",
                         "a4", "a6", "seed")}
    text = json.dumps(report, indent=2, sort_keys=True)
    if params["out"]:
        with open(params["out"], "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT[report["status"]]


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
