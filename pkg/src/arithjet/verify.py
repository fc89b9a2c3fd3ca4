"""Identity suites for the Witt / lateral-Frobenius / character layers.

Each suite returns a report dict with keys "name", "anchor", "status"
("pass", "fail" or "inconclusive") and "details".  The suites are used
both by the test battery and by the command-line `verify` command, so
they never assert: a failed identity is reported, not raised.
"""

from __future__ import annotations

import random

from .characters import (
    expand_in_psi_basis,
    frobenius_pullback,
    i_star,
    lateral_pullback,
    psi_basis,
    solve_delta_characters,
    upsilon,
)
from .errors import EngineError, Inconclusive
from .fgl import FormalGroupLaw
from .lateral import generic_tilde, lateral_frobenius
from .ring import BaseRingSpec, PadicScalar
from .series import TruncSeries
from .witt import WittVector, frobenius_W, verschiebung


def _report(name, anchor, ok, details=""):
    return {"name": name, "anchor": anchor,
            "status": "pass" if ok else "fail", "details": details}


def _inconclusive(name, anchor, details):
    return {"name": name, "anchor": anchor,
            "status": "inconclusive", "details": details}


# --------------------------------------------------------------------------
# ghost oracle
# --------------------------------------------------------------------------

def ghost_components(x: WittVector):
    """w_i(x) = sum_j pi^j x_j^(q^(i-j)), computed without the tables."""
    q = x.spec.q
    out = []
    for i in range(x.length):
        acc = x.components[0] ** (q ** i)
        for j in range(1, i + 1):
            acc = acc + (x.components[j] ** (q ** (i - j))).mul_pi(j)
        out.append(acc)
    return out


def suite_ghost_oracle(spec: BaseRingSpec, n: int, trials: int = 100,
                       seed: int = 0, prec: int = 6) -> dict:
    """Structural add/mul agree with the ghost-side ring operations."""
    anchor = "w(x [+] y) = w(x) + w(y), w(x [*] y) = w(x) w(y)"
    rng = random.Random(seed)
    bound = spec.p ** prec
    for t in range(trials):
        x = WittVector.from_ints(
            spec, [rng.randrange(bound) for _ in range(n + 1)], prec)
        y = WittVector.from_ints(
            spec, [rng.randrange(bound) for _ in range(n + 1)], prec)
        wx, wy = ghost_components(x), ghost_components(y)
        ws = ghost_components(x + y)
        wp = ghost_components(x * y)
        for i in range(n + 1):
            if not (ws[i] - (wx[i] + wy[i])).is_zero():
                return _report("ghost_oracle", anchor, False,
                               f"add trial {t} ghost slot {i}")
            if not (wp[i] - wx[i] * wy[i]).is_zero():
                return _report("ghost_oracle", anchor, False,
                               f"mul trial {t} ghost slot {i}")
    return _report("ghost_oracle", anchor, True,
                   f"{trials} random pairs, length {n + 1}")


# --------------------------------------------------------------------------
# F and V
# --------------------------------------------------------------------------

def suite_fv(spec: BaseRingSpec, n: int = 2, trials: int = 50,
             seed: int = 0, prec: int = 6) -> dict:
    """FV = pi, a pinned FV != VF witness, and FFV = FVF."""
    anchor = "FV(x) = pi x ; FV != VF ; FFV = FVF"
    rng = random.Random(seed)
    bound = spec.p ** prec
    pi = spec.pi(prec)
    for t in range(trials):
        x = WittVector.from_ints(
            spec, [rng.randrange(bound) for _ in range(n + 1)], prec)
        fv = frobenius_W(verschiebung(x))
        if fv != x.scalar_mul(pi):
            return _report("fv_identities", anchor, False,
                           f"FV != pi x at trial {t}")
        ffv = frobenius_W(frobenius_W(verschiebung(x)))
        fvf = frobenius_W(verschiebung(frobenius_W(x)))
        if ffv != fvf:
            return _report("fv_identities", anchor, False,
                           f"FFV != FVF at trial {t}")
    witness = None
    for ints in ([1, 0], [1, 1], [2, 1], [1, 2], [0, 1]):
        x = WittVector.from_ints(spec, ints, prec)
        if frobenius_W(verschiebung(x)) != verschiebung(frobenius_W(x)):
            witness = ints
            break
    if witness is None:
        return _report("fv_identities", anchor, False,
                       "no FV != VF witness among small vectors")
    return _report("fv_identities", anchor, True,
                   f"{trials} random vectors; witness x = {witness}")


# --------------------------------------------------------------------------
# lateral Frobenius
# --------------------------------------------------------------------------

def suite_latfrob_congruence(spec: BaseRingSpec, n: int,
                             prec: int = 4) -> dict:
    """Symbolic: the tail of F~ is congruent to z_i^q mod pi."""
    anchor = "F~(f~(r) + V(z))_i = z_i^q mod pi"
    r = spec.scalar(1 + spec.p, prec + n + 1)
    t = generic_tilde(spec, r, n, cap=spec.q + 1, prec=prec)
    ft = lateral_frobenius(t)
    comps = [] if ft.tail is None else list(ft.tail.components)
    for i, c in enumerate(comps):
        z = TruncSeries.gen(spec, c.vars, f"z{i + 1}", c.cap, c.prec)
        diff = c - z ** spec.q
        if diff.residue_coeffs():
            return _report("latfrob_congruence", anchor, False,
                           f"component {i + 1} not z^q mod pi")
    return _report("latfrob_congruence", anchor, True,
                   f"symbolic tail, order {n}")


def suite_fdid(spec: BaseRingSpec, n: int, prec: int = 4) -> dict:
    """F^2 o I = F o I o F~ symbolically, plus a pinned F o I != I o F~."""
    anchor = "F(F(I(x))) = F(I(F~(x))) ; F(I(x)) != I(F~(x))"
    r = spec.scalar(1 + spec.p, prec + n + 2)
    t = generic_tilde(spec, r, n, cap=spec.q ** 2 + 1, prec=prec)
    lhs = frobenius_W(frobenius_W(t.embed()))
    rhs = frobenius_W(lateral_frobenius(t).embed())
    if lhs != rhs:
        return _report("fdid", anchor, False,
                       f"F^2 I != F I F~ at order {n}")
    # pinned witness: F o I and I o F~ differ already on f~(r) + V(z)
    # with a concrete scalar tail
    from .lateral import tilde_pack
    tail = WittVector.from_ints(spec, [1] + [0] * (n - 1), prec + 2)
    tw = tilde_pack(spec.scalar(1, prec + n + 2), tail)
    a = frobenius_W(tw.embed())
    b = lateral_frobenius(tw).embed()
    if a == b:
        return _report("fdid", anchor, False,
                       "pinned witness collapsed: F I = I F~")
    return _report("fdid", anchor, True, f"symbolic order {n}")


# --------------------------------------------------------------------------
# character identities on a fixed formal group
# --------------------------------------------------------------------------

def suite_gamma_identity(F: FormalGroupLaw) -> dict:
    """(i o frak-f)* - (phi o i)* applied to Theta_2 lands in pi R<x1>."""
    anchor = "i* phi* Theta_2 - frak-f* i* Theta_2 = gamma Psi_1"
    try:
        chars, rank = solve_delta_characters(F, 2)
        if rank < 1:
            return _inconclusive("gamma_identity", anchor,
                                 "no order-2 character found")
        theta = chars[0]
        psis = psi_basis(F, 3)
        lhs = i_star(frobenius_pullback(theta))
        rhs = lateral_pullback(i_star(theta))
        diff = (lhs - rhs).frac.normalize()
        if any(any(m[j] for j in range(1, len(m))) for m in diff.num.coeffs):
            return _report("gamma_identity", anchor, False,
                           "difference involves x2 or beyond")
        if diff.shift > 0:
            return _report("gamma_identity", anchor, False,
                           "difference is not pi-divisible")
        gamma = (-upsilon(theta)).mul_pi_power(1)
        resid = (diff - psis[0].frac.scalar_mul(gamma)).normalize()
        if not resid.num.is_zero():
            return _report("gamma_identity", anchor, False,
                           "difference != gamma Psi_1")
    except Inconclusive as exc:
        return _inconclusive("gamma_identity", anchor, str(exc))
    return _report("gamma_identity", anchor, True,
                   f"gamma = pi * {(-upsilon(theta)).digits}")


def suite_upsilon_vanishing(F: FormalGroupLaw) -> dict:
    """Upsilon kills the image of the Frobenius pullback."""
    anchor = "Upsilon(phi* Theta) = 0"
    try:
        chars, rank = solve_delta_characters(F, 2)
        if rank < 1:
            return _inconclusive("upsilon_vanishing", anchor,
                                 "no order-2 character found")
        val = upsilon(frobenius_pullback(chars[0]))
        ok = val.is_zero()
    except Inconclusive as exc:
        return _inconclusive("upsilon_vanishing", anchor, str(exc))
    return _report("upsilon_vanishing", anchor, ok,
                   "" if ok else f"Upsilon = {val.digits}")


def suite_psi_tower(F: FormalGroupLaw, n: int = 3) -> dict:
    """Psi_1..Psi_n: linear parts pi^(i-1) x_i, mod-pi leads x1^(q^(i-1))."""
    anchor = "Psi_i = pi^(i-1) x_i + h.o.t. ; Psi_i = x1^(q^(i-1)) mod pi"
    spec = F.spec
    try:
        psis = psi_basis(F, n)
    except Inconclusive as exc:
        return _inconclusive("psi_tower", anchor, str(exc))
    q = spec.q
    for i, psi in enumerate(psis, start=1):
        s = psi.series()
        for j in range(1, n + 1):
            c = s.linear_coeff(f"x{j}")
            want = (spec.one(c.prec - (i - 1)).mul_pi_power(i - 1)
                    if j == i else spec.zero(c.prec))
            if not (c - want).is_zero():
                return _report("psi_tower", anchor, False,
                               f"linear part of Psi_{i} wrong at x{j}")
        res = s.residue_coeffs()
        lead = min(res, key=sum) if res else None
        want_lead = tuple(q ** (i - 1) if v == "x1" else 0
                          for v in s.vars)
        if lead != want_lead:
            return _report("psi_tower", anchor, False,
                           f"mod-pi lead of Psi_{i} is {lead}")
    return _report("psi_tower", anchor, True, f"tower of depth {n}")


def suite_tower_pullback(F: FormalGroupLaw, n_max: int = 3) -> dict:
    """i* (phi^n)* Theta = (frak-f^(n-1))* i* phi* Theta for n = 2..n_max."""
    anchor = "i* phi^n* Theta = frak-f^(n-1)* i* phi* Theta"
    try:
        chars, rank = solve_delta_characters(F, 2)
        if rank < 1:
            return _inconclusive("tower_pullback", anchor,
                                 "no order-2 character found")
        theta = chars[0]
        phi_n = theta
        lateral_n = i_star(frobenius_pullback(theta))
        for n in range(2, n_max + 1):
            phi_n = frobenius_pullback(phi_n)
            if n >= 3:
                lateral_n = lateral_pullback(lateral_n)
            diff = (i_star(phi_n) - lateral_n).frac.normalize()
            if not diff.num.is_zero():
                return _report("tower_pullback", anchor, False,
                               f"tower identity fails at n = {n}")
    except Inconclusive as exc:
        return _inconclusive("tower_pullback", anchor, str(exc))
    return _report("tower_pullback", anchor, True,
                   f"checked n = 2..{n_max}")


# --------------------------------------------------------------------------
# aggregation
# --------------------------------------------------------------------------

def run_witt_suites(spec: BaseRingSpec, n: int = 2, trials: int = 100,
                    seed: int = 0) -> list:
    """The structural suites; no formal group required."""
    return [
        suite_ghost_oracle(spec, n, trials=trials, seed=seed),
        suite_fv(spec, n, trials=max(10, trials // 2), seed=seed),
        suite_latfrob_congruence(spec, min(n, 3)),
        suite_fdid(spec, min(n, 3)),
    ]


def run_character_suites(F: FormalGroupLaw) -> list:
    """The character-level suites on a fixed formal group."""
    return [
        suite_psi_tower(F),
        suite_gamma_identity(F),
        suite_upsilon_vanishing(F),
        suite_tower_pullback(F),
    ]


def summarize(reports: list) -> str:
    worst = "pass"
    for r in reports:
        if r["status"] == "fail":
            worst = "fail"
        elif r["status"] == "inconclusive" and worst == "pass":
            worst = "inconclusive"
    return worst
