"""One-dimensional formal group laws and their logarithms.

Laws are truncated two-variable series F(X, Y) over R.  The elliptic
constructor expands the chord-tangent law of a short Weierstrass model in
the parameter t = -x/y; the logarithm integrates the invariant differential
and therefore lives in K (FracSeries with a bounded pi-power denominator).
"""

from __future__ import annotations

import math

from .errors import BadReduction, IncompatibleSpec, PrecisionExhausted
from .ring import BaseRingSpec, PadicScalar, _vp
from .series import FracSeries, TruncSeries

VARS = ("X", "Y")


def log_denominator_exponent(spec: BaseRingSpec, D: int) -> int:
    """Largest pi-valuation of k for k <= D (bounds log denominators)."""
    if D < spec.p:
        return 0
    return spec.e * int(math.log(D) / math.log(spec.p) + 1e-9)


class FormalGroupLaw:
    """A commutative one-dimensional formal group law to degree `cap`."""

    def __init__(self, law: TruncSeries, name: str = "fgl",
                 curve=None):
        if law.vars != VARS:
            raise IncompatibleSpec("law must be a series in (X, Y)")
        self.spec = law.spec
        self.law = law
        self.cap = law.cap
        self.prec = law.prec
        self.name = name
        self.dimension = 1
        self.curve = curve  # (a4, a6) when the law comes from a curve
        self._validate()

    def _validate(self):
        F = self.law
        X = TruncSeries.gen(self.spec, VARS, "X", self.cap, self.prec)
        Y = TruncSeries.gen(self.spec, VARS, "Y", self.cap, self.prec)
        one = self.spec.one(self.prec)
        if not F.constant_term().is_zero():
            raise IncompatibleSpec("law has a constant term")
        if F.linear_coeff("X") != one or F.linear_coeff("Y") != one:
            raise IncompatibleSpec("law is not X + Y to first order")
        # F(X, 0) = X
        zero = TruncSeries.zero(self.spec, VARS, self.cap, self.prec)
        if F.substitute({"Y": zero}) != X:
            raise IncompatibleSpec("law does not satisfy F(X, 0) = X")
        # commutativity
        if F.substitute({"X": Y, "Y": X}) != F:
            raise IncompatibleSpec("law is not commutative")

    def check_associativity(self, cap: int | None = None) -> bool:
        """F(F(X,Y),Z) = F(X,F(Y,Z)) modulo (pi^prec, degree > cap)."""
        cap = self.cap if cap is None else min(cap, self.cap)
        spec = self.spec
        vars3 = ("X", "Y", "Z")
        F = self.law.with_cap(cap)
        X = TruncSeries.gen(spec, vars3, "X", cap, self.prec)
        Y = TruncSeries.gen(spec, vars3, "Y", cap, self.prec)
        Z = TruncSeries.gen(spec, vars3, "Z", cap, self.prec)
        inner_xy = F.substitute({"X": X, "Y": Y})
        inner_yz = F.substitute({"X": Y, "Y": Z})
        left = F.substitute({"X": inner_xy, "Y": Z})
        right = F.substitute({"X": X, "Y": inner_yz})
        return left == right

    def __repr__(self):
        return (f"FormalGroupLaw({self.name}, p={self.spec.p}, "
                f"D={self.cap}, N={self.prec})")


def additive_law(spec: BaseRingSpec, D: int, N: int) -> FormalGroupLaw:
    X = TruncSeries.gen(spec, VARS, "X", D, N)
    Y = TruncSeries.gen(spec, VARS, "Y", D, N)
    return FormalGroupLaw(X + Y, name="additive")


def multiplicative_law(spec: BaseRingSpec, D: int, N: int) -> FormalGroupLaw:
    X = TruncSeries.gen(spec, VARS, "X", D, N)
    Y = TruncSeries.gen(spec, VARS, "Y", D, N)
    return FormalGroupLaw(X + Y + X * Y, name="multiplicative")


def _unit_inverse(u: TruncSeries) -> TruncSeries:
    """Inverse of a series with unit constant term (geometric expansion)."""
    c0 = u.constant_term()
    c0_inv = c0.inverse()
    nil = u.scalar_mul(c0_inv) - TruncSeries.const(
        u.spec, u.vars, u.spec.one(u.prec), u.cap, u.prec)
    # 1/(1 + nil) = sum (-nil)^k; nil has positive min-degree
    acc = TruncSeries.const(u.spec, u.vars, u.spec.one(u.prec), u.cap, u.prec)
    term = acc
    mind = nil.min_degree()
    if mind is not None and u.cap is not None:
        for _ in range(u.cap // mind + 1):
            term = term * (-nil)
            if term.is_zero():
                break
            acc = acc + term
    return acc.scalar_mul(c0_inv)


def formal_group_from_weierstrass(spec: BaseRingSpec, a4: PadicScalar,
                                  a6: PadicScalar, D: int,
                                  N: int | None = None) -> FormalGroupLaw:
    """Expand the chord-tangent law of y^2 = x^3 + a4 x + a6 at the origin.

    Requires good reduction: v(disc) = 0.  Works in the parameter
    t = -x/y, w = -1/y, where the curve reads w = t^3 + a4 t w^2 + a6 w^3.
    """
    if N is None:
        N = min(a4.prec, a6.prec)
    a4 = a4.reduce_prec(N)
    a6 = a6.reduce_prec(N)
    disc = (a4 ** 3).scale_int(4) + (a6 ** 2).scale_int(27)
    disc = disc.scale_int(-16)
    if disc.is_zero() or disc.valuation() != 0:
        raise BadReduction(f"v(disc) != 0 (disc = {disc!r})")

    # w(t) = t^3 (1 + ...) by fixed-point iteration, exact to degree D + 3
    tcap = D + 3
    t = TruncSeries.gen(spec, ("T",), "T", tcap, N)
    t3 = t ** 3
    w = t3
    while True:
        w_next = t3 + (t * w * w).scalar_mul(a4) + (w ** 3).scalar_mul(a6)
        if w_next == w:
            break
        w = w_next

    # slope lambda = (w(t2) - w(t1))/(t2 - t1), divided exactly via
    # (t2^n - t1^n)/(t2 - t1) = sum_{i+j=n-1} t1^i t2^j
    t1 = TruncSeries.gen(spec, VARS, "X", D, N)
    t2 = TruncSeries.gen(spec, VARS, "Y", D, N)
    pow1 = [TruncSeries.const(spec, VARS, spec.one(N), D, N)]
    pow2 = [TruncSeries.const(spec, VARS, spec.one(N), D, N)]
    for _ in range(tcap + 1):
        pow1.append(pow1[-1] * t1)
        pow2.append(pow2[-1] * t2)
    lam = TruncSeries.zero(spec, VARS, D, N)
    for (k,), d in w.coeffs.items():
        c = PadicScalar(spec, d, w.prec)
        geom = TruncSeries.zero(spec, VARS, D, N)
        for i in range(k):
            geom = geom + pow1[i] * pow2[k - 1 - i]
        lam = lam + geom.scalar_mul(c)
    w1 = w.substitute({"T": t1})
    nu = w1 - lam * t1

    # third root of the cubic in t cut out by the chord w = lam t + nu
    lam2 = lam * lam
    a2_coef = (lam * nu).scalar_mul(a4).int_mul(2) \
        + (lam2 * nu).scalar_mul(a6).int_mul(3)
    a3_coef = TruncSeries.const(spec, VARS, spec.one(N), D, N) \
        + lam2.scalar_mul(a4) + (lam2 * lam).scalar_mul(a6)
    t3_root = -(t1 + t2) - a2_coef * _unit_inverse(a3_coef)
    # inversion is t -> -t for a1 = a3 = 0
    law = -t3_root
    return FormalGroupLaw(law,
                          name=f"weierstrass(a4={a4.digits},a6={a6.digits})",
                          curve=(a4, a6))


def trace_of_frobenius(spec: BaseRingSpec, a4: PadicScalar,
                       a6: PadicScalar) -> int:
    """a_p = p + 1 - #E(F_p) for y^2 = x^3 + a4 x + a6, by point counting.

    The residue field is F_p (q = p in this tier); the short Weierstrass
    model needs p >= 3 for good reduction.
    """
    p = spec.p
    if p < 3:
        raise BadReduction("short Weierstrass model is singular mod 2")
    r4 = a4.digits[0] % p
    r6 = a6.digits[0] % p
    squares = {(y * y) % p for y in range(p)}
    count = 1  # point at infinity
    for x in range(p):
        rhs = (x * x * x + r4 * x + r6) % p
        if rhs == 0:
            count += 1
        elif rhs in squares:
            count += 2
    return p + 1 - count


def frobenius_unit_root(spec: BaseRingSpec, ap: int,
                        prec: int) -> PadicScalar:
    """The unit root of x^2 - a_p x + p (Hensel lift from x = a_p mod pi).

    Exists exactly when the reduction is ordinary (p does not divide a_p).
    """
    if ap % spec.p == 0:
        raise BadReduction("supersingular reduction has no unit root")
    P = prec + 2
    x = spec.scalar(ap, P)
    pconst = spec.scalar(spec.p, P)
    apc = spec.scalar(ap, P)
    for _ in range(P + 2):
        f = x * x - apc * x + pconst
        if f.is_zero():
            break
        fp = x.scale_int(2) - apc
        x = x - f * fp.inverse()
    return x.reduce_prec(prec)


def formal_logarithm(F: FormalGroupLaw) -> FracSeries:
    """L with L'(T) = 1/F_X(0, T), L(0) = 0; linearizes the law over K."""
    spec = F.spec
    D = F.cap
    N = F.prec
    # F_X(0, T): coefficient of X^1 Y^k in the law
    pods = {}
    for (i, k), d in F.law.coeffs.items():
        if i == 1:
            pods[(k,)] = [x * 1 for x in d]
    fx0 = TruncSeries(spec, ("T",), pods, D, N)
    P = _unit_inverse(fx0)
    shift = log_denominator_exponent(spec, D)
    out = {}
    for (k,), d in P.coeffs.items():
        deg = k + 1
        if deg > D:
            continue
        c = PadicScalar(spec, d, P.prec)
        v = spec.e * _vp(deg, spec.p) if deg % spec.p == 0 else 0
        if shift < v:
            raise PrecisionExhausted("log denominator exceeds budget")
        unit = spec.scalar(deg // spec.p ** (v // spec.e), N + shift)
        num = c.mul_pi_power(shift - v) * unit.inverse()
        out[(deg,)] = num.reduce_prec(N).digits
    num_series = TruncSeries(spec, ("T",), out, D, N)
    return FracSeries(num_series, shift)


def check_log_linearizes(F: FormalGroupLaw, L: FracSeries) -> bool:
    """L(F(X,Y)) = L(X) + L(Y) modulo (pi^(prec-shift), degree > cap)."""
    lx = L.substitute({"T": TruncSeries.gen(F.spec, VARS, "X", F.cap, F.prec)})
    ly = L.substitute({"T": TruncSeries.gen(F.spec, VARS, "Y", F.cap, F.prec)})
    lf = L.substitute({"T": F.law})
    return (lf.num == (lx + ly).num)


def frac_compose_1var(L: FracSeries, E: FracSeries) -> FracSeries:
    """Compose one-variable K-series: L(E(T)), tracking denominators."""
    spec = L.num.spec
    var = E.num.vars[0]
    acc = FracSeries(TruncSeries.zero(spec, E.num.vars, E.num.cap,
                                      E.num.prec), 0)
    powers = [TruncSeries.const(spec, E.num.vars, spec.one(E.num.prec),
                                E.num.cap, E.num.prec)]
    for (k,), d in sorted(L.num.coeffs.items()):
        while len(powers) <= k:
            powers.append(powers[-1] * E.num)
        c = PadicScalar(spec, d, L.num.prec)
        acc = acc + FracSeries(powers[k].scalar_mul(c),
                               L.shift + E.shift * k)
    return acc


def reverse_series(L: FracSeries, shift_budget: int) -> FracSeries:
    """Compositional inverse of a one-variable K-series T + O(T^2).

    The result is returned as pi^(-shift_budget) * integral; raises
    PrecisionExhausted when the true denominators exceed the budget.
    Degree-by-degree recursion: the T^k coefficient of L(E_<k) fixes b_k.
    """
    spec = L.num.spec
    D = L.num.cap
    var = L.num.vars[0]
    if D is None:
        raise IncompatibleSpec("reversion needs a capped series")
    l1 = L.num.coeff((1,))
    if L.shift:
        l1 = l1.exact_div_pi(L.shift)
    if not l1.is_unit():
        raise IncompatibleSpec("reversion needs a unit linear coefficient")
    P = L.num.prec
    l1_inv = l1.inverse()
    E = FracSeries(TruncSeries.gen(spec, (var,), var, D, P)
                   .scalar_mul(l1_inv), 0)
    for k in range(2, D + 1):
        comp = frac_compose_1var(L, E).normalize()
        ck = comp.num.coeff((k,))
        if ck.is_zero():
            continue
        mk = -(l1_inv * ck)
        mono = FracSeries(TruncSeries(spec, (var,), {(k,): mk.digits}, D,
                                      mk.prec), comp.shift).normalize()
        if mono.shift > shift_budget:
            raise PrecisionExhausted("reversion denominator exceeds budget")
        E = E + mono
    return E.normalize()
