"""Sparse multivariate truncated power series over PadicScalar.

Coefficients are stored internally as raw digit vectors (see ring.py), one
dict entry per monomial; monomials are exponent tuples aligned with an
ordered variable list.  A series carries a total-degree cap (cap=None means
"exact polynomial, no truncation") and a single pi-adic precision shared by
every coefficient.

Monomial order is graded lex with the first variable smallest; leading terms
are minimal in that order (so x1 leads x1 + higher-degree corrections).
"""

from __future__ import annotations

from .errors import (
    IncompatibleSpec,
    NonNilpotentComposition,
    NotDivisible,
    PrecisionExhausted,
)
from .ring import BaseRingSpec, PadicScalar


def monomial_key(m: tuple) -> tuple:
    """Graded-lex sort key (ascending = from the leading term up)."""
    return (sum(m), m[::-1])


def _raw_add(a, b):
    return [x + y for x, y in zip(a, b)]


def _raw_mul(spec: BaseRingSpec, a, b):
    e = spec.e
    if e == 1:
        return (a[0] * b[0],)
    p = spec.p
    out = [0] * e
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            k = i + j
            if k < e:
                out[k] += x * y
            else:
                out[k - e] += p * x * y
    return out


class TruncSeries:
    """A truncated series: sum of coeffs[m] * vars^m over stored monomials."""

    __slots__ = ("spec", "vars", "coeffs", "cap", "prec")

    def __init__(self, spec: BaseRingSpec, vars: tuple, coeffs: dict,
                 cap: int | None, prec: int, _canonical: bool = False):
        self.spec = spec
        self.vars = tuple(vars)
        self.cap = cap
        self.prec = prec
        if _canonical:
            self.coeffs = coeffs
            return
        clean = {}
        for m, d in coeffs.items():
            if cap is not None and sum(m) > cap:
                continue
            r = spec.reduce_digits(d, prec)
            if any(r):
                clean[m] = r
        self.coeffs = clean

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, spec, vars, cap, prec):
        return cls(spec, vars, {}, cap, prec, _canonical=True)

    @classmethod
    def const(cls, spec, vars, value: PadicScalar, cap, prec):
        m = (0,) * len(vars)
        return cls(spec, vars, {m: value.digits}, cap, prec)

    @classmethod
    def gen(cls, spec, vars, name: str, cap, prec):
        i = tuple(vars).index(name)
        m = tuple(1 if j == i else 0 for j in range(len(vars)))
        one = [0] * spec.e
        one[0] = 1
        return cls(spec, vars, {m: one}, cap, prec)

    @classmethod
    def from_scalar_dict(cls, spec, vars, items: dict, cap, prec):
        """Build from a dict monomial -> PadicScalar."""
        return cls(spec, vars, {m: c.digits for m, c in items.items()},
                   cap, prec)

    # -- bookkeeping ----------------------------------------------------------

    def _check(self, other: "TruncSeries"):
        if (self.spec != other.spec or self.vars != other.vars
                or self.cap != other.cap):
            raise IncompatibleSpec("series context mismatch")

    def coeff(self, m: tuple) -> PadicScalar:
        d = self.coeffs.get(tuple(m))
        if d is None:
            return self.spec.zero(self.prec)
        return PadicScalar(self.spec, d, self.prec)

    def constant_term(self) -> PadicScalar:
        return self.coeff((0,) * len(self.vars))

    def linear_coeff(self, name: str) -> PadicScalar:
        i = self.vars.index(name)
        m = tuple(1 if j == i else 0 for j in range(len(self.vars)))
        return self.coeff(m)

    def is_zero(self) -> bool:
        return not self.coeffs

    def min_degree(self) -> int | None:
        if not self.coeffs:
            return None
        return min(sum(m) for m in self.coeffs)

    def max_degree(self) -> int | None:
        if not self.coeffs:
            return None
        return max(sum(m) for m in self.coeffs)

    def leading_monomial(self) -> tuple | None:
        if not self.coeffs:
            return None
        return min(self.coeffs, key=monomial_key)

    def reduce_prec(self, prec: int) -> "TruncSeries":
        if prec > self.prec:
            raise PrecisionExhausted("cannot raise series precision")
        return TruncSeries(self.spec, self.vars, self.coeffs, self.cap, prec)

    def with_cap(self, cap: int | None) -> "TruncSeries":
        """Tighten (or drop, for exact polynomials only) the degree cap."""
        if cap is None and self.cap is not None:
            raise IncompatibleSpec("cannot remove a truncation cap")
        return TruncSeries(self.spec, self.vars, self.coeffs, cap, self.prec)

    def extend_vars(self, vars: tuple) -> "TruncSeries":
        """Reinterpret over a larger variable list (old vars must appear)."""
        vars = tuple(vars)
        pos = [vars.index(v) for v in self.vars]
        coeffs = {}
        for m, d in self.coeffs.items():
            mm = [0] * len(vars)
            for p_, exp in zip(pos, m):
                mm[p_] = exp
            coeffs[tuple(mm)] = d
        return TruncSeries(self.spec, vars, coeffs, self.cap, self.prec,
                           _canonical=True)

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        prec = min(self.prec, other.prec)
        out = dict(self.coeffs)
        for m, d in other.coeffs.items():
            cur = out.get(m)
            out[m] = _raw_add(cur, d) if cur is not None else d
        return TruncSeries(self.spec, self.vars, out, self.cap, prec)

    def __neg__(self) -> "TruncSeries":
        out = {m: [-x for x in d] for m, d in self.coeffs.items()}
        return TruncSeries(self.spec, self.vars, out, self.cap, self.prec)

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        return self + (-other)

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        spec = self.spec
        prec = min(self.prec, other.prec)
        cap = self.cap
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        b_items = sorted(b.items(), key=lambda kv: sum(kv[0]))
        out: dict = {}
        for m1, d1 in a.items():
            deg1 = sum(m1)
            budget = None if cap is None else cap - deg1
            for m2, d2 in b_items:
                if budget is not None and sum(m2) > budget:
                    break
                m = tuple(x + y for x, y in zip(m1, m2))
                prod = _raw_mul(spec, d1, d2)
                cur = out.get(m)
                out[m] = _raw_add(cur, prod) if cur is not None else prod
        return TruncSeries(spec, self.vars, out, cap, prec)

    def scalar_mul(self, c: PadicScalar) -> "TruncSeries":
        prec = min(self.prec, c.prec)
        out = {m: _raw_mul(self.spec, d, c.digits)
               for m, d in self.coeffs.items()}
        return TruncSeries(self.spec, self.vars, out, self.cap, prec)

    def int_mul(self, n: int) -> "TruncSeries":
        out = {m: [n * x for x in d] for m, d in self.coeffs.items()}
        return TruncSeries(self.spec, self.vars, out, self.cap, self.prec)

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("negative series power")
        result = TruncSeries.const(self.spec, self.vars,
                                   self.spec.one(self.prec), self.cap,
                                   self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- pi bookkeeping -------------------------------------------------------

    def mul_pi(self, k: int) -> "TruncSeries":
        """Exact multiplication by pi^k (precision rises by k)."""
        if k == 0:
            return self
        out = {m: PadicScalar(self.spec, d, self.prec).mul_pi_power(k).digits
               for m, d in self.coeffs.items()}
        return TruncSeries(self.spec, self.vars, out, self.cap, self.prec + k,
                           _canonical=True)

    def exact_div_pi(self, k: int) -> "TruncSeries":
        """Coefficientwise exact division by pi^k; raises NotDivisible."""
        if k == 0:
            return self
        out = {}
        for m, d in self.coeffs.items():
            c = PadicScalar(self.spec, d, self.prec).exact_div_pi(k)
            out[m] = c.digits
        return TruncSeries(self.spec, self.vars, out, self.cap, self.prec - k)

    def residue_coeffs(self) -> dict:
        """Reduction mod pi: dict monomial -> element of F_p (an int)."""
        p = self.spec.p
        out = {}
        for m, d in self.coeffs.items():
            r = d[0] % p
            if r:
                out[m] = r
        return out

    # -- substitution ---------------------------------------------------------

    def substitute(self, mapping: dict) -> "TruncSeries":
        """Substitute series for variables.  Unmapped variables persist.

        When self is truncated (cap not None) every image must have zero
        constant term, else discarded high-degree terms of self would feed
        low degrees of the result.  Exact polynomials accept any images.
        All images must share one context, which becomes the result context.
        """
        images = {}
        ctx = None
        for v, s in mapping.items():
            if v not in self.vars:
                raise IncompatibleSpec(f"unknown variable {v!r}")
            if self.cap is not None and not s.constant_term().is_zero():
                raise NonNilpotentComposition(
                    f"image of {v!r} has a nonzero constant term")
            images[v] = s
            ctx = s
        if ctx is None:
            return self
        for v in self.vars:
            if v not in images:
                if v not in ctx.vars:
                    raise IncompatibleSpec(
                        f"unmapped variable {v!r} missing from target context")
                images[v] = TruncSeries.gen(ctx.spec, ctx.vars, v, ctx.cap,
                                            ctx.prec)
        prec = min([self.prec] + [s.prec for s in images.values()])
        cap = ctx.cap
        one = TruncSeries.const(ctx.spec, ctx.vars, ctx.spec.one(prec), cap,
                                prec)
        # cache powers of each image
        powers = {v: [one] for v in self.vars}
        out = TruncSeries.zero(ctx.spec, ctx.vars, cap, prec)
        for m, d in sorted(self.coeffs.items(),
                           key=lambda kv: monomial_key(kv[0])):
            term = None
            for v, expo in zip(self.vars, m):
                if expo == 0:
                    continue
                plist = powers[v]
                while len(plist) <= expo:
                    plist.append(plist[-1] * images[v])
                piece = plist[expo]
                term = piece if term is None else term * piece
            c = PadicScalar(self.spec, d, self.prec)
            if term is None:
                out = out + TruncSeries.const(ctx.spec, ctx.vars,
                                              c.reduce_prec(min(prec, c.prec)),
                                              cap, prec)
            else:
                out = out + term.scalar_mul(c)
        return out

    def evaluate(self, values: dict) -> PadicScalar:
        """Evaluate an exact polynomial (cap=None) at scalar arguments."""
        if self.cap is not None:
            raise IncompatibleSpec(
                "scalar evaluation requires an exact (uncapped) polynomial")
        vals = []
        prec = self.prec
        for v in self.vars:
            if v not in values:
                raise IncompatibleSpec(f"missing value for {v!r}")
            vals.append(values[v])
            prec = min(prec, values[v].prec)
        acc = self.spec.zero(prec)
        for m, d in self.coeffs.items():
            term = PadicScalar(self.spec, d, self.prec)
            for val, expo in zip(vals, m):
                if expo:
                    term = term * val ** expo
            acc = acc + term
        return acc

    # -- comparison / io ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if self.spec != other.spec or self.vars != other.vars:
            return False
        prec = min(self.prec, other.prec)
        a = TruncSeries(self.spec, self.vars, self.coeffs, self.cap, prec)
        b = TruncSeries(other.spec, other.vars, other.coeffs, other.cap, prec)
        return a.coeffs == b.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        if not self.coeffs:
            return f"0 (vars={','.join(self.vars)}, prec={self.prec})"
        bits = []
        for m in sorted(self.coeffs, key=monomial_key)[:8]:
            mono = "*".join(f"{v}^{k}" for v, k in zip(self.vars, m) if k)
            c = self.coeff(m)
            bits.append(f"({c.digits})*{mono or '1'}")
        more = "" if len(self.coeffs) <= 8 else f" + ... ({len(self.coeffs)} terms)"
        return " + ".join(bits) + more + f" (mod pi^{self.prec})"

    def to_json(self):
        items = {}
        for m in sorted(self.coeffs, key=monomial_key):
            c = self.coeff(m)
            items[",".join(map(str, m))] = [list(c.digits), c.prec]
        return {"variables": list(self.vars), "degree_cap": self.cap,
                "prec": self.prec, "coeffs": items}


def series_ops(f: TruncSeries, g: TruncSeries, op: str, var: str | None = None):
    """Dispatch helper: op in {add, mul, compose, substitute}."""
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op in ("compose", "substitute"):
        if var is None:
            if len(f.vars) != 1:
                raise IncompatibleSpec("compose needs a single-variable f")
            var = f.vars[0]
        return f.substitute({var: g})
    raise IncompatibleSpec(f"unknown op {op!r}")


class FracSeries:
    """A series with a global denominator: value = pi^(-shift) * num.

    The value is known modulo pi^(num.prec - shift).  Used for formal
    logarithms and logarithm-ghost character generators, whose coefficients
    live in K with bounded denominators.
    """

    __slots__ = ("num", "shift")

    def __init__(self, num: TruncSeries, shift: int = 0):
        self.num = num
        self.shift = shift

    @property
    def value_prec(self) -> int:
        return self.num.prec - self.shift

    def aligned(self, shift: int) -> "FracSeries":
        if shift < self.shift:
            raise ValueError("cannot lower the denominator exponent")
        return FracSeries(self.num.mul_pi(shift - self.shift), shift)

    def normalize(self) -> "FracSeries":
        """Move pi-powers common to all numerator coefficients into shift."""
        if self.shift == 0 or self.num.is_zero():
            return FracSeries(self.num, 0) if self.num.is_zero() else self
        vmin = self.shift
        for m, d in self.num.coeffs.items():
            c = PadicScalar(self.num.spec, d, self.num.prec)
            v = c.valuation()
            vmin = min(vmin, self.shift if v is None else v)
            if vmin == 0:
                return self
        return FracSeries(self.num.exact_div_pi(vmin), self.shift - vmin)

    def __add__(self, other: "FracSeries") -> "FracSeries":
        a = self.normalize()
        b = other.normalize()
        s = max(a.shift, b.shift)
        return FracSeries(a.aligned(s).num + b.aligned(s).num, s).normalize()

    def __neg__(self):
        return FracSeries(-self.num, self.shift)

    def __sub__(self, other):
        return self + (-other)

    def scalar_mul(self, c: PadicScalar) -> "FracSeries":
        return FracSeries(self.num.scalar_mul(c), self.shift)

    def substitute(self, mapping: dict) -> "FracSeries":
        return FracSeries(self.num.substitute(mapping), self.shift)

    def to_integral(self) -> TruncSeries:
        """Clear the denominator exactly; raises NotDivisible if it is real."""
        return self.num.exact_div_pi(self.shift) if self.shift else self.num

    def is_integral(self) -> bool:
        if self.shift == 0:
            return True
        try:
            self.num.exact_div_pi(self.shift)
            return True
        except NotDivisible:
            return False
