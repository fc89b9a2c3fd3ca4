"""Base ring arithmetic: R = Z_p[pi]/(pi^e - p) at finite pi-adic precision.

Elements are canonical residues modulo pi^N stored as integer digit vectors
of length e in the basis 1, pi, ..., pi^(e-1).  With that representation
exact division by pi is a shift-and-borrow, never a rational division.
Precision is carried per element and only ever decreases.

The Frobenius lift phi is the identity (valid because the residue field is
F_p, so x == x^q mod pi); the pi-derivation is delta(x) = (phi(x) - x^q)/pi.
"""

from __future__ import annotations

from .errors import (
    IncompatibleSpec,
    NotDivisible,
    PrecisionExhausted,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class BaseRingSpec:
    """Parameters of the base ring: prime p, ramification e (pi^e = p),
    Frobenius power q, and a default working precision.

    Ramified specs (e >= 2) must satisfy e <= p - 2; the unramified case
    e = 1 is always legal.
    """

    def __init__(self, p: int, e: int = 1, q: int | None = None,
                 precision_default: int = 6):
        if not _is_prime(p):
            raise IncompatibleSpec(f"p = {p} is not prime")
        if e < 1:
            raise IncompatibleSpec(f"e = {e} must be >= 1")
        if e >= 2 and e > p - 2:
            raise IncompatibleSpec(
                f"ramification e = {e} violates e <= p - 2 for p = {p}")
        if q is None:
            q = p
        qq = q
        while qq % p == 0:
            qq //= p
        if qq != 1 or q < p:
            raise IncompatibleSpec(f"q = {q} is not a positive power of p = {p}")
        if precision_default < 1:
            raise IncompatibleSpec("precision_default must be >= 1")
        self.p = p
        self.e = e
        self.q = q
        self.precision_default = precision_default

    def __eq__(self, other):
        return (isinstance(other, BaseRingSpec)
                and (self.p, self.e, self.q) == (other.p, other.e, other.q))

    def __hash__(self):
        return hash((self.p, self.e, self.q))

    def __repr__(self):
        return f"BaseRingSpec(p={self.p}, e={self.e}, q={self.q})"

    # -- element constructors -------------------------------------------------

    def digit_modulus(self, i: int, prec: int) -> int:
        """Modulus p^m for digit i of an element known modulo pi^prec."""
        m = max(0, -(-(prec - i) // self.e))  # ceil((prec - i) / e)
        return self.p ** m

    def reduce_digits(self, digits, prec: int) -> tuple:
        """Canonically reduce a raw digit vector modulo pi^prec."""
        return tuple(d % self.digit_modulus(i, prec)
                     for i, d in enumerate(digits))

    def scalar(self, n: int, prec: int | None = None) -> "PadicScalar":
        """The image of the integer n, at the given (or default) precision."""
        if prec is None:
            prec = self.precision_default
        digits = [0] * self.e
        digits[0] = n
        return PadicScalar(self, digits, prec)

    def pi(self, prec: int | None = None) -> "PadicScalar":
        if prec is None:
            prec = self.precision_default
        if self.e == 1:
            return self.scalar(self.p, prec)
        digits = [0] * self.e
        digits[1] = 1
        return PadicScalar(self, digits, prec)

    def zero(self, prec: int | None = None) -> "PadicScalar":
        return self.scalar(0, prec)

    def one(self, prec: int | None = None) -> "PadicScalar":
        return self.scalar(1, prec)


class PadicScalar:
    """An element of R known modulo pi^prec.

    digits[i] is the coefficient of pi^i, canonically reduced modulo
    p^ceil((prec - i)/e).  The valuation of an element indistinguishable
    from 0 at this precision is reported as None ("at least prec").
    """

    __slots__ = ("spec", "digits", "prec")

    def __init__(self, spec: BaseRingSpec, digits, prec: int):
        if prec < 0:
            raise PrecisionExhausted("negative precision")
        if len(digits) != spec.e:
            raise IncompatibleSpec("digit vector has wrong length")
        self.spec = spec
        self.prec = prec
        self.digits = tuple(
            d % spec.digit_modulus(i, prec) for i, d in enumerate(digits))

    # -- bookkeeping ----------------------------------------------------------

    def _check(self, other: "PadicScalar"):
        if self.spec != other.spec:
            raise IncompatibleSpec("scalars over different base rings")

    def reduce_prec(self, prec: int) -> "PadicScalar":
        if prec > self.prec:
            raise PrecisionExhausted(
                f"cannot raise precision {self.prec} -> {prec}")
        return PadicScalar(self.spec, self.digits, prec)

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.digits)

    def valuation(self) -> int | None:
        """pi-adic valuation, or None when the element is 0 mod pi^prec."""
        if self.is_zero():
            return None
        v = None
        for i, d in enumerate(self.digits):
            if d != 0:
                vi = i + self.spec.e * _vp(d, self.spec.p)
                if v is None or vi < v:
                    v = vi
        return min(v, self.prec) if v is not None else None

    def is_unit(self) -> bool:
        return self.digits[0] % self.spec.p != 0

    # -- ring operations ------------------------------------------------------

    def __add__(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        prec = min(self.prec, other.prec)
        digits = [a + b for a, b in zip(self.digits, other.digits)]
        return PadicScalar(self.spec, digits, prec)

    def __neg__(self) -> "PadicScalar":
        return PadicScalar(self.spec, [-d for d in self.digits], self.prec)

    def __sub__(self, other: "PadicScalar") -> "PadicScalar":
        return self + (-other)

    def __mul__(self, other: "PadicScalar") -> "PadicScalar":
        self._check(other)
        e = self.spec.e
        p = self.spec.p
        prec = min(self.prec, other.prec)
        out = [0] * e
        for i, a in enumerate(self.digits):
            if a == 0:
                continue
            for j, b in enumerate(other.digits):
                if b == 0:
                    continue
                k = i + j
                if k < e:
                    out[k] += a * b
                else:
                    out[k - e] += p * a * b
        return PadicScalar(self.spec, out, prec)

    def __pow__(self, n: int) -> "PadicScalar":
        if n < 0:
            raise ValueError("negative exponent; use inverse() first")
        result = self.spec.one(self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "PadicScalar":
        """Inverse modulo pi^prec (Newton lifting); requires a unit."""
        if not self.is_unit():
            raise NotDivisible("cannot invert a non-unit")
        p = self.spec.p
        x = self.spec.scalar(pow(self.digits[0] % p, -1, p), self.prec)
        two = self.spec.scalar(2, self.prec)
        # quadratic convergence: k doublings reach precision 2^k
        steps = max(1, (self.prec - 1).bit_length() + 1)
        for _ in range(steps):
            x = x * (two - self * x)
        return x

    def scale_int(self, n: int) -> "PadicScalar":
        return PadicScalar(self.spec, [n * d for d in self.digits], self.prec)

    # -- pi-adic primitives ---------------------------------------------------

    def exact_div_pi(self, k: int = 1) -> "PadicScalar":
        """Exact division by pi^k; precision drops by k."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if self.prec <= k:
            raise PrecisionExhausted(
                f"precision {self.prec} cannot absorb division by pi^{k}")
        p = self.spec.p
        digits = list(self.digits)
        for _ in range(k):
            if digits[0] % p != 0:
                raise NotDivisible("element is not divisible by pi")
            head = digits[0] // p
            digits = digits[1:] + [head]
        return PadicScalar(self.spec, digits, self.prec - k)

    def mul_pi_power(self, k: int) -> "PadicScalar":
        """Exact multiplication by pi^k; the known precision rises by k."""
        if k < 0:
            return self.exact_div_pi(-k)
        if k == 0:
            return self
        e = self.spec.e
        p = self.spec.p
        digits = list(self.digits)
        for _ in range(k):
            digits = [p * digits[-1]] + digits[:-1]
        return PadicScalar(self.spec, digits, self.prec + k)

    # alias so scalars and series expose the same pi-shift interface
    def mul_pi(self, k: int) -> "PadicScalar":
        return self.mul_pi_power(k)

    def phi(self) -> "PadicScalar":
        """The Frobenius lift on R; the identity in tier-1 configurations."""
        return self

    def delta(self) -> "PadicScalar":
        """The pi-derivation delta(x) = (phi(x) - x^q)/pi."""
        if self.prec < 2:
            raise PrecisionExhausted("delta needs precision >= 2")
        return (self.phi() - self ** self.spec.q).exact_div_pi(1)

    # -- comparison / io ------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PadicScalar):
            return NotImplemented
        if self.spec != other.spec:
            return False
        prec = min(self.prec, other.prec)
        return (self.reduce_prec(prec).digits
                == other.reduce_prec(prec).digits)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        if self.spec.e == 1:
            return f"{self.digits[0]} (mod pi^{self.prec})"
        body = " + ".join(f"{d}*pi^{i}" for i, d in enumerate(self.digits))
        return f"{body} (mod pi^{self.prec})"

    def to_json(self):
        return {"digits": list(self.digits), "prec": self.prec,
                "pi_power_basis": self.spec.e}


def exact_div_pi(a: PadicScalar, k: int) -> PadicScalar:
    """Module-level alias for the primitive (see PadicScalar.exact_div_pi)."""
    return a.exact_div_pi(k)


def pi_derivation_scalar(a: PadicScalar) -> PadicScalar:
    """delta(a) = (phi(a) - a^q)/pi."""
    return a.delta()


def c_pi(spec: BaseRingSpec, x: PadicScalar, y: PadicScalar) -> PadicScalar:
    """C_pi(x, y) = (x^q + y^q - (x+y)^q)/pi, the sum-rule correction."""
    q = spec.q
    return (x ** q + y ** q - (x + y) ** q).exact_div_pi(1)
