"""Linear algebra over the chain ring R/pi^M (Howell / strong echelon form).

Every nonzero element of R/pi^M is a unit times pi^v, so Gaussian
elimination works with valuation-minimal pivots; Howell completeness is
restored by adjoining pi^(M-v) times each row with pivot valuation v > 0,
which makes the row span closed under "multiply and project".  Kernels are
read off an augmented [A | I] reduction: rows whose A-part vanishes give a
generating set of the left kernel.

Entries are digit vectors (see ring.py) interpreted modulo pi^M; arithmetic
is modular, not precision-tracked -- exact division by pi^v is well defined
modulo pi^(M-v), and every place a division result is used multiplies it
back by something of valuation >= v, so any lift is consistent.
"""

from __future__ import annotations

from .errors import IncompatibleSpec
from .ring import BaseRingSpec, PadicScalar


def _as_digits(spec: BaseRingSpec, x, M: int):
    if isinstance(x, PadicScalar):
        return spec.reduce_digits(x.digits, M)
    if isinstance(x, int):
        return spec.reduce_digits([x] + [0] * (spec.e - 1), M)
    return spec.reduce_digits(list(x), M)


class _Mod:
    """Helper bundle: arithmetic on digit vectors modulo pi^M."""

    def __init__(self, spec: BaseRingSpec, M: int):
        self.spec = spec
        self.M = M
        self.zero = tuple(spec.reduce_digits([0] * spec.e, M))

    def scalar(self, d):
        return PadicScalar(self.spec, d, self.M)

    def val(self, d):
        return self.scalar(d).valuation()

    def is_zero(self, d):
        return not any(self.spec.reduce_digits(d, self.M))

    def add(self, a, b):
        return self.spec.reduce_digits([x + y for x, y in zip(a, b)], self.M)

    def mul(self, a, b):
        return (self.scalar(a) * self.scalar(b)).digits

    def neg(self, a):
        return self.spec.reduce_digits([-x for x in a], self.M)

    def div_pi(self, a, k):
        """A lift of a / pi^k (defined modulo pi^(M-k))."""
        if k == 0:
            return self.spec.reduce_digits(list(a), self.M)
        d = self.scalar(a).exact_div_pi(k).digits
        return self.spec.reduce_digits(list(d), self.M)

    def mul_pi(self, a, k):
        if k == 0:
            return self.spec.reduce_digits(list(a), self.M)
        d = self.scalar(a).mul_pi_power(k).digits
        return self.spec.reduce_digits(list(d), self.M)

    def inv(self, a):
        return self.scalar(a).inverse().digits


class HowellForm:
    """Result of a Howell reduction: canonical rows plus pivot data."""

    def __init__(self, spec: BaseRingSpec, M: int, rows, pivots):
        self.spec = spec
        self.M = M
        self.rows = rows              # list of row lists of digit tuples
        self.pivots = pivots          # list of (column, valuation)

    @property
    def rank(self) -> int:
        """Number of unit pivots (free-module rank of the row span)."""
        return sum(1 for _, v in self.pivots if v == 0)

    @property
    def pivot_valuations(self):
        return [v for _, v in self.pivots]


def _sweep(md: _Mod, work, ncols: int):
    """One echelon pass with Howell closures; returns (pivot rows, pivots,
    leftover nonzero rows whose earliest entry sits left of the frontier)."""
    pivots = []
    top = 0
    for c in range(ncols):
        best = None
        best_v = None
        for i in range(top, len(work)):
            v = md.val(work[i][c])
            if v is not None and (best_v is None or v < best_v):
                best, best_v = i, v
                if v == 0:
                    break
        if best is None:
            continue
        work[top], work[best] = work[best], work[top]
        v = best_v
        # normalize the pivot entry to exactly pi^v
        u_inv = md.inv(md.div_pi(work[top][c], v))
        work[top] = [md.mul(u_inv, d) for d in work[top]]
        # eliminate the column everywhere else (entries with val >= v)
        for i in range(len(work)):
            if i == top:
                continue
            e = work[i][c]
            ev = md.val(e)
            if ev is None or ev < v:
                continue
            factor = md.div_pi(e, v)
            work[i] = [md.add(d, md.neg(md.mul(factor, pd)))
                       for d, pd in zip(work[i], work[top])]
        # Howell closure: pi^(M-v) * row kills the pivot, keeps the tail
        if v > 0:
            closure = [md.mul_pi(d, md.M - v) for d in work[top]]
            if any(not md.is_zero(d) for d in closure):
                work.append(closure)
        pivots.append((c, v))
        top += 1
    leftovers = [row for row in work[top:]
                 if any(not md.is_zero(d) for d in row)]
    return work[:top], pivots, leftovers


def howell_form(spec: BaseRingSpec, rows, ncols: int, M: int) -> HowellForm:
    """Howell form of the row span of `rows` inside (R/pi^M)^ncols.

    The sweep re-runs whenever a closure row lands left of the pivot
    frontier, so the final row set satisfies the Howell property: any span
    element supported on columns >= c lies in the span of the rows with
    pivot column >= c.
    """
    if M < 1:
        raise IncompatibleSpec("modulus exponent must be >= 1")
    md = _Mod(spec, M)
    work = []
    for r in rows:
        if len(r) != ncols:
            raise IncompatibleSpec("ragged matrix")
        row = [list(_as_digits(spec, x, M)) for x in r]
        if any(not md.is_zero(d) for d in row):
            work.append(row)
    pivots = []
    for _ in range(M * ncols + 2):
        work, pivots, leftovers = _sweep(md, work, ncols)
        if not leftovers:
            break
        work = work + leftovers
    else:  # pragma: no cover - the bound is generous
        raise IncompatibleSpec("Howell reduction failed to stabilize")
    rows_out = [[tuple(spec.reduce_digits(d, M)) for d in row]
                for row in work]
    return HowellForm(spec, M, rows_out, pivots)


def left_kernel_basis(spec: BaseRingSpec, rows, ncols: int, M: int):
    """Generators of {x : x . rows = 0 in (R/pi^M)^ncols}.

    Reduces the augmented matrix [rows | I]; Howell rows whose left part
    vanishes have right parts generating the left kernel.
    """
    nrows = len(rows)
    md = _Mod(spec, M)
    one = _as_digits(spec, 1, M)
    aug = []
    for i, r in enumerate(rows):
        if len(r) != ncols:
            raise IncompatibleSpec("ragged matrix")
        row = [_as_digits(spec, x, M) for x in r]
        row += [list(one) if j == i else list(md.zero) for j in range(nrows)]
        aug.append(row)
    H = howell_form(spec, aug, ncols + nrows, M)
    out = []
    for row in H.rows:
        if all(md.is_zero(d) for d in row[:ncols]):
            vec = row[ncols:]
            if any(not md.is_zero(d) for d in vec):
                out.append([tuple(spec.reduce_digits(list(d), M))
                            for d in vec])
    return out


def right_kernel_basis(spec: BaseRingSpec, rows, ncols: int, M: int):
    """Generators of {b : rows . b = 0}; transpose + left kernel."""
    nrows = len(rows)
    cols = [[rows[i][c] for i in range(nrows)] for c in range(ncols)]
    return left_kernel_basis(spec, cols, nrows, M)


def unit_vectors(spec: BaseRingSpec, vectors, M: int):
    """Split a generating set into unit-content and pi-divisible members.

    A vector with a unit entry contributes to the free rank of the solution
    module; pi-divisible generators are precision shadows of unit ones.
    """
    md = _Mod(spec, M)
    units, shadows = [], []
    for vec in vectors:
        if any(md.val(d) == 0 for d in vec):
            units.append(vec)
        else:
            shadows.append(vec)
    return units, shadows


def module_rank(spec: BaseRingSpec, vectors, ncols: int, M: int) -> int:
    """Free rank of the span of `vectors` in (R/pi^M)^ncols.

    Equals the number of unit elementary divisors (Smith form over the
    chain ring), which is the F_p-rank of the generator matrix modulo pi.
    """
    if not vectors:
        return 0
    p = spec.p
    rows = []
    for vec in vectors:
        row = [_as_digits(spec, d, M)[0] % p for d in vec]
        if any(row):
            rows.append(row)
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in
                           zip(rows[i], rows[rank])]
        rank += 1
    return rank
