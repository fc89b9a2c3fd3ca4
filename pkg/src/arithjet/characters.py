"""Group laws of the jet kernels N^n and jet spaces J^n, and their
additive characters.

Coordinates: a point of N^n is the Witt vector V(z), z = (x1, ..., xn); a
point of the formal neighborhood of J^n is (x0, ..., xn).  The group law is
the formal group law F evaluated by Witt ring operations.

Characters are found through the logarithm-ghost generators
    l_i = L(w_i(x))      (jet side,  i = 0..n)
    Psi_i = pi^(-1) L(kappa_i)   (kernel side, kappa_i = w_i at x0 = 0)
every additive K-valued series on the group is a K-combination of these
(the ghost components w_i are ring maps and L linearizes F), so solving
for characters reduces to an integrality lattice over R/pi^M, handled by
Howell forms.  A direct monomial-level solver is kept as a cross-check.
"""

from __future__ import annotations

from .errors import (
    BasisExpansionFailed,
    DegreeCapTooSmall,
    IncompatibleSpec,
    Inconclusive,
    IntegralityViolation,
    NotDivisible,
)
from .fgl import (
    FormalGroupLaw,
    formal_logarithm,
    frobenius_unit_root,
    trace_of_frobenius,
)
from .howell import howell_form, module_rank, right_kernel_basis
from .ring import PadicScalar
from .series import FracSeries, TruncSeries, monomial_key
from .witt import (
    WittVector,
    fgl_eval_witt,
    frobenius_W,
    structural_polynomials,
)


def kernel_vars(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(1, n + 1))


def jet_vars(n: int) -> tuple:
    return tuple(f"x{i}" for i in range(n + 1))


# --------------------------------------------------------------------------
# group laws
# --------------------------------------------------------------------------

class KernelGroupLaw:
    """Componentwise group law of N^n (kind 'kernel') or J^n (kind 'jet').

    The componentwise series (a Witt-ring evaluation of F) are expensive
    at large degree caps and are only needed for substitution checks and
    the direct solver, so they are computed on first access.
    """

    def __init__(self, F: FormalGroupLaw, n: int, kind: str):
        self.F = F
        self.spec = F.spec
        self.n = n
        self.kind = kind
        self.vars_x = kernel_vars(n) if kind == "kernel" else jet_vars(n)
        self.cap = F.cap
        self.prec = F.prec
        self._laws = None

    @property
    def vars_y(self):
        return tuple(v.replace("x", "y") for v in self.vars_x)

    @property
    def laws(self) -> tuple:
        if self._laws is None:
            self._laws = self._build()
        return self._laws

    def _build(self):
        spec = self.spec
        xs = self.vars_x
        ys = self.vars_y
        vars_ = xs + ys
        cap, prec = self.cap, self.prec
        gens = {v: TruncSeries.gen(spec, vars_, v, cap, prec) for v in vars_}
        if self.kind == "kernel":
            zero = TruncSeries.zero(spec, vars_, cap, prec)
            a = WittVector(spec, [zero] + [gens[v] for v in xs])
            b = WittVector(spec, [zero] + [gens[v] for v in ys])
        else:
            a = WittVector(spec, [gens[v] for v in xs])
            b = WittVector(spec, [gens[v] for v in ys])
        c = fgl_eval_witt(self.F, a, b)
        comps = list(c.components)
        if self.kind == "kernel":
            if not comps[0].is_zero():
                raise IncompatibleSpec("kernel law leaked into slot 0")
            comps = comps[1:]
        return tuple(comps)

    def __repr__(self):
        return (f"KernelGroupLaw({self.kind}, n={self.n}, "
                f"F={self.F.name}, D={self.cap})")


def kernel_group_law(F: FormalGroupLaw, n: int) -> KernelGroupLaw:
    """Group law of N^n: F(V(x-block), V(y-block)), slots 1..n."""
    if n < 1:
        raise IncompatibleSpec("kernel order must be >= 1")
    return KernelGroupLaw(F, n, "kernel")


def jet_group_law(F: FormalGroupLaw, n: int) -> KernelGroupLaw:
    """Group law of the formal neighborhood of J^n, slots 0..n."""
    if n < 0:
        raise IncompatibleSpec("jet order must be >= 0")
    return KernelGroupLaw(F, n, "jet")


# --------------------------------------------------------------------------
# characters
# --------------------------------------------------------------------------

class Character:
    """An additive series on N^n ('kernel') or J^n ('jet').

    The series is stored as a FracSeries (characters of interest are
    integral, but normalized representatives carry a bounded pi-power
    denominator during extraction).  `lcoeffs`, when present, is the
    coefficient vector in the logarithm-ghost basis: the character equals
    pi^(-lshift) * sum(lcoeffs[i] * l_i).
    """

    def __init__(self, kind: str, n: int, frac: FracSeries,
                 lcoeffs=None, lshift: int = 0):
        self.kind = kind
        self.n = n
        self.frac = frac.normalize()
        self.lcoeffs = lcoeffs
        self.lshift = lshift

    @property
    def spec(self):
        return self.frac.num.spec

    @property
    def vars(self):
        return self.frac.num.vars

    def series(self) -> TruncSeries:
        """The character as an integral series (NotDivisible if it isn't)."""
        return self.frac.to_integral()

    def is_integral(self) -> bool:
        return self.frac.is_integral()

    def linear_coeff(self, name: str):
        """K-valued linear coefficient, as (numerator scalar, shift)."""
        return self.frac.num.linear_coeff(name), self.frac.shift

    def scalar_mul(self, c: PadicScalar) -> "Character":
        return Character(self.kind, self.n, self.frac.scalar_mul(c),
                         None, self.lshift)

    def __sub__(self, other: "Character") -> "Character":
        return Character(self.kind, self.n, self.frac - other.frac)

    def check_additive(self, law: KernelGroupLaw) -> bool:
        """psi(x (+) y) = psi(x) + psi(y), by substitution into the law."""
        if law.n != self.n or law.kind != self.kind:
            raise IncompatibleSpec("law does not match character order")
        spec = self.spec
        vars2 = law.vars_x + law.vars_y
        cap = law.cap
        prec = min(self.frac.num.prec, law.prec)
        lhs = self.frac.num.substitute(
            dict(zip(law.vars_x, law.laws)))
        gx = {v: TruncSeries.gen(spec, vars2, v, cap, prec)
              for v in vars2}
        px = self.frac.num.substitute({v: gx[v] for v in law.vars_x})
        py = self.frac.num.substitute(
            dict(zip(law.vars_x, (gx[v] for v in law.vars_y))))
        return lhs == px + py

    def to_json(self):
        return {"kind": self.kind, "order": self.n,
                "denominator_exponent": self.frac.shift,
                "numerator": self.frac.num.to_json()}

    def __repr__(self):
        lead = self.frac.num.leading_monomial()
        return (f"Character({self.kind}, n={self.n}, shift={self.frac.shift},"
                f" lead={lead})")


# --------------------------------------------------------------------------
# logarithm-ghost generators
# --------------------------------------------------------------------------

def ghost_witt_polynomials(spec, n: int, kind: str, cap, prec):
    """w_i(x) (jet) or kappa_i = w_i|x0=0 (kernel), as TruncSeries."""
    if kind == "jet":
        vars_ = jet_vars(n)
        lo = 0
    else:
        vars_ = kernel_vars(n)
        lo = 1
    q = spec.q
    out = []
    rng = range(n + 1) if kind == "jet" else range(1, n + 1)
    for i in rng:
        acc = TruncSeries.zero(spec, vars_, cap, prec)
        for j in range(lo, i + 1):
            g = TruncSeries.gen(spec, vars_, f"x{j}", cap, prec + j)
            acc = acc + (g ** (q ** (i - j))).mul_pi(j).reduce_prec(prec)
        out.append(acc)
    return vars_, out


def log_ghost_generators(F: FormalGroupLaw, n: int, kind: str):
    """l_i = L(w_i) (jet) or Psi_i = pi^(-1) L(kappa_i) (kernel)."""
    L = formal_logarithm(F)
    vars_, ws = ghost_witt_polynomials(F.spec, n, kind, F.cap, F.prec)
    gens = []
    for w in ws:
        g = L.substitute({"T": w})
        if kind == "kernel":
            g = FracSeries(g.num, g.shift + 1)
        gens.append(g)
    return vars_, gens


# --------------------------------------------------------------------------
# solvers
# --------------------------------------------------------------------------

def _lattice_solve(spec, gens, M: int, extra_rows=()):
    """Solutions d (mod pi^M) of sum d_i * num_i = 0 mod pi^M, where the
    generators are first aligned to a common denominator exponent.

    `extra_rows` are additional linear conditions on d at the same modulus
    (used for the global extension-class constraint on jet characters)."""
    s = max(g.shift for g in gens)
    nums = [g.aligned(s).num for g in gens]
    for nm in nums:
        if nm.prec < M:
            raise IncompatibleSpec(
                f"generator precision {nm.prec} below modulus {M}")
    monomials = sorted({m for nm in nums for m in nm.coeffs},
                       key=monomial_key)
    rows = [[nm.coeff(m) for nm in nums] for m in monomials]
    rows.extend(list(r) for r in extra_rows)
    sols = right_kernel_basis(spec, rows, len(gens), M)
    return s, sols


def unit_root_row(F: FormalGroupLaw, n: int, M: int):
    """The extension-class constraint row (1, alpha, ..., alpha^n).

    A combination pi^(-1) sum d_i l_i of the log-ghost characters extends
    to a character of the full jet space of the curve exactly when its
    class in Ext vanishes; in the ordinary case Ext is a line on which the
    lateral Frobenius acts through the Frobenius eigenvalues, and the
    condition reduces to sum d_i alpha^i = 0 with alpha the unit root of
    x^2 - a_p x + p.  (The formal-group lattice alone always retains the
    slope-one pseudo-solution with ratio p/alpha, which belongs to the
    p-divisible group but not to the curve.)

    Returns None when no constraint applies: laws without curve data
    (formal-local models such as the multiplicative analog), and
    supersingular reduction, where the lattice is already exact.
    """
    if F.curve is None:
        return None
    spec = F.spec
    a4, a6 = F.curve
    ap = trace_of_frobenius(spec, a4, a6)
    if ap % spec.p == 0:
        return None
    alpha = frobenius_unit_root(spec, ap, M)
    row = []
    power = spec.one(M)
    for _ in range(n + 1):
        row.append(power)
        power = power * alpha
    return row


def _combine(kind, n, gens, digits, M, tshift):
    """Character pi^(-tshift) * sum(d_i * G_i) from a solution vector.

    The solution digits are defined modulo pi^M; any lift differs by a
    multiple of pi^M = pi^(shift + tshift), which changes the combination
    by an integral additive series, so the specific lift below is a valid
    representative at the full generator precision.
    """
    spec = gens[0].num.spec
    P = min(g.num.prec for g in gens)
    acc = None
    coeffs = [PadicScalar(spec, d, M) for d in digits]
    for c, g in zip(coeffs, gens):
        if c.is_zero():
            continue
        lift = PadicScalar(spec, c.digits, P)  # exact integer lift of c
        term = FracSeries(g.num.scalar_mul(lift), g.shift + tshift)
        acc = term if acc is None else acc + term
    if acc is None:
        raise IncompatibleSpec("zero solution vector")
    return Character(kind, n, acc, lcoeffs=coeffs, lshift=tshift)


def solve_additive(law: KernelGroupLaw, D: int | None = None,
                   N: int | None = None, method: str = "log"):
    """Basis of the additive-series module of a group law.

    Returns (characters, rank): `characters` are the unit-content Howell
    generators of the solution lattice (each rechecked for additivity by
    substitution is left to callers/tests); `rank` counts them.
    """
    spec = law.spec
    n = law.n
    D = law.cap if D is None else D
    N = spec.precision_default if N is None else N
    if law.kind == "kernel" and D < spec.q ** (n - 1) + 1:
        raise DegreeCapTooSmall(
            f"degree cap {D} < q^(n-1) + 1 = {spec.q ** (n - 1) + 1}")
    if method == "direct":
        return _solve_direct(law, D, N)
    if method != "log":
        raise IncompatibleSpec(f"unknown solver method {method!r}")
    vars_, gens = log_ghost_generators(law.F, n, law.kind)
    if law.kind == "kernel":
        # candidate characters are R-combinations of the Psi_i
        tshift = 0
        extra = ()
    else:
        # delta-characters may carry one pi in the denominator, and must
        # satisfy the global extension-class constraint of the curve
        tshift = 1
        row = unit_root_row(law.F, n, max(g.shift for g in gens) + tshift)
        extra = (row,) if row is not None else ()
    M = max(g.shift for g in gens) + tshift
    s, sols = _lattice_solve(spec, gens, M, extra_rows=extra)
    units = []
    for d in sols:
        vals = [PadicScalar(spec, dig, M).valuation() for dig in d]
        if any(v == 0 for v in vals if v is not None):
            units.append(d)
    rank = module_rank(spec, units, len(gens), M) if units else 0
    chars = [_combine(law.kind, n, gens, d, M, tshift) for d in units]
    return chars, rank


def _axis_constraints(law: KernelGroupLaw, j: int):
    """The law specialized to y = y_j e_j (single-variable y-block)."""
    spec = law.spec
    tvars = law.vars_x + (law.vars_y[j],)
    cap, prec = law.cap, law.prec
    imgs = {}
    for v in law.vars_x:
        imgs[v] = TruncSeries.gen(spec, tvars, v, cap, prec)
    for k, v in enumerate(law.vars_y):
        imgs[v] = (TruncSeries.gen(spec, tvars, v, cap, prec) if k == j
                   else TruncSeries.zero(spec, tvars, cap, prec))
    return tvars, [s.substitute(imgs) for s in law.laws]


def _solve_direct(law: KernelGroupLaw, D: int, N: int):
    """Monomial-level solver: unknown coefficients b_m, additivity rows."""
    spec = law.spec
    xs = law.vars_x
    k = len(xs)
    # candidate monomials: total degree 1..D in the x-variables
    monos = []

    def _enum(prefix, rem, idx):
        if idx == k:
            m = tuple(prefix)
            if sum(m) >= 1:
                monos.append(m)
            return
        for e_ in range(rem + 1):
            _enum(prefix + [e_], rem - e_, idx + 1)

    _enum([], D, 0)
    monos.sort(key=monomial_key)
    col = {m: i for i, m in enumerate(monos)}
    one = [1] + [0] * (spec.e - 1)
    rows = {}
    for j in range(k):
        tvars, laws_j = _axis_constraints(law, j)
        # defect(m) = (x (+) y_j e_j)^m - x^m - (y_j e_j)^m, coefficientwise
        powers = [[TruncSeries.const(spec, tvars, spec.one(law.prec),
                                     law.cap, law.prec)]
                  for _ in range(k)]
        for m in monos:
            term = None
            for i, e_ in enumerate(m):
                if e_ == 0:
                    continue
                plist = powers[i]
                while len(plist) <= e_:
                    plist.append(plist[-1] * laws_j[i])
                piece = plist[e_]
                term = piece if term is None else term * piece
            # subtract the pure-x part, and the pure-y part when m is a
            # power of x_j alone (otherwise psi(y_j e_j) has no m-term)
            sub = {tuple(list(m) + [0]): list(one)}
            if all(e_ == 0 for i, e_ in enumerate(m) if i != j):
                sub[tuple([0] * k + [m[j]])] = list(one)
            term = term - TruncSeries(spec, tvars, sub, law.cap, term.prec)
            for mm, d in term.coeffs.items():
                key = (j, mm)
                if key not in rows:
                    rows[key] = [[0] * spec.e for _ in range(len(monos))]
                cell = rows[key][col[m]]
                for t_, x_ in enumerate(d):
                    cell[t_] += x_
    matrix = [[spec.reduce_digits(cell, N) for cell in row]
              for row in rows.values()]
    sols = right_kernel_basis(spec, matrix, len(monos), N)
    units = []
    for d in sols:
        vals = [PadicScalar(spec, dig, N).valuation() for dig in d]
        if any(v == 0 for v in vals if v is not None):
            units.append(d)
    rank = module_rank(spec, units, len(monos), N) if units else 0
    chars = []
    for d in units:
        coeffs = {m: dig for m, dig in zip(monos, d)}
        num = TruncSeries(spec, xs, coeffs, law.cap, N)
        chars.append(Character(law.kind, law.n, FracSeries(num, 0)))
    return chars, rank


# --------------------------------------------------------------------------
# pullbacks
# --------------------------------------------------------------------------

def frobenius_coordinates(spec, vars_: tuple, cap, prec):
    """Coordinate polynomials of F on Witt vectors with the given generic
    components: returns series (F_0, ..., F_(k-2)) for k input variables."""
    comps = [TruncSeries.gen(spec, vars_, v, cap, prec) for v in vars_]
    return frobenius_W(WittVector(spec, comps)).components


def frobenius_pullback(theta: Character) -> Character:
    """phi^*: characters of J^n -> characters of J^(n+1).

    In Witt coordinates phi(x_0, ..., x_(n+1)) = (F_0(x), ..., F_n(x)), so
    the pullback substitutes x_i <- F_i."""
    if theta.kind != "jet":
        raise IncompatibleSpec("frobenius_pullback acts on jet characters")
    n = theta.n
    num = theta.frac.num
    vars_new = jet_vars(n + 1)
    comps = frobenius_coordinates(theta.spec, vars_new, num.cap, num.prec)
    mapping = {f"x{i}": comps[i] for i in range(n + 1)}
    out = num.substitute(mapping)
    return Character("jet", n + 1, FracSeries(out, theta.frac.shift))


def lateral_pullback(psi: Character) -> Character:
    """frak-f^*: characters of N^n -> characters of N^(n+1).

    The lateral Frobenius sends V(z) to V(F(z)); on tail coordinates
    (x_1, ..., x_(n+1)) it acts by x_i <- F_(i-1)."""
    if psi.kind != "kernel":
        raise IncompatibleSpec("lateral_pullback acts on kernel characters")
    n = psi.n
    num = psi.frac.num
    vars_new = kernel_vars(n + 1)
    comps = frobenius_coordinates(psi.spec, vars_new, num.cap, num.prec)
    mapping = {f"x{i}": comps[i - 1] for i in range(1, n + 1)}
    out = num.substitute(mapping)
    return Character("kernel", n + 1, FracSeries(out, psi.frac.shift))


def i_star(theta: Character) -> Character:
    """Restriction along i: N^n -> J^n (set x_0 = 0)."""
    if theta.kind != "jet":
        raise IncompatibleSpec("i_star acts on jet characters")
    num = theta.frac.num
    spec = theta.spec
    coeffs = {m[1:]: d for m, d in num.coeffs.items() if m[0] == 0}
    out = TruncSeries(spec, kernel_vars(theta.n), coeffs, num.cap, num.prec)
    return Character("kernel", theta.n, FracSeries(out, theta.frac.shift))


def u_star(psi: Character, n: int) -> Character:
    """Pullback along the projection u: N^n -> N^(psi.n), n >= psi.n."""
    if psi.kind != "kernel":
        raise IncompatibleSpec("u_star acts on kernel characters")
    if n < psi.n:
        raise IncompatibleSpec("u_star cannot lower the order")
    if n == psi.n:
        return psi
    out = psi.frac.num.extend_vars(kernel_vars(n))
    return Character("kernel", n, FracSeries(out, psi.frac.shift))


# --------------------------------------------------------------------------
# the Psi basis
# --------------------------------------------------------------------------

def psi_basis(F: FormalGroupLaw, n: int):
    """Psi_1, ..., Psi_n as characters of N^n.

    Psi_1 is the order-1 kernel character normalized to x_1 + O(deg 2);
    Psi_(i+1) is the lateral pullback of Psi_i.  The linear part of Psi_i
    is pi^(i-1) x_i, so reductions mod pi are independent (leading
    monomials x_1, x_1^q, x_1^(q^2), ...)."""
    chars, rank = solve_additive(kernel_group_law(F, 1))
    if rank < 1:
        raise Inconclusive("no order-1 kernel character found at precision")
    psi1 = None
    for ch in chars:
        c = ch.series().linear_coeff("x1")
        if c.valuation() == 0:
            psi1 = ch.scalar_mul(c.inverse())
            break
    if psi1 is None:
        raise Inconclusive("kernel solve produced no unit-linear character")
    tower = [psi1]
    for _ in range(n - 1):
        tower.append(lateral_pullback(tower[-1]))
    return [u_star(ps, n) for ps in tower]


def expand_in_psi_basis(psi: Character, psis):
    """Coefficients a_i with psi = sum a_i Psi_i, solved top-down.

    Uses that the linear part of Psi_i is pi^(i-1) x_i: a_i is the x_i
    coefficient of the remainder divided by pi^(i-1).  Raises
    BasisExpansionFailed when the remainder does not vanish."""
    n = psi.n
    if len(psis) != n:
        raise IncompatibleSpec("basis length does not match order")
    try:
        r = psi.series()
    except NotDivisible as exc:
        raise BasisExpansionFailed(f"character is not integral: {exc}")
    coeffs = []
    for i in range(n, 0, -1):
        c = r.linear_coeff(f"x{i}")
        try:
            a = c.exact_div_pi(i - 1) if i > 1 else c
        except NotDivisible as exc:
            raise BasisExpansionFailed(
                f"x{i} coefficient not divisible by pi^{i - 1}: {exc}")
        coeffs.append(a)
        term = psis[i - 1].series().scalar_mul(a)
        P = min(r.prec, term.prec)
        r = r.reduce_prec(P) - term.reduce_prec(P)
    if not r.is_zero():
        raise BasisExpansionFailed(
            f"nonzero remainder, leading monomial {r.leading_monomial()}")
    return list(reversed(coeffs))


# --------------------------------------------------------------------------
# delta-characters of the curve, splitting number, invariants
# --------------------------------------------------------------------------

def solve_delta_characters(F: FormalGroupLaw, n: int,
                           D: int | None = None, N: int | None = None):
    """Basis of the order-n delta-character module at precision.

    Jet-side solve with the extension-class constraint; every returned
    character vanishes at the origin and carries denominator pi."""
    return solve_additive(jet_group_law(F, n), D, N)


def splitting_number(F: FormalGroupLaw, D: int | None = None,
                     N: int | None = None) -> int:
    """Smallest order m of a nonzero delta-character; m is 1 or 2."""
    _, r1 = solve_delta_characters(F, 1, D, N)
    if r1 >= 1:
        return 1
    _, r2 = solve_delta_characters(F, 2, D, N)
    if r2 >= 1:
        return 2
    raise Inconclusive(
        "no delta-character of order <= 2 at this precision/degree")


def upsilon(theta: Character) -> PadicScalar:
    """The Lie map value Upsilon(Theta) = -A0 (minus the x0-linear part)."""
    c, shift = theta.linear_coeff("x0")
    return -c.exact_div_pi(shift) if shift else -c


def extract_lambda_gamma(theta: Character, psis):
    """(lambda, gamma) of a delta-character of order m in {1, 2}.

    Normalizes theta so that i^* theta = Psi_m - lambda Psi_(m-1) - ...;
    gamma = pi * A0 with A0 the x0-linear coefficient.  Asserts the
    integrality of lambda and pi | gamma; violations raise
    IntegralityViolation (they would falsify the structure theorems, so
    they are surfaced loudly rather than swallowed)."""
    m = theta.n
    if m not in (1, 2):
        raise IncompatibleSpec("extract_lambda_gamma expects order 1 or 2")
    if len(psis) < m:
        raise IncompatibleSpec("need the Psi basis up to order m")
    # a solved character's combination vector is only defined modulo pi^M;
    # lambda and gamma inherit that precision
    M = theta.lcoeffs[0].prec if theta.lcoeffs else None
    coeffs = expand_in_psi_basis(i_star(theta), list(psis[:m]))
    am = coeffs[-1]
    if am.valuation() != 0:
        raise Inconclusive("top Psi coefficient is not a unit at precision")
    theta = theta.scalar_mul(am.inverse())
    lam = None
    if m == 2:
        lam = -(coeffs[0] * am.inverse())
        if lam.valuation() is not None and lam.valuation() < 0:
            raise IntegralityViolation("lambda is not integral")
    c, shift = theta.linear_coeff("x0")
    if shift > 1:
        try:
            gamma = c.exact_div_pi(shift - 1)
        except NotDivisible:
            raise IntegralityViolation("gamma = pi*A0 is not divisible by pi")
    else:
        gamma = c.mul_pi_power(1 - shift)
    if not gamma.is_zero() and gamma.valuation() < 1:
        raise IntegralityViolation("gamma is not divisible by pi")
    if M is not None:
        if lam is not None and lam.prec > M:
            lam = lam.reduce_prec(M)
        if gamma.prec > M:
            gamma = gamma.reduce_prec(M)
    return lam, gamma


class RankTable:
    """Ranks of the character modules for n = 0..n_max (g = 1).

    rk_X[n]   -- rank of the order-n delta-character module
    rk_hom[n] -- rank of Hom(N^n, Ga-hat) (equals n)
    rk_I[n]   -- rank of the image of the boundary map, n*g - rk_X[n]
    h[n]      -- rk_I[n] - rk_I[n-1]        (n >= 1)
    l[n]      -- independent quotient ranks (n >= 1); l[n] = h[n-1] - h[n]
    """

    def __init__(self, n_max, rk_X, rk_hom, rk_I, h, l, m_low, m_up):
        self.g = 1
        self.n_max = n_max
        self.rk_X = rk_X
        self.rk_hom = rk_hom
        self.rk_I = rk_I
        self.h = h
        self.l = l
        self.m_low = m_low
        self.m_up = m_up

    def check(self):
        """Assert the rank arithmetic; raises IntegralityViolation."""
        g = self.g
        h = self.h
        for n in range(2, self.n_max + 1):
            if h[n] > h[n - 1]:
                raise IntegralityViolation("h is not weakly decreasing")
        for n in range(1, self.n_max + 1):
            prev = g if n == 1 else h[n - 1]
            if self.l[n] != prev - h[n]:
                raise IntegralityViolation(
                    f"l_{n} != h_{n-1} - h_{n} ({self.l[n]} vs "
                    f"{prev - h[n]})")
        if self.m_low != self.m_up or self.m_low > 2:
            raise IntegralityViolation("m_low = m_up <= 2 fails")
        for n in range(self.n_max + 1):
            if self.rk_hom[n] != n * g:
                raise IntegralityViolation("rk Hom(N^n) != n*g")
        return True

    def to_json(self):
        return {"g": self.g, "n_max": self.n_max, "rk_X": self.rk_X,
                "rk_hom": self.rk_hom, "rk_I": self.rk_I,
                "h": self.h[1:], "l": self.l[1:],
                "m_low": self.m_low, "m_up": self.m_up}

    def __repr__(self):
        return (f"RankTable(rk_X={self.rk_X}, h={self.h[1:]}, "
                f"l={self.l[1:]}, m={self.m_low})")


def _dvec(ch: Character, M: int):
    return [PadicScalar(ch.spec, c.digits, M) for c in ch.lcoeffs]


def rank_table(F: FormalGroupLaw, n_max: int,
               D: int | None = None, N: int | None = None) -> RankTable:
    """Solve for the character modules at n = 0..n_max and tabulate ranks.

    The l-ranks are computed independently as ranks of the quotients by
    u^* and phi^* images (in log-ghost coordinates: padding and shifting
    the solved coefficient vectors), then cross-checked against
    l_n = h_(n-1) - h_n by check()."""
    spec = F.spec
    g = 1
    rk_X = [0]
    rk_hom = [0]
    sols = {0: []}
    M = None
    for n in range(1, n_max + 1):
        chars, r = solve_delta_characters(F, n, D, N)
        rk_X.append(r)
        sols[n] = chars
        _, rk = solve_additive(kernel_group_law(F, n), D, N)
        rk_hom.append(rk)
        if chars:
            Mn = chars[0].lcoeffs[0].prec
            M = Mn if M is None else min(M, Mn)
    if M is None:
        raise Inconclusive("no delta-characters found up to n_max")
    rk_I = [n * g - rk_X[n] for n in range(n_max + 1)]
    h = [g] + [rk_I[n] - rk_I[n - 1] for n in range(1, n_max + 1)]
    l = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        vecs = [_dvec(ch, M) for ch in sols[n]]
        images = []
        for ch in sols[n - 1]:
            v = _dvec(ch, M)
            images.append(v + [spec.scalar(0, M)])          # u^* padding
            images.append([spec.scalar(0, M)] + v)          # phi^* shift
        full = module_rank(spec, vecs + images, n + 1, M)
        sub = module_rank(spec, images, n + 1, M)
        l[n] = full - sub
    m_low = next((n for n in range(1, n_max + 1) if rk_X[n] > 0), None)
    if m_low is None:
        raise Inconclusive("rk_X = 0 through n_max; precision too small")
    m_up = next((n for n in range(1, n_max + 1) if h[n] == 0), n_max + 1)
    table = RankTable(n_max, rk_X, rk_hom, rk_I, h, l, m_low, m_up)
    table.check()
    return table
