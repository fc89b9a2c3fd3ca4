"""Ghost-map oracle, coded independently of the structural-polynomial path.

This module is the differential-testing reference: it computes Witt ring
operations by passing to ghost coordinates (where they are componentwise),
then inverting the ghost map slot by slot with explicit exact divisions.
Inversion is only valid over pi-torsion-free coefficient algebras and
consumes precision (division by pi^i in slot i), which callers pay for by
supplying boosted inputs.

Nothing here may import from witt.py.
"""

from __future__ import annotations

from .errors import NotDivisible, NotInImage
from .ring import BaseRingSpec


class GhostVector:
    """Plain tuple of ghost components w_0, ..., w_n."""

    __slots__ = ("spec", "components")

    def __init__(self, spec: BaseRingSpec, components):
        self.spec = spec
        self.components = tuple(components)

    def __eq__(self, other):
        return (isinstance(other, GhostVector)
                and self.spec == other.spec
                and all(a == b for a, b in
                        zip(self.components, other.components))
                and len(self.components) == len(other.components))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        return f"ghost{self.components!r}"


def ghost(x) -> GhostVector:
    """w_i = x_0^(q^i) + pi x_1^(q^(i-1)) + ... + pi^i x_i."""
    spec = x.spec
    q = spec.q
    comps = x.components
    out = []
    for i in range(len(comps)):
        acc = None
        for j in range(i + 1):
            term = (comps[j] ** (q ** (i - j))).mul_pi(j)
            acc = term if acc is None else acc + term
        out.append(acc)
    return GhostVector(spec, out)


def from_ghost(g: GhostVector):
    """The unique x with ghost(x) = g, or NotInImage.

    Slot i costs i digits of precision (exact division by pi^i).
    """
    from .witt import WittVector  # constructor only; no algorithm shared
    spec = g.spec
    q = spec.q
    comps = []
    for i, gi in enumerate(g.components):
        acc = gi
        for j in range(i):
            acc = acc - (comps[j] ** (q ** (i - j))).mul_pi(j)
        if i:
            try:
                acc = acc.exact_div_pi(i)
            except NotDivisible as exc:
                raise NotInImage(f"ghost slot {i} not divisible by pi^{i}") \
                    from exc
        comps.append(acc)
    prec = min(c.prec for c in comps)
    return WittVector(spec, [c.reduce_prec(prec) for c in comps])


def ghost_add(a: GhostVector, b: GhostVector) -> GhostVector:
    return GhostVector(a.spec, [x + y for x, y in
                                zip(a.components, b.components)])


def ghost_mul(a: GhostVector, b: GhostVector) -> GhostVector:
    return GhostVector(a.spec, [x * y for x, y in
                                zip(a.components, b.components)])


def oracle_add(x, y):
    return from_ghost(ghost_add(ghost(x), ghost(y)))


def oracle_mul(x, y):
    return from_ghost(ghost_mul(ghost(x), ghost(y)))
