"""Monoid, group and cogroup objects checked as commuting diagrams.

Objects of finite Set are sizes n with elements 0..n-1. A product X×Y is
indexed x * |Y| + y, the one-point set is {0}, the empty set has size 0 and
the coproduct X⊔Y places X first (left tag) and Y after it (right tag).
Every diagram is evaluated by composing explicit maps and comparing the two
legs pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .core.groups import FiniteGroup, check_group_action
from .errors import ContractError, MalformedInputError
from .reports import CheckReport, combine, failed, first_violation, first_violation_chunked, passed

FIN_SET = "FinSet"
FIN_GRP = "FinGrp"

__all__ = [
    "FinSetMap", "GroupObjectCandidate", "CogroupCandidate", "LEFT", "RIGHT",
    "check_monoid_object", "check_group_object", "check_interchange",
    "eckmann_hilton", "check_group_action", "check_coassociativity",
    "check_cogroup_object",
]


@dataclass(frozen=True, eq=False)
class FinSetMap:
    """A total map {0..source_size-1} -> {0..target_size-1}."""

    source_size: int
    target_size: int
    map: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.map, dtype=np.intp).reshape(-1)
        if arr.shape[0] != self.source_size:
            raise MalformedInputError(f"map has {arr.shape[0]} entries, source has {self.source_size}")
        if arr.size and (arr.min() < 0 or arr.max() >= self.target_size):
            raise MalformedInputError(f"map values must lie in [0, {self.target_size})")
        arr.setflags(write=False)
        object.__setattr__(self, "map", arr)

    @classmethod
    def identity(cls, n: int) -> "FinSetMap":
        return cls(n, n, np.arange(n))

    @classmethod
    def diagonal(cls, n: int) -> "FinSetMap":
        """Δ: X -> X×X, the map with both projections equal to the identity."""
        return cls(n, n * n, np.arange(n) * (n + 1))

    @classmethod
    def constant(cls, n: int, target_size: int, value: int) -> "FinSetMap":
        return cls(n, target_size, np.full(n, value))

    def then(self, other: "FinSetMap") -> "FinSetMap":
        """other ∘ self."""
        if other.source_size != self.target_size:
            raise MalformedInputError("maps are not composable")
        return FinSetMap(self.source_size, other.target_size, other.map[self.map])

    def times(self, other: "FinSetMap") -> "FinSetMap":
        """self × other on product objects."""
        a = np.repeat(self.map, other.source_size)
        b = np.tile(other.map, self.source_size)
        return FinSetMap(self.source_size * other.source_size,
                         self.target_size * other.target_size,
                         a * other.target_size + b)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinSetMap):
            return NotImplemented
        return (self.source_size, self.target_size) == (other.source_size, other.target_size) and bool((self.map == other.map).all())

    __hash__ = None


def _carrier_size(carrier: Union[int, FiniteGroup]) -> int:
    return carrier.order if isinstance(carrier, FiniteGroup) else int(carrier)


@dataclass(frozen=True)
class GroupObjectCandidate:
    """Data ⟨G, m, e, i⟩ to be checked; leave ``i`` as None for a monoid candidate.

    In the FinGrp ambient the carrier must be a FiniteGroup, and m is read as
    a map out of the direct product G×G.
    """

    carrier: Union[int, FiniteGroup]
    m: FinSetMap
    e: FinSetMap
    i: Optional[FinSetMap] = None
    ambient: str = FIN_SET

    def __post_init__(self):
        n = _carrier_size(self.carrier)
        if self.ambient not in (FIN_SET, FIN_GRP):
            raise MalformedInputError(f"ambient must be {FIN_SET} or {FIN_GRP}, got {self.ambient!r}")
        if self.ambient == FIN_GRP and not isinstance(self.carrier, FiniteGroup):
            raise MalformedInputError("the FinGrp ambient needs a FiniteGroup carrier")
        if (self.m.source_size, self.m.target_size) != (n * n, n):
            raise MalformedInputError(f"m must map {n * n} pairs to {n} elements")
        if (self.e.source_size, self.e.target_size) != (1, n):
            raise MalformedInputError(f"e must map the one-point set to {n} elements")
        if self.i is not None and (self.i.source_size, self.i.target_size) != (n, n):
            raise MalformedInputError(f"i must map {n} elements to {n}")

    @property
    def size(self) -> int:
        return _carrier_size(self.carrier)

    @classmethod
    def from_group(cls, G: FiniteGroup, ambient: str = FIN_SET, with_inverse: bool = True) -> "GroupObjectCandidate":
        n = G.order
        return cls(
            G,
            FinSetMap(n * n, n, G.table.reshape(-1)),
            FinSetMap(1, n, [0]),
            FinSetMap(n, n, G.inverses) if with_inverse else None,
            ambient,
        )


def _compare(name: str, left: FinSetMap, right: FinSetMap, shape, describe) -> CheckReport:
    ok = (left.map == right.map).reshape(shape)
    hit = first_violation(ok)
    if hit is None:
        return passed(name, f"{ok.size} points agree")
    flat = int(np.ravel_multi_index(hit, shape)) if shape else 0
    return failed(name, hit, describe(hit, int(left.map[flat]), int(right.map[flat])))


def _monoid_legs(cand: GroupObjectCandidate) -> list[CheckReport]:
    n = cand.size
    idn = FinSetMap.identity(n)
    m, e = cand.m, cand.e
    legs = [
        _compare("associativity", idn.times(m).then(m), m.times(idn).then(m), (n, n, n),
                 lambda w, l, r: f"m(m({w[0]},{w[1]}),{w[2]})={r} but m({w[0]},m({w[1]},{w[2]}))={l}"),
        # 1×G and G×1 are identified with G through index 0*n+g = g*1+0 = g
        _compare("left_unit", e.times(idn).then(m), idn, (n,),
                 lambda w, l, r: f"m(e,{w[0]})={l} != {w[0]}"),
        _compare("right_unit", idn.times(e).then(m), idn, (n,),
                 lambda w, l, r: f"m({w[0]},e)={l} != {w[0]}"),
    ]
    return legs


def _m_hom_leg(G: FiniteGroup, m: FinSetMap) -> CheckReport:
    """m is a homomorphism G×G -> G: m(xz, yw) = m(x,y) m(z,w) over all quadruples."""
    n = G.order
    M = m.map.reshape(n, n)
    T = G.table

    def evaluate(x):
        # axes (y, z, w); lhs[y,z,w] = M[T[x,z], T[y,w]]
        lhs = M[T[x, :][None, :, None], T[:, None, :]]
        # rhs[y,z,w] = T[M[x,y], M[z,w]]
        rhs = T[M[x, :][:, None, None], M[None, :, :]]
        return lhs == rhs

    hit = first_violation_chunked(evaluate, n)
    if hit is None:
        return passed("m_homomorphism", f"m respects the product on all {n ** 4} pairs of pairs")
    x, y, z, w = hit
    return failed("m_homomorphism", hit,
                  f"m(({x},{y})*({z},{w}))=m({T[x, z]},{T[y, w]})={M[T[x, z], T[y, w]]} but m({x},{y})*m({z},{w})={T[M[x, y], M[z, w]]}")


def _unary_hom_leg(name: str, G: FiniteGroup, f: np.ndarray) -> CheckReport:
    lhs = f[G.table]
    rhs = G.table[f[:, None], f[None, :]]
    hit = first_violation(lhs == rhs)
    if hit is None:
        return passed(name, "homomorphism")
    a, b = hit
    return failed(name, hit, f"{name[0]}({a}*{b})={lhs[a, b]} but {name[0]}({a})*{name[0]}({b})={rhs[a, b]}")


def _e_hom_leg(G: FiniteGroup, e: FinSetMap) -> CheckReport:
    # from the trivial group: e(0*0) = e(0)*e(0)
    e0 = int(e.map[0])
    if G.mul(e0, e0) != e0:
        return failed("e_homomorphism", [0, 0], f"e(0)*e(0)={G.mul(e0, e0)} but e(0*0)={e0}")
    return passed("e_homomorphism", "e selects the identity of the carrier group")


def check_monoid_object(cand: GroupObjectCandidate) -> CheckReport:
    """Associativity square and both unit triangles; in FinGrp also m, e homomorphisms."""
    legs = _monoid_legs(cand)
    if cand.ambient == FIN_GRP:
        legs += [_m_hom_leg(cand.carrier, cand.m), _e_hom_leg(cand.carrier, cand.e)]
    return combine("monoid_object", legs, f"monoid object in {cand.ambient}")


def check_group_object(cand: GroupObjectCandidate) -> CheckReport:
    """Monoid diagrams plus both inverse diagrams routed through the diagonal."""
    if cand.i is None:
        raise MalformedInputError("a group object candidate needs an inverse map i")
    n = cand.size
    idn = FinSetMap.identity(n)
    delta = FinSetMap.diagonal(n)
    unit_path = FinSetMap.constant(n, 1, 0).then(cand.e)  # G -> 1 -> G
    legs = _monoid_legs(cand)
    legs += [
        _compare("left_inverse", delta.then(cand.i.times(idn)).then(cand.m), unit_path, (n,),
                 lambda w, l, r: f"m(i({w[0]}),{w[0]})={l} != e={r}"),
        _compare("right_inverse", delta.then(idn.times(cand.i)).then(cand.m), unit_path, (n,),
                 lambda w, l, r: f"m({w[0]},i({w[0]}))={l} != e={r}"),
    ]
    if cand.ambient == FIN_GRP:
        G = cand.carrier
        legs += [_m_hom_leg(G, cand.m), _e_hom_leg(G, cand.e), _unary_hom_leg("i_homomorphism", G, cand.i.map)]
    return combine("group_object", legs, f"group object in {cand.ambient}")


def check_interchange(carrier: Union[int, FiniteGroup], star: FinSetMap, dot: FinSetMap) -> CheckReport:
    """(x∗y)·(z∗w) = (x·z)∗(y·w) over all quadruples; witness (x, y, z, w)."""
    n = _carrier_size(carrier)
    for op in (star, dot):
        if (op.source_size, op.target_size) != (n * n, n):
            raise MalformedInputError(f"binary operations must map {n * n} pairs to {n} elements")
    S = star.map.reshape(n, n)
    D = dot.map.reshape(n, n)

    def evaluate(x):
        # axes (y, z, w)
        lhs = D[S[x, :][:, None, None], S[None, :, :]]
        rhs = S[D[x, :][None, :, None], D[:, None, :]]
        return lhs == rhs

    hit = first_violation_chunked(evaluate, n)
    if hit is None:
        return passed("interchange", f"interchange law holds on all {n ** 4} quadruples")
    x, y, z, w = hit
    return failed("interchange", hit,
                  f"({x}*{y}).({z}*{w})={D[S[x, y], S[z, w]]} but ({x}.{z})*({y}.{w})={S[D[x, z], D[y, w]]}")


def eckmann_hilton(cand: GroupObjectCandidate) -> CheckReport:
    """For a group object in FinGrp: m is the native product, and that product commutes."""
    if cand.ambient != FIN_GRP:
        raise ContractError("eckmann_hilton needs a candidate in the FinGrp ambient")
    pre = check_group_object(cand)
    if not pre.passed:
        raise ContractError(f"not a group object in FinGrp: {pre.detail}", pre.witness, pre)
    G = cand.carrier
    n = G.order
    M = cand.m.map.reshape(n, n)
    hit = first_violation(M == G.table)
    if hit is None:
        same = passed("m_is_native", "m coincides with the group's own product")
    else:
        x, y = hit
        same = failed("m_is_native", hit, f"m({x},{y})={M[x, y]} but {x}.{y}={G.table[x, y]}")
    hit = first_violation(G.table == G.table.T)
    if hit is None:
        comm = passed("native_abelian", f"{G.name} is abelian")
    else:
        x, y = hit
        comm = failed("native_abelian", hit, f"{x}.{y}={G.table[x, y]} but {y}.{x}={G.table[y, x]}")
    return combine("eckmann_hilton", [same, comm], "m is the native product and the group is abelian")


# Cogroup objects in finite Set.

LEFT, RIGHT = 0, 1


@dataclass(frozen=True)
class CogroupCandidate:
    """Comultiplication w: C -> C⊔C as (tag, element) pairs, with optional η and co-inverse.

    ``eta`` is a map to the empty set, so it can only be given (as an empty
    tuple) when the carrier is empty.
    """

    size: int
    w: tuple
    eta: Optional[tuple] = None
    inverse: Optional[tuple] = None

    def __post_init__(self):
        if self.size < 0:
            raise MalformedInputError("carrier size must be nonnegative")
        w = tuple((int(t), int(x)) for t, x in self.w)
        if len(w) != self.size:
            raise MalformedInputError(f"w has {len(w)} entries, carrier has {self.size}")
        for pos, (tag, x) in enumerate(w):
            if tag not in (LEFT, RIGHT):
                raise MalformedInputError(f"w({pos}) has tag {tag}; tags are {LEFT} (left) and {RIGHT} (right)")
            if not 0 <= x < self.size:
                raise MalformedInputError(f"w({pos}) = ({tag}, {x}) is out of range")
        object.__setattr__(self, "w", w)
        if self.eta is not None and len(self.eta) != self.size:
            raise MalformedInputError("eta must have one entry per carrier element")
        if self.eta is not None and len(self.eta) > 0:
            raise MalformedInputError("eta maps into the empty set, so it has no valid entries")
        if self.inverse is not None:
            inv = tuple(int(x) for x in self.inverse)
            if len(inv) != self.size or any(not 0 <= x < self.size for x in inv):
                raise MalformedInputError("co-inverse must map the carrier to itself")
            object.__setattr__(self, "inverse", inv)


def check_coassociativity(size: int, w: Sequence) -> CheckReport:
    """(w⊔id)∘w = (id⊔w)∘w, both read in the flattened C⊔C⊔C with tags 0, 1, 2."""
    w = CogroupCandidate(size, w).w

    def w_then_w_left(x):
        tag, y = w[x]
        if tag == LEFT:
            inner, z = w[y]
            return (inner, z)          # (C⊔C)⊔C: inner tags 0/1 stay 0/1
        return (2, y)

    def w_then_w_right(x):
        tag, y = w[x]
        if tag == LEFT:
            return (0, y)
        inner, z = w[y]
        return (1 + inner, z)          # C⊔(C⊔C): inner tags 0/1 become 1/2

    for x in range(size):
        a, b = w_then_w_left(x), w_then_w_right(x)
        if a != b:
            return failed("coassociativity", [x], f"(w⊔id)w({x})={a} but (id⊔w)w({x})={b}")
    return passed("coassociativity", f"both composites agree on {size} elements")


def check_cogroup_object(cand: CogroupCandidate) -> CheckReport:
    """Co-associativity, counit and co-inverse diagrams in finite Set.

    The counit η maps into the initial object, the empty set, so for a
    nonempty carrier it cannot exist and that leg fails at element 0.
    """
    legs = [check_coassociativity(cand.size, cand.w)]
    if cand.size == 0:
        legs += [passed("counit", "vacuous on the empty carrier"),
                 passed("coinverse", "vacuous on the empty carrier")]
    else:
        legs += [
            failed("counit", [0], "no map to the initial object exists from a nonempty carrier"),
            failed("coinverse", [0], "∇∘(ι⊔id)∘w must factor through the empty initial object, impossible for element 0"),
        ]
    return combine("cogroup_object", legs, "cogroup object in finite Set")
