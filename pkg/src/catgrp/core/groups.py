"""Finite groups as multiplication tables, plus homomorphisms, actions and subgroups.

Elements of a group of order n are the indices 0..n-1 and element 0 is
always the identity. All objects are immutable once built; the numpy arrays
they hold are flagged read-only.
"""

from __future__ import annotations

import itertools
import os
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from ..errors import ContractError, MalformedInputError, OrderCapExceeded
from ..reports import CheckReport, combine, failed, first_violation, passed

DEFAULT_ORDER_CAP = 200


def order_cap() -> int:
    """The largest group order accepted, from CATGRP_ORDER_CAP or the default."""
    raw = os.environ.get("CATGRP_ORDER_CAP")
    if raw is None:
        return DEFAULT_ORDER_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise MalformedInputError(f"CATGRP_ORDER_CAP must be an integer, got {raw!r}")
    if cap < 1:
        raise MalformedInputError(f"CATGRP_ORDER_CAP must be positive, got {cap}")
    return cap


def _check_cap(order: int) -> None:
    cap = order_cap()
    if order > cap:
        raise OrderCapExceeded(order, cap)


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


def _as_index_array(data, what: str, ndim: int) -> np.ndarray:
    try:
        arr = np.asarray(data)
    except ValueError as exc:  # ragged nested lists
        raise MalformedInputError(f"{what} is not rectangular: {exc}") from None
    if arr.size == 0:
        arr = arr.reshape((0,) * ndim) if arr.ndim != ndim else arr
    elif arr.dtype.kind not in "iu":
        raise MalformedInputError(f"{what} must hold integer indices, got dtype {arr.dtype}")
    if arr.ndim != ndim:
        raise MalformedInputError(f"{what} must be {ndim}-dimensional, got shape {arr.shape}")
    return arr.astype(np.intp)


def _square_table(table) -> np.ndarray:
    arr = _as_index_array(table, "multiplication table", 2)
    n = arr.shape[0]
    if n == 0 or arr.shape != (n, n):
        raise MalformedInputError(f"multiplication table must be square and nonempty, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() >= n:
        bad = first_violation((arr >= 0) & (arr < n))
        raise MalformedInputError(f"table entry at {bad} is out of range [0, {n})")
    return arr


def validate_group(table) -> CheckReport:
    """Check that a square index table is a group with identity 0.

    Legs run in order identity, inverses, associativity; the witness is the
    first failing element, element or triple in row-major order.
    """
    t = _square_table(table)
    n = t.shape[0]
    _check_cap(n)
    idx = np.arange(n)
    ident_ok = (t[0] == idx) & (t[:, 0] == idx)
    hit = first_violation(ident_ok)
    if hit is not None:
        g = hit[0]
        return failed("validate_group", [g], f"element 0 is not a two-sided identity: 0*{g}={t[0, g]}, {g}*0={t[g, 0]}")
    two_sided = (t == 0) & (t.T == 0)
    has_inv = two_sided.any(axis=1)
    hit = first_violation(has_inv)
    if hit is not None:
        return failed("validate_group", [hit[0]], f"element {hit[0]} has no two-sided inverse")
    # t[t][a,b,c] = (ab)c and t[:, t][a,b,c] = a(bc)
    hit = first_violation(t[t] == t[:, t])
    if hit is not None:
        a, b, c = hit
        return failed("validate_group", hit, f"associativity fails: ({a}*{b})*{c}={t[t[a, b], c]} but {a}*({b}*{c})={t[a, t[b, c]]}")
    return passed("validate_group", f"order {n}: identity, inverses and {n ** 3} associativity triples verified")


class FiniteGroup:
    """A finite group given by its full multiplication table.

    The constructor enforces the structural invariants (square table, entries
    in range, 0 a two-sided identity, two-sided inverses, order cap);
    associativity is left to :func:`validate_group`, or use
    :meth:`from_table` to get both.
    """

    __slots__ = ("table", "inverses", "name")

    def __init__(self, table, name: str = "G"):
        t = _square_table(table)
        n = t.shape[0]
        _check_cap(n)
        idx = np.arange(n)
        if not ((t[0] == idx).all() and (t[:, 0] == idx).all()):
            raise MalformedInputError("element 0 must be the two-sided identity")
        two_sided = (t == 0) & (t.T == 0)
        has_inv = two_sided.any(axis=1)
        if not has_inv.all():
            g = int(np.flatnonzero(~has_inv)[0])
            raise MalformedInputError(f"element {g} has no two-sided inverse")
        self.table = _frozen(t)
        self.inverses = _frozen(two_sided.argmax(axis=1).astype(np.intp))
        self.name = name

    @classmethod
    def from_table(cls, table, name: str = "G") -> "FiniteGroup":
        report = validate_group(table)
        if not report.passed:
            raise MalformedInputError(f"{name}: {report.detail}")
        return cls(table, name)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    identity = 0

    def __len__(self) -> int:
        return self.order

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverses[a])

    def product(self, *xs: int) -> int:
        acc = 0
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self.table[self.table[g, x], self.inverses[g]])

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def element_orders(self) -> np.ndarray:
        n = self.order
        orders = np.zeros(n, dtype=np.intp)
        power = np.arange(n)
        k = 1
        while (orders == 0).any():
            orders[(power == 0) & (orders == 0)] = k
            power = self.table[power, np.arange(n)]
            k += 1
        return orders

    def order_profile(self) -> tuple[int, ...]:
        """Sorted element orders; equal for isomorphic groups."""
        return tuple(sorted(int(o) for o in self.element_orders()))

    def renamed(self, name: str) -> "FiniteGroup":
        g = object.__new__(FiniteGroup)
        g.table, g.inverses, g.name = self.table, self.inverses, name
        return g

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table.shape == other.table.shape and bool((self.table == other.table).all())

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"


def trivial_group(name: str = "1") -> FiniteGroup:
    return FiniteGroup([[0]], name)


class Hom:
    """A total map between finite groups; homomorphism status is checked lazily."""

    __slots__ = ("source", "target", "map", "name", "_report")

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, name: str = "f"):
        arr = _as_index_array(images, f"map {name}", 1)
        if arr.shape[0] != source.order:
            raise MalformedInputError(f"map {name} has {arr.shape[0]} images, source {source.name} has order {source.order}")
        if arr.size and (arr.min() < 0 or arr.max() >= target.order):
            g = first_violation((arr >= 0) & (arr < target.order))[0]
            raise MalformedInputError(f"map {name} sends {g} to {arr[g]}, outside target {target.name} of order {target.order}")
        self.source = source
        self.target = target
        self.map = _frozen(arr)
        self.name = name
        self._report: Optional[CheckReport] = None

    @classmethod
    def identity(cls, group: FiniteGroup, name: str = "id") -> "Hom":
        return cls(group, group, np.arange(group.order), name)

    @classmethod
    def trivial(cls, source: FiniteGroup, target: FiniteGroup, name: str = "trivial") -> "Hom":
        return cls(source, target, np.zeros(source.order, dtype=np.intp), name)

    def __call__(self, g: int) -> int:
        return int(self.map[g])

    def then(self, other: "Hom", name: Optional[str] = None) -> "Hom":
        """The composite other∘self."""
        if other.source != self.target:
            raise MalformedInputError(f"cannot compose {self.name}: ->{self.target.name} with {other.name}: {other.source.name}->")
        return Hom(self.source, other.target, other.map[self.map], name or f"{other.name}.{self.name}")

    @property
    def verified(self) -> bool:
        if self._report is None:
            self._report = is_homomorphism(self)
        return self._report.passed

    def is_injective(self) -> bool:
        return np.unique(self.map).size == self.source.order

    def is_surjective(self) -> bool:
        return np.unique(self.map).size == self.target.order

    def is_bijective(self) -> bool:
        return self.source.order == self.target.order and self.is_injective()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Hom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and bool((self.map == other.map).all()))

    def __hash__(self) -> int:
        return hash(self.map.tobytes())

    def __repr__(self) -> str:
        return f"Hom({self.name}: {self.source.name} -> {self.target.name})"


def is_homomorphism(f: Hom) -> CheckReport:
    """Exhaustively check f(gh) = f(g)f(h); witness is the first failing pair."""
    m = f.map
    lhs = m[f.source.table]
    rhs = f.target.table[m[:, None], m[None, :]]
    hit = first_violation(lhs == rhs)
    if hit is None:
        report = passed("is_homomorphism", f"{f.name}: {f.source.order ** 2} pairs verified")
    else:
        g, h = hit
        report = failed("is_homomorphism", hit,
                        f"{f.name}({g}*{h})={lhs[g, h]} but {f.name}({g})*{f.name}({h})={rhs[g, h]}")
    f._report = report
    return report


def require_hom(f: Hom, role: str = "map") -> None:
    if not f.verified:
        raise ContractError(f"{role} {f.name} is not a homomorphism: {f._report.detail}", f._report.witness, f._report)


class GroupAction:
    """A left action given as a table with entry [g][x] = g acting on x.

    The carrier is either a FiniteGroup (for actions by automorphisms) or a
    plain set size.
    """

    __slots__ = ("group", "carrier", "table", "name")

    def __init__(self, group: FiniteGroup, carrier: Union[FiniteGroup, int], table, name: str = "act"):
        size = carrier.order if isinstance(carrier, FiniteGroup) else int(carrier)
        if size < 0:
            raise MalformedInputError("carrier size must be nonnegative")
        arr = _as_index_array(table, f"action {name}", 2)
        if arr.size == 0:
            arr = arr.reshape(group.order, size)
        if arr.shape != (group.order, size):
            raise MalformedInputError(f"action {name} has shape {arr.shape}, expected ({group.order}, {size})")
        if arr.size and (arr.min() < 0 or arr.max() >= size):
            bad = first_violation((arr >= 0) & (arr < size))
            raise MalformedInputError(f"action {name} entry {bad} out of range [0, {size})")
        self.group = group
        self.carrier = carrier
        self.table = _frozen(arr)
        self.name = name

    @property
    def carrier_size(self) -> int:
        return self.table.shape[1]

    def __call__(self, g: int, x: int) -> int:
        return int(self.table[g, x])

    @classmethod
    def trivial(cls, group: FiniteGroup, carrier: Union[FiniteGroup, int], name: str = "trivial") -> "GroupAction":
        size = carrier.order if isinstance(carrier, FiniteGroup) else int(carrier)
        return cls(group, carrier, np.tile(np.arange(size), (group.order, 1)), name)

    @classmethod
    def left_translation(cls, group: FiniteGroup) -> "GroupAction":
        """G acting on its underlying set by g.x = gx."""
        return cls(group, group.order, group.table, "left_translation")

    @classmethod
    def conjugation(cls, group: FiniteGroup, on: Optional["Subgroup"] = None) -> "GroupAction":
        """G acting on itself, or on a normal subgroup, by g.x = g x g^-1."""
        t, inv = group.table, group.inverses
        full = t[t, inv[:, None]]  # full[g, x] = (g x) g^-1
        if on is None:
            return cls(group, group, full, "conjugation")
        members = np.asarray(on.members)
        images = full[:, members]
        if not np.isin(images, members).all():
            raise ContractError("conjugation does not preserve the subgroup")
        return cls(group, on.as_group, on.position[images], "conjugation")

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupAction):
            return NotImplemented
        return (self.group == other.group and self.table.shape == other.table.shape
                and bool((self.table == other.table).all()))

    __hash__ = None

    def __repr__(self) -> str:
        return f"GroupAction({self.name}: {self.group.name} on {getattr(self.carrier, 'name', self.carrier)})"


def check_group_action(act: GroupAction) -> CheckReport:
    """Check 1.x = x and g.(h.x) = (gh).x over all g, h, x."""
    t = act.table
    size = act.carrier_size
    hit = first_violation(t[0] == np.arange(size))
    if hit is not None:
        x = hit[0]
        unit = failed("unit", [x], f"identity moves {x} to {t[0, x]}")
    else:
        unit = passed("unit", f"identity fixes all {size} points")
    G = act.group.table
    hit = None
    if size:
        # lhs[g,h,x] = g.(h.x); rhs[g,h,x] = (gh).x
        lhs = t[np.arange(act.group.order)[:, None, None], t[None, :, :]]
        rhs = t[G[:, :, None], np.arange(size)[None, None, :]]
        hit = first_violation(lhs == rhs)
    if hit is not None:
        g, h, x = hit
        compat = failed("compatibility", hit, f"{g}.({h}.{x})={lhs[g, h, x]} but ({g}*{h}).{x}={rhs[g, h, x]}")
    else:
        compat = passed("compatibility", f"{act.group.order ** 2 * size} triples verified")
    return combine("group_action", [unit, compat], f"{act.name}: action axioms hold")


def check_action_by_automorphisms(act: GroupAction) -> CheckReport:
    """Check every row of an action on a group is an automorphism of the carrier."""
    C = act.carrier
    if not isinstance(C, FiniteGroup):
        raise ContractError(f"action {act.name} acts on a plain set, not a group")
    rows = act.table
    for g in range(act.group.order):
        if np.unique(rows[g]).size != C.order:
            counts = np.bincount(rows[g], minlength=C.order)
            missed = int(np.flatnonzero(counts == 0)[0])
            return failed("automorphism_action", [g], f"action of {g} is not a bijection: {missed} has no preimage")
    lhs = rows[:, C.table]  # g.(xy)
    rhs = C.table[rows[:, :, None], rows[:, None, :]]  # (g.x)(g.y)
    hit = first_violation(lhs == rhs)
    if hit is not None:
        g, x, y = hit
        return failed("automorphism_action", hit, f"{g}.({x}*{y})={lhs[g, x, y]} but ({g}.{x})*({g}.{y})={rhs[g, x, y]}")
    return passed("automorphism_action", f"all {act.group.order} rows are automorphisms")


def require_automorphism_action(act: GroupAction) -> None:
    for report in (check_group_action(act), check_action_by_automorphisms(act)):
        if not report.passed:
            raise ContractError(f"{act.name} is not an action by automorphisms: {report.detail}", report.witness, report)


class Subgroup:
    """A subgroup of ``parent`` with its induced group.

    ``members`` is sorted, so members[0] == 0 and induced index i stands for
    parent element members[i]; ``position`` maps parent indices back (-1 for
    non-members).
    """

    __slots__ = ("parent", "members", "as_group", "position")

    def __init__(self, parent: FiniteGroup, members: Iterable[int], name: Optional[str] = None):
        mem = np.array(sorted(set(int(x) for x in members)), dtype=np.intp)
        if mem.size == 0 or mem[0] != 0:
            raise MalformedInputError("a subgroup must contain the identity 0")
        if mem[-1] >= parent.order:
            raise MalformedInputError(f"member {mem[-1]} is outside {parent.name}")
        position = np.full(parent.order, -1, dtype=np.intp)
        position[mem] = np.arange(mem.size)
        sub = parent.table[np.ix_(mem, mem)]
        if (position[sub] < 0).any():
            i, j = first_violation(position[sub] >= 0)
            raise MalformedInputError(f"members not closed: {mem[i]}*{mem[j]}={sub[i, j]}")
        self.parent = parent
        self.members = tuple(int(x) for x in mem)
        self.position = _frozen(position)
        self.as_group = FiniteGroup(position[sub], name or f"sub({parent.name})")

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.parent.order and self.position[x] >= 0

    def index_of(self, x: int) -> int:
        """Induced index of parent element x."""
        i = int(self.position[x])
        if i < 0:
            raise KeyError(x)
        return i

    def inclusion(self, name: str = "incl") -> Hom:
        return Hom(self.as_group, self.parent, self.members, name)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent == other.parent and self.members == other.members

    def __hash__(self) -> int:
        return hash(self.members)

    def __repr__(self) -> str:
        return f"Subgroup(order {self.order} in {self.parent.name})"


def kernel(f: Hom, name: Optional[str] = None) -> Subgroup:
    require_hom(f)
    return Subgroup(f.source, np.flatnonzero(f.map == 0), name or f"ker({f.name})")


def image(f: Hom, name: Optional[str] = None) -> Subgroup:
    require_hom(f)
    return Subgroup(f.target, np.unique(f.map), name or f"im({f.name})")


def is_normal(N: Subgroup) -> CheckReport:
    """Check g n g^-1 stays in N for all g, n; witness (g, n) is the first escape."""
    G = N.parent
    members = np.asarray(N.members)
    conj = G.table[G.table[:, members], G.inverses[:, None]]
    hit = first_violation(N.position[conj] >= 0)
    if hit is not None:
        g, i = hit
        n = int(members[i])
        return failed("is_normal", [g, n], f"{g}*{n}*{g}^-1={conj[g, i]} lies outside the subgroup")
    return passed("is_normal", f"order-{N.order} subgroup is normal in {G.name}")


def generated_subgroup(G: FiniteGroup, gens: Sequence[int]) -> Subgroup:
    """Closure of ``gens`` under multiplication (finite, so inverses come free)."""
    members = {0}
    frontier = [0]
    gens = [int(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, members)


def subgroups(G: FiniteGroup, max_generators: int = 3) -> list[Subgroup]:
    """All subgroups generated by at most ``max_generators`` elements, by brute force.

    Every subgroup of a group in the test catalog needs at most 3 generators.
    Ordered by (order, members).
    """
    found = {}
    for k in range(max_generators + 1):
        for gens in itertools.combinations(range(1, G.order), k):
            H = generated_subgroup(G, gens)
            found.setdefault(H.members, H)
    return sorted(found.values(), key=lambda H: (H.order, H.members))


def normal_subgroups(G: FiniteGroup, max_generators: int = 3) -> list[Subgroup]:
    return [H for H in subgroups(G, max_generators) if is_normal(H).passed]
