"""Internal reflexive digraphs and internal categories in finite groups.

Composition follows the diagrammatic convention: ``comp(f, g)`` is "f then
g", written g∘f, and is defined exactly on pairs with t(f) = s(g). It is
stored densely, one entry per composable pair in f-major order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np

from .core.groups import FiniteGroup, Hom, is_homomorphism
from .errors import CatGrpError, ContractError, MalformedCompositionError, MalformedInputError
from .reports import CheckReport, combine, failed, first_violation, first_violation_chunked, passed


@dataclass(frozen=True)
class InternalDigraph:
    """Arrow group A, object group O, source/target s, t: A -> O and identities e: O -> A."""

    A: FiniteGroup
    O: FiniteGroup
    s: Hom
    t: Hom
    e: Hom

    def __post_init__(self):
        for name, f, src, dst in (("s", self.s, self.A, self.O), ("t", self.t, self.A, self.O), ("e", self.e, self.O, self.A)):
            if f.source != src or f.target != dst:
                raise MalformedInputError(f"{name} must map {src.name} -> {dst.name}")

    @cached_property
    def pairs(self) -> "ComposablePairs":
        return ComposablePairs.enumerate(self)


def _renamed(report: CheckReport, name: str) -> CheckReport:
    return CheckReport(name, report.passed, report.witness, report.detail, report.parts, report.data)


def check_internal_digraph(dg: InternalDigraph) -> CheckReport:
    """s, t, e homomorphisms and s∘e = id_O = t∘e pointwise."""
    legs = [
        _renamed(is_homomorphism(dg.s), "s_homomorphism"),
        _renamed(is_homomorphism(dg.t), "t_homomorphism"),
        _renamed(is_homomorphism(dg.e), "e_homomorphism"),
    ]
    objects = np.arange(dg.O.order)
    for name, f in (("se_identity", dg.s), ("te_identity", dg.t)):
        back = f.map[dg.e.map]
        hit = first_violation(back == objects)
        if hit is None:
            legs.append(passed(name, f"{name[0]}(e(x)) = x for all {dg.O.order} objects"))
        else:
            x = hit[0]
            legs.append(failed(name, [x], f"{name[0]}(e({x}))={back[x]} != {x}"))
    return combine("internal_digraph", legs, "reflexive digraph in Grp")


def _require_digraph(dg: InternalDigraph) -> None:
    report = check_internal_digraph(dg)
    if not report.passed:
        raise ContractError(f"not an internal digraph: {report.detail}", report.witness, report)


@dataclass(frozen=True, eq=False)
class ComposablePairs:
    """The pullback A ×_O A = {(f, g) : t(f) = s(g)}, enumerated f-major."""

    digraph: InternalDigraph
    pairs: np.ndarray
    lookup: np.ndarray = field(repr=False)

    @classmethod
    def enumerate(cls, dg: InternalDigraph) -> "ComposablePairs":
        ok = dg.t.map[:, None] == dg.s.map[None, :]
        pairs = np.argwhere(ok).astype(np.intp)  # row-major, so f-major then g
        lookup = np.full(ok.shape, -1, dtype=np.intp)
        lookup[pairs[:, 0], pairs[:, 1]] = np.arange(len(pairs))
        pairs.setflags(write=False)
        lookup.setflags(write=False)
        return cls(dg, pairs, lookup)

    @property
    def order(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def index(self, f: int, g: int) -> int:
        i = int(self.lookup[f, g])
        if i < 0:
            raise MalformedCompositionError(f"arrows {f} and {g} are not composable")
        return i

    def closure_report(self) -> CheckReport:
        """Closure under componentwise products, and the identity pairs (e x, e x)."""
        A = self.digraph.A
        f, g = self.pairs[:, 0], self.pairs[:, 1]

        def evaluate(i):
            return self.lookup[A.table[f[i], f], A.table[g[i], g]] >= 0

        hit = first_violation_chunked(evaluate, len(self.pairs))
        if hit is not None:
            i, j = hit
            return failed("pullback_closure", [f[i], g[i], f[j], g[j]],
                          f"product of pairs ({f[i]},{g[i]}) and ({f[j]},{g[j]}) is not composable")
        ex = self.digraph.e.map
        hit = first_violation(self.lookup[ex, ex] >= 0)
        if hit is not None:
            return failed("pullback_closure", [hit[0]], f"identity pair at object {hit[0]} is missing")
        return passed("pullback_closure", f"pullback subgroup of order {len(self.pairs)}")


def composable_pairs(dg: InternalDigraph) -> ComposablePairs:
    """The pullback of composable pairs, verified to be a subgroup of A×A."""
    _require_digraph(dg)
    pairs = dg.pairs
    report = pairs.closure_report()
    if not report.passed:
        raise CatGrpError(f"internal inconsistency: {report.detail}")
    return pairs


@dataclass(frozen=True, eq=False)
class InternalCategory:
    """⟨A, O, s, t, e, comp⟩ with comp[i] the composite of the i-th composable pair."""

    digraph: InternalDigraph
    comp: np.ndarray
    name: str = "ic"

    def __post_init__(self):
        arr = np.asarray(self.comp)
        k = self.digraph.pairs.order
        if arr.ndim != 1 or arr.shape[0] != k:
            raise MalformedCompositionError(f"composition has {arr.size} entries, pullback has {k} composable pairs")
        if k and (arr.dtype.kind not in "iu" or arr.min() < 0 or arr.max() >= self.digraph.A.order):
            raise MalformedCompositionError(f"composites must be arrow indices in [0, {self.digraph.A.order})")
        arr = arr.astype(np.intp)
        arr.setflags(write=False)
        object.__setattr__(self, "comp", arr)

    @classmethod
    def from_function(cls, dg: InternalDigraph, compose: Callable[[int, int], int], name: str = "ic") -> "InternalCategory":
        """Tabulate ``compose(f, g)`` (g∘f) over the composable pairs."""
        return cls(dg, np.array([compose(int(f), int(g)) for f, g in dg.pairs.pairs], dtype=np.intp), name)

    @property
    def A(self) -> FiniteGroup:
        return self.digraph.A

    @property
    def O(self) -> FiniteGroup:
        return self.digraph.O

    @property
    def pairs(self) -> ComposablePairs:
        return self.digraph.pairs

    def compose(self, f: int, g: int) -> int:
        """g∘f."""
        return int(self.comp[self.pairs.index(f, g)])

    def with_comp(self, comp) -> "InternalCategory":
        return InternalCategory(self.digraph, comp, self.name)


def _leg_source_target(ic: InternalCategory) -> CheckReport:
    dg = ic.digraph
    f, g = ic.pairs.pairs[:, 0], ic.pairs.pairs[:, 1]
    ok = (dg.s.map[ic.comp] == dg.s.map[f]) & (dg.t.map[ic.comp] == dg.t.map[g])
    hit = first_violation(ok)
    if hit is None:
        return passed("source_target", f"s(g∘f)=s(f), t(g∘f)=t(g) on {len(f)} pairs")
    i = hit[0]
    c = ic.comp[i]
    return failed("source_target", [f[i], g[i]],
                  f"{g[i]}∘{f[i]}={c} has source {dg.s.map[c]} and target {dg.t.map[c]}, "
                  f"expected {dg.s.map[f[i]]} and {dg.t.map[g[i]]}")


def _arrows_by_source(dg: InternalDigraph) -> np.ndarray:
    """Row o lists the arrows with source o, ascending; fibers of s are cosets, all one size."""
    order = np.argsort(dg.s.map, kind="stable")
    return order.reshape(dg.O.order, -1)


def _leg_associativity(ic: InternalCategory) -> CheckReport:
    dg = ic.digraph
    P = ic.pairs
    f, g = P.pairs[:, 0], P.pairs[:, 1]
    H = _arrows_by_source(dg)[dg.t.map[g]]  # (pairs, fiber): every h after g
    gf = ic.comp[:, None]
    hg_idx = P.lookup[g[:, None], H]
    hg = ic.comp[hg_idx]
    left_idx = P.lookup[np.broadcast_to(gf, H.shape), H]          # h∘(g∘f)
    right_idx = P.lookup[np.broadcast_to(f[:, None], H.shape), hg]  # (h∘g)∘f
    defined = (left_idx >= 0) & (right_idx >= 0)
    ok = defined & (ic.comp[left_idx] == ic.comp[right_idx])
    hit = first_violation(ok)
    if hit is None:
        return passed("associativity", f"{ok.size} composable triples verified")
    i, j = hit
    a, b, c = f[i], g[i], H[i, j]
    if not defined[i, j]:
        return failed("associativity", [a, b, c], f"triple ({a},{b},{c}): a composite is undefined")
    return failed("associativity", [a, b, c],
                  f"{c}∘({b}∘{a})={ic.comp[left_idx[i, j]]} but ({c}∘{b})∘{a}={ic.comp[right_idx[i, j]]}")


def _leg_identity(ic: InternalCategory) -> CheckReport:
    dg = ic.digraph
    P = ic.pairs
    arrows = np.arange(dg.A.order)
    after = P.lookup[arrows, dg.e.map[dg.t.map]]   # (f, e(t f))
    before = P.lookup[dg.e.map[dg.s.map], arrows]  # (e(s f), f)
    ok = (after >= 0) & (before >= 0)
    ok &= np.where(after >= 0, ic.comp[after] == arrows, False)
    ok &= np.where(before >= 0, ic.comp[before] == arrows, False)
    hit = first_violation(ok)
    if hit is None:
        return passed("identity", f"e(t f)∘f = f = f∘e(s f) for all {dg.A.order} arrows")
    x = hit[0]
    return failed("identity", [x], f"e(t {x})∘{x}={ic.comp[after[x]]}, {x}∘e(s {x})={ic.comp[before[x]]}; expected {x}")


def _leg_interchange(ic: InternalCategory) -> CheckReport:
    A = ic.A
    P = ic.pairs
    f, g = P.pairs[:, 0], P.pairs[:, 1]
    comp = ic.comp

    def evaluate(i):
        prod = P.lookup[A.table[f[i], f], A.table[g[i], g]]
        return (prod >= 0) & (comp[prod] == A.table[comp[i], comp])

    hit = first_violation_chunked(evaluate, len(f))
    if hit is None:
        return passed("interchange", f"composition is a homomorphism on {len(f) ** 2} pairs of pairs")
    i, j = hit
    lhs = comp[P.lookup[A.table[f[i], f[j]], A.table[g[i], g[j]]]]
    return failed("interchange", [f[i], g[i], f[j], g[j]],
                  f"({g[i]}.{g[j]})∘({f[i]}.{f[j]})={lhs} but ({g[i]}∘{f[i]}).({g[j]}∘{f[j]})={A.table[comp[i], comp[j]]}")


def check_internal_category(ic: InternalCategory) -> CheckReport:
    """Legs: source_target, associativity, identity, interchange (comp a homomorphism)."""
    _require_digraph(ic.digraph)
    legs = [_leg_source_target(ic), _leg_associativity(ic), _leg_identity(ic), _leg_interchange(ic)]
    return combine("internal_category", legs, f"internal category with {ic.A.order} arrows on {ic.O.order} objects")


def _require_category(ic: InternalCategory) -> None:
    report = check_internal_category(ic)
    if not report.passed:
        raise ContractError(f"not an internal category: {report.detail}", report.witness, report)


def arrow_inverses(ic: InternalCategory) -> list[Optional[int]]:
    """For each arrow f, the least f† with f†∘f = e(s f) and f∘f† = e(t f), or None."""
    dg = ic.digraph
    P = ic.pairs
    s, t, e = dg.s.map, dg.t.map, dg.e.map
    out: list[Optional[int]] = []
    for f in range(dg.A.order):
        cands = np.flatnonzero((s == t[f]) & (t == s[f]))
        there = P.lookup[f, cands]
        back = P.lookup[cands, f]
        good = (there >= 0) & (back >= 0)
        good &= np.where(there >= 0, ic.comp[there] == e[s[f]], False)
        good &= np.where(back >= 0, ic.comp[back] == e[t[f]], False)
        hits = cands[good]
        out.append(int(hits[0]) if hits.size else None)
    return out


def is_internal_groupoid(ic: InternalCategory) -> CheckReport:
    """Every arrow has a two-sided compositional inverse; the inverse table is in ``data``."""
    _require_category(ic)
    inverses = arrow_inverses(ic)
    for f, fi in enumerate(inverses):
        if fi is None:
            return failed("internal_groupoid", [f], f"arrow {f} has no compositional inverse", data=inverses)
    return passed("internal_groupoid", f"all {len(inverses)} arrows are invertible", data=inverses)


def check_cat_group_structure(ic: InternalCategory) -> CheckReport:
    """Instance check that μ (multiplication), ι (inversion) and ε are functors.

    Only the digraph is a precondition, so the report can be compared with the
    interchange leg of check_internal_category even on broken compositions.
    """
    _require_digraph(ic.digraph)
    dg = ic.digraph
    A, O = dg.A, dg.O
    P = ic.pairs
    s, t, e = dg.s.map, dg.t.map, dg.e.map
    comp = ic.comp
    legs = []

    for name, f in (("mu_source", s), ("mu_target", t)):
        lhs, rhs = f[A.table], O.table[f[:, None], f[None, :]]
        hit = first_violation(lhs == rhs)
        legs.append(passed(name, "μ commutes with " + name[3:]) if hit is None else
                    failed(name, hit, f"{name[3:]}({hit[0]}.{hit[1]}) != {name[3:]}({hit[0]}).{name[3:]}({hit[1]})"))
    hit = first_violation(e[O.table] == A.table[e[:, None], e[None, :]])
    legs.append(passed("mu_identity", "μ preserves identity arrows") if hit is None else
                failed("mu_identity", hit, f"e({hit[0]}.{hit[1]}) != e({hit[0]}).e({hit[1]})"))

    # μ(g∘f, g'∘f') = μ(g, g')∘μ(f, f'), with μ(f, f') and μ(g, g') composable
    f, g = P.pairs[:, 0], P.pairs[:, 1]

    def functorial(i):
        mu_f = A.table[f[i], f]
        mu_g = A.table[g[i], g]
        composite_of_mu = P.lookup[mu_f, mu_g]
        mu_of_composite = A.table[comp[i], comp]
        return (composite_of_mu >= 0) & (comp[composite_of_mu] == mu_of_composite)

    hit = first_violation_chunked(functorial, len(f))
    if hit is None:
        legs.append(passed("mu_composition", "μ preserves composition"))
    else:
        i, j = hit
        legs.append(failed("mu_composition", [f[i], g[i], f[j], g[j]],
                           f"μ({g[i]}∘{f[i]}, {g[j]}∘{f[j]}) != μ({g[i]},{g[j]})∘μ({f[i]},{f[j]})"))

    inv_a, inv_o = A.inverses, O.inverses
    ok = (s[inv_a] == inv_o[s]) & (t[inv_a] == inv_o[t])
    hit = first_violation(ok)
    if hit is None:
        ok_e = e[inv_o] == inv_a[e]
        hit_e = first_violation(ok_e)
        if hit_e is None:
            inv_pair = P.lookup[inv_a[f], inv_a[g]]
            ok_c = (inv_pair >= 0) & (comp[inv_pair] == inv_a[comp])
            hit_c = first_violation(ok_c)
            legs.append(passed("iota_functor", "inversion is a functor") if hit_c is None else
                        failed("iota_functor", [f[hit_c[0]], g[hit_c[0]]],
                               f"{g[hit_c[0]]}^-1∘{f[hit_c[0]]}^-1 != ({g[hit_c[0]]}∘{f[hit_c[0]]})^-1"))
        else:
            legs.append(failed("iota_functor", hit_e, f"e({hit_e[0]}^-1) != e({hit_e[0]})^-1"))
    else:
        legs.append(failed("iota_functor", hit, f"arrow {hit[0]}: inversion does not commute with s, t"))

    unit_pair = P.lookup[e[0], e[0]]
    if e[0] == 0 and unit_pair >= 0 and comp[unit_pair] == 0:
        legs.append(passed("epsilon_functor", "ε picks the identity object 0 and arrow 0"))
    else:
        legs.append(failed("epsilon_functor", [0], "the unit arrow e(0) is not an idempotent identity arrow 0"))
    return combine("cat_group_structure", legs, "μ, ι, ε are functors: a group object in Cat")
