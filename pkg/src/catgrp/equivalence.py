"""Crossed modules <-> internal categories in Grp, and round-trip verification."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core.groups import GroupAction, Hom, is_homomorphism, kernel
from .core.iso import isomorphisms
from .core.products import semidirect_product, split_epi_decompose
from .crossed_modules import CrossedModule, check_crossed_module
from .errors import ContractError
from .internal_categories import InternalCategory, InternalDigraph, check_internal_category
from .reports import CheckReport, combine, failed, first_violation, passed

# Bound on (beta, alpha) candidates tried by the fallback search.
FALLBACK_LIMIT = 10_000


@dataclass(frozen=True)
class XmodIso:
    alpha: Hom
    beta: Hom
    verified: bool


@dataclass(frozen=True)
class InternalCatIso:
    arrow_iso: Hom
    object_iso: Hom
    verified: bool


def _fallback_search(G1, G2, C1, C2, verify):
    """Try (beta, alpha) pairs of group isomorphisms until ``verify`` passes."""
    candidates = ((b, a) for b in isomorphisms(G1, G2) for a in isomorphisms(C1, C2))
    for b, a in itertools.islice(candidates, FALLBACK_LIMIT):
        r = verify(b, a)
        if r.passed:
            return b, a, r
    return None


def _require(report: CheckReport, what: str) -> None:
    if not report.passed:
        raise ContractError(f"precondition: {what}: {report.detail}", report.witness, report)


def xmod_to_internal(xm: CrossedModule, name: Optional[str] = None) -> InternalCategory:
    """Arrows C ⋊ G, objects G; s(c,g) = g, t(c,g) = ∂c·g, e(g) = (1,g), (c',∂c·g)∘(c,g) = (c'c, g)."""
    _require(check_crossed_module(xm), f"{xm.name} is not a crossed module")
    C, G = xm.C, xm.G
    nG = G.order
    prod = semidirect_product(C, G, xm.action, f"{C.name}:{G.name}")
    A = prod.group
    idx = np.arange(A.order)
    c, g = idx // nG, idx % nG
    s = Hom(A, G, g, "s")
    t = Hom(A, G, G.table[xm.boundary.map[c], g], "t")
    e = Hom(G, A, np.arange(nG), "e")
    dg = InternalDigraph(A, G, s, t, e)
    pairs = dg.pairs.pairs
    first, second = pairs[:, 0], pairs[:, 1]
    comp = C.table[second // nG, first // nG] * nG + first % nG
    return InternalCategory(dg, comp, name or f"int({xm.name})")


def internal_to_xmod(ic: InternalCategory, name: Optional[str] = None) -> CrossedModule:
    """C = Ker s, G = O, ∂ = t restricted to Ker s, x.k = e(x) k e(x)^-1."""
    _require(check_internal_category(ic), f"{ic.name} is not an internal category")
    dg = ic.digraph
    A, O = dg.A, dg.O
    K = kernel(dg.s, f"ker_s({ic.name})")
    members = np.asarray(K.members)
    boundary = Hom(K.as_group, O, dg.t.map[members], "boundary")
    ex = dg.e.map
    conj = A.table[A.table[ex[:, None], members[None, :]], A.inverses[ex][:, None]]
    action = GroupAction(O, K.as_group, K.position[conj], "conj_by_identities")
    return CrossedModule(K.as_group, O, boundary, action, name or f"xm({ic.name})")


def _bijective_hom_leg(name: str, f: Hom) -> CheckReport:
    hom = is_homomorphism(f)
    if not hom.passed:
        return failed(name, hom.witness, hom.detail)
    if not f.is_bijective():
        counts = np.bincount(f.map, minlength=f.target.order)
        return failed(name, [int(np.flatnonzero(counts != 1)[0])], f"{f.name} is not a bijection")
    return passed(name, f"{f.name} is a bijective homomorphism")


def verify_xmod_iso(xm: CrossedModule, xm2: CrossedModule, alpha: Hom, beta: Hom) -> CheckReport:
    """α: C -> C', β: G -> G' bijective homs with β∘∂ = ∂'∘α and α(g.c) = β(g).α(c)."""
    legs = [_bijective_hom_leg("alpha", alpha), _bijective_hom_leg("beta", beta)]
    lhs = beta.map[xm.boundary.map]
    rhs = xm2.boundary.map[alpha.map]
    hit = first_violation(lhs == rhs)
    legs.append(passed("boundary_square", "β∘∂ = ∂'∘α") if hit is None else
                failed("boundary_square", hit, f"β(∂({hit[0]}))={lhs[hit[0]]} but ∂'(α({hit[0]}))={rhs[hit[0]]}"))
    lhs = alpha.map[xm.action.table]                                   # α(g.c)
    rhs = xm2.action.table[beta.map[:, None], alpha.map[None, :]]      # β(g).α(c)
    hit = first_violation(lhs == rhs)
    legs.append(passed("action_square", "α(g.c) = β(g).α(c)") if hit is None else
                failed("action_square", hit, f"α({hit[0]}.{hit[1]})={lhs[hit]} but β({hit[0]}).α({hit[1]})={rhs[hit]}"))
    return combine("xmod_iso", legs, "crossed-module isomorphism verified")


def roundtrip_xmod(xm: CrossedModule) -> tuple[Optional[XmodIso], CheckReport]:
    """Build xm' = internal_to_xmod(xmod_to_internal(xm)) and verify α: c ↦ (c, 1), β = id."""
    _require(check_crossed_module(xm), f"{xm.name} is not a crossed module")
    ic = xmod_to_internal(xm)
    xm2 = internal_to_xmod(ic)
    K = kernel(ic.digraph.s)
    nG = xm.G.order
    alpha = Hom(xm.C, xm2.C, K.position[np.arange(xm.C.order) * nG], "alpha")
    beta = Hom(xm.G, xm2.G, np.arange(nG), "beta")
    report = verify_xmod_iso(xm, xm2, alpha, beta)
    if report.passed:
        return XmodIso(alpha, beta, True), CheckReport(
            "roundtrip_xmod", True, None, "canonical isomorphism (c ↦ (c,1), id) verified",
            (report,), data={"fallback": False})
    found = _fallback_search(xm.G, xm2.G, xm.C, xm2.C, lambda b, a: verify_xmod_iso(xm, xm2, a, b))
    if found is not None:
        b, a, r = found
        return XmodIso(a, b, True), CheckReport(
            "roundtrip_xmod", False, report.witness,
            "canonical isomorphism failed; generic search found one (fallback used)",
            (report, r), data={"fallback": True})
    return None, CheckReport("roundtrip_xmod", False, report.witness,
                             f"canonical isomorphism failed ({report.detail}) and fallback search found none",
                             (report,), data={"fallback": True})


def verify_internal_iso(ic: InternalCategory, ic2: InternalCategory, arrows: Hom, objects: Hom) -> CheckReport:
    """Bijective homs commuting with s, t, e and carrying composites to composites."""
    d1, d2 = ic.digraph, ic2.digraph
    legs = [_bijective_hom_leg("arrow_iso", arrows), _bijective_hom_leg("object_iso", objects)]
    for name, f1, f2 in (("source_square", d1.s, d2.s), ("target_square", d1.t, d2.t)):
        lhs, rhs = f2.map[arrows.map], objects.map[f1.map]
        hit = first_violation(lhs == rhs)
        legs.append(passed(name, "commutes") if hit is None else
                    failed(name, hit, f"arrow {hit[0]}: {lhs[hit[0]]} != {rhs[hit[0]]}"))
    lhs, rhs = arrows.map[d1.e.map], d2.e.map[objects.map]
    hit = first_violation(lhs == rhs)
    legs.append(passed("identity_square", "commutes") if hit is None else
                failed("identity_square", hit, f"object {hit[0]}: {lhs[hit[0]]} != {rhs[hit[0]]}"))
    P1, P2 = ic.pairs, ic2.pairs
    f, g = P1.pairs[:, 0], P1.pairs[:, 1]
    idx2 = P2.lookup[arrows.map[f], arrows.map[g]]
    ok = (idx2 >= 0) & (ic2.comp[idx2] == arrows.map[ic.comp])
    hit = first_violation(ok)
    legs.append(passed("composition", f"composites preserved on {len(f)} pairs") if hit is None else
                failed("composition", [f[hit[0]], g[hit[0]]], f"image of {g[hit[0]]}∘{f[hit[0]]} is not the composite of the images"))
    return combine("internal_iso", legs, "internal-category isomorphism verified")


def roundtrip_internal(ic: InternalCategory) -> tuple[Optional[InternalCatIso], CheckReport]:
    """Build ic' = xmod_to_internal(internal_to_xmod(ic)); arrows map by φ(a) = (a e(s a)^-1, s a)."""
    _require(check_internal_category(ic), f"{ic.name} is not an internal category")
    dg = ic.digraph
    ic2 = xmod_to_internal(internal_to_xmod(ic))
    phi = split_epi_decompose(dg.s, dg.e).phi
    arrows = Hom(dg.A, ic2.A, phi.map, "phi")
    objects = Hom(dg.O, ic2.O, np.arange(dg.O.order), "id_O")
    report = verify_internal_iso(ic, ic2, arrows, objects)
    if report.passed:
        return InternalCatIso(arrows, objects, True), CheckReport(
            "roundtrip_internal", True, None,
            f"canonical isomorphism phi verified on {dg.A.order} arrows and {ic.pairs.order} composable pairs",
            (report,), data={"fallback": False})
    found = _fallback_search(dg.O, ic2.O, dg.A, ic2.A, lambda b, a: verify_internal_iso(ic, ic2, a, b))
    if found is not None:
        b, a, r = found
        return InternalCatIso(a, b, True), CheckReport(
            "roundtrip_internal", False, report.witness,
            "canonical isomorphism failed; generic search found one (fallback used)",
            (report, r), data={"fallback": True})
    return None, CheckReport("roundtrip_internal", False, report.witness,
                             f"canonical isomorphism failed ({report.detail}) and fallback search found none",
                             (report,), data={"fallback": True})
