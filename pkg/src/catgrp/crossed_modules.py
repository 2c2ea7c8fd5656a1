"""Crossed modules of finite groups and the consequences of their axioms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core.groups import (
    FiniteGroup,
    GroupAction,
    Hom,
    Subgroup,
    check_action_by_automorphisms,
    check_group_action,
    image,
    is_homomorphism,
    is_normal,
    kernel,
)
from .errors import ContractError, MalformedInputError, NotNormalError
from .reports import CheckReport, combine, failed, first_violation, passed


@dataclass(frozen=True)
class CrossedModule:
    """A boundary map ∂: C -> G together with a left action of G on C."""

    C: FiniteGroup
    G: FiniteGroup
    boundary: Hom
    action: GroupAction
    name: str = "xm"

    def __post_init__(self):
        if self.boundary.source != self.C or self.boundary.target != self.G:
            raise MalformedInputError(f"{self.name}: boundary must map {self.C.name} -> {self.G.name}")
        if self.action.group != self.G or self.action.carrier != self.C:
            raise MalformedInputError(f"{self.name}: action must be of {self.G.name} on {self.C.name}")


def crossed_module_invariants(xm: CrossedModule) -> CheckReport:
    """The type-level requirements: ∂ a homomorphism, the action by automorphisms."""
    return combine("crossed_module_invariants", [
        is_homomorphism(xm.boundary),
        check_group_action(xm.action),
        check_action_by_automorphisms(xm.action),
    ])


def _axioms(xm: CrossedModule) -> list[CheckReport]:
    C, G = xm.C, xm.G
    d = xm.boundary.map
    act = xm.action.table
    # equivariance[g, c]: ∂(g.c) == g ∂c g^-1
    lhs = d[act]
    rhs = G.table[G.table[:, d], G.inverses[:, None]]
    hit = first_violation(lhs == rhs)
    if hit is None:
        equi = passed("equivariance", f"{G.order * C.order} pairs (g, c) verified")
    else:
        g, c = hit
        equi = failed("equivariance", hit, f"∂({g}.{c})={lhs[g, c]} but {g}*∂({c})*{g}^-1={rhs[g, c]}")
    # peiffer[c, e]: ∂c . e == c e c^-1
    lhs = act[d]
    rhs = C.table[C.table, C.inverses[:, None]]  # rhs[c, e] = (c e) c^-1
    hit = first_violation(lhs == rhs)
    if hit is None:
        peif = passed("peiffer", f"{C.order ** 2} pairs (c, d) verified")
    else:
        c, e = hit
        peif = failed("peiffer", hit, f"∂({c}).{e}={lhs[c, e]} but {c}*{e}*{c}^-1={rhs[c, e]}")
    return [equi, peif]


def check_crossed_module(xm: CrossedModule) -> CheckReport:
    """Equivariance and the Peiffer identity, each with its own witness.

    Raises ContractError when ∂ is not a homomorphism or the action is not
    by automorphisms.
    """
    inv = crossed_module_invariants(xm)
    if not inv.passed:
        raise ContractError(f"{xm.name}: invariant {inv.failed_leg} fails: {inv.detail}", inv.witness, inv)
    return combine("crossed_module", _axioms(xm), f"{xm.name} is a crossed module")


def check_crossed_module_total(xm: CrossedModule) -> CheckReport:
    """Invariants and axioms in one report, never raising; for sweeps and the CLI."""
    inv = crossed_module_invariants(xm)
    if not inv.passed:
        return combine("crossed_module", list(inv.parts))
    return combine("crossed_module", list(inv.parts) + _axioms(xm), f"{xm.name} is a crossed module")


def inclusion_crossed_module(N: Subgroup, name: str = "incl") -> CrossedModule:
    """N ↪ G with G acting on N by conjugation.

    Conjugation is forced: for an inclusion, equivariance says g.n = g n g^-1.
    """
    report = is_normal(N)
    if not report.passed:
        raise NotNormalError(f"subgroup is not normal in {N.parent.name}: {report.detail}", report.witness, report)
    G = N.parent
    C = N.as_group
    return CrossedModule(C, G, N.inclusion(f"{name}_boundary"), GroupAction.conjugation(G, on=N), name)


def identity_crossed_module(G: FiniteGroup) -> CrossedModule:
    return CrossedModule(G, G, Hom.identity(G), GroupAction.conjugation(G), f"id_{G.name}")


def trivial_boundary_crossed_module(C: FiniteGroup, G: FiniteGroup) -> CrossedModule:
    """(C, G, trivial ∂, trivial action); a crossed module exactly when C is abelian."""
    return CrossedModule(C, G, Hom.trivial(C, G), GroupAction.trivial(G, C), f"triv_{C.name}_{G.name}")


def _require_valid(xm: CrossedModule) -> None:
    report = check_crossed_module(xm)
    if not report.passed:
        raise ContractError(f"{xm.name} is not a crossed module: {report.detail}", report.witness, report)


def kernel_abelian_check(xm: CrossedModule) -> CheckReport:
    _require_valid(xm)
    K = kernel(xm.boundary).as_group
    hit = first_violation(K.table == K.table.T)
    if hit is None:
        return passed("kernel_abelian", f"Ker ∂ (order {K.order}) is abelian")
    members = kernel(xm.boundary).members
    a, b = members[hit[0]], members[hit[1]]
    return failed("kernel_abelian", [a, b],
                  f"internal inconsistency: kernel elements {a}, {b} do not commute although the axioms hold")


def image_normal_check(xm: CrossedModule) -> CheckReport:
    _require_valid(xm)
    report = is_normal(image(xm.boundary))
    if report.passed:
        return passed("image_normal", f"Im ∂ (order {len(np.unique(xm.boundary.map))}) is normal in {xm.G.name}")
    return failed("image_normal", report.witness, f"internal inconsistency: {report.detail}")
