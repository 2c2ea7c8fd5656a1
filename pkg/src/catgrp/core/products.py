"""Direct and semidirect products, and the decomposition of a split epimorphism.

Pairs are indexed left-factor major: (c, g) has index c * |G| + g.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import ContractError, MalformedInputError
from ..reports import CheckReport, combine, failed, passed
from .groups import (
    FiniteGroup,
    GroupAction,
    Hom,
    Subgroup,
    is_homomorphism,
    kernel,
    require_automorphism_action,
    require_hom,
)


@dataclass(frozen=True)
class ProductGroup:
    """A product group with its structure maps.

    ``left_projection`` is None for semidirect products, where it is not a
    homomorphism.
    """

    group: FiniteGroup
    left: FiniteGroup
    right: FiniteGroup
    left_injection: Hom
    right_injection: Hom
    right_projection: Hom
    left_projection: Optional[Hom] = None

    def index(self, c: int, g: int) -> int:
        return c * self.right.order + g

    def pair(self, index: int) -> tuple[int, int]:
        return divmod(int(index), self.right.order)


def _structure_maps(P: FiniteGroup, C: FiniteGroup, G: FiniteGroup):
    nG = G.order
    idx = np.arange(C.order * nG)
    inj_c = Hom(C, P, np.arange(C.order) * nG, "inj_left")
    inj_g = Hom(G, P, np.arange(nG), "inj_right")
    proj_g = Hom(P, G, idx % nG, "proj_right")
    return idx, inj_c, inj_g, proj_g


def direct_product(G: FiniteGroup, H: FiniteGroup, name: Optional[str] = None) -> ProductGroup:
    """G × H with componentwise multiplication."""
    nH = H.order
    idx = np.arange(G.order * nH)
    a, b = idx // nH, idx % nH
    table = G.table[a[:, None], a[None, :]] * nH + H.table[b[:, None], b[None, :]]
    P = FiniteGroup(table, name or f"{G.name}x{H.name}")
    _, inj_g, inj_h, proj_h = _structure_maps(P, G, H)
    proj_g = Hom(P, G, a, "proj_left")
    return ProductGroup(P, G, H, inj_g, inj_h, proj_h, proj_g)


def semidirect_product(C: FiniteGroup, G: FiniteGroup, act: GroupAction, name: Optional[str] = None) -> ProductGroup:
    """C ⋊ G with (c, g)(c', g') = (c · g.c', gg')."""
    if act.group != G or not isinstance(act.carrier, FiniteGroup) or act.carrier != C:
        raise ContractError(f"action {act.name} is not an action of {G.name} on {C.name}")
    require_automorphism_action(act)
    nG = G.order
    idx = np.arange(C.order * nG)
    c, g = idx // nG, idx % nG
    twisted = act.table[g[:, None], c[None, :]]  # g.c' for row (c,g), column (c',g')
    table = C.table[c[:, None], twisted] * nG + G.table[g[:, None], g[None, :]]
    P = FiniteGroup(table, name or f"{C.name}:{G.name}")
    _, inj_c, inj_g, proj_g = _structure_maps(P, C, G)
    return ProductGroup(P, C, G, inj_c, inj_g, proj_g)


@dataclass(frozen=True)
class SplitDecomposition:
    """Result of decomposing A as Ker s ⋊ O along a splitting e."""

    kernel: Subgroup
    action: GroupAction
    product: ProductGroup
    phi: Hom
    report: CheckReport


def split_epi_decompose(s: Hom, e: Hom) -> SplitDecomposition:
    """Decompose the source of a split epimorphism s (section e) as Ker s ⋊ O.

    O acts on Ker s by x.k = e(x) k e(x)^-1 and phi(a) = (a e(s(a))^-1, s(a)).
    """
    require_hom(s, "epimorphism")
    require_hom(e, "splitting")
    A, O = s.source, s.target
    if e.source != O or e.target != A:
        raise MalformedInputError(f"splitting {e.name} must map {O.name} -> {A.name}")
    se = s.map[e.map]
    bad = np.flatnonzero(se != np.arange(O.order))
    if bad.size:
        x = int(bad[0])
        raise ContractError(f"{s.name}({e.name}({x}))={se[x]} != {x}: not a splitting", [x])

    K = kernel(s, f"ker({s.name})")
    members = np.asarray(K.members)
    ex = e.map
    conj = A.table[A.table[ex[:, None], members[None, :]], A.inverses[ex][:, None]]
    act = GroupAction(O, K.as_group, K.position[conj], "conj_by_section")
    prod = semidirect_product(K.as_group, O, act, f"ker({s.name}):{O.name}")

    sa = s.map
    k_part = A.table[np.arange(A.order), A.inverses[ex[sa]]]
    phi = Hom(A, prod.group, K.position[k_part] * O.order + sa, "phi")

    legs = [is_homomorphism(phi)]
    if phi.is_bijective():
        legs.append(passed("bijective", f"phi is a bijection of {A.order} elements"))
    else:
        counts = np.bincount(phi.map, minlength=prod.group.order)
        legs.append(failed("bijective", [int(np.flatnonzero(counts != 1)[0])], "phi is not a bijection"))
    report = combine("split_epi_decompose", legs, f"{A.name} is isomorphic to Ker {s.name} ⋊ {O.name} via phi")
    return SplitDecomposition(K, act, prod, phi, report)
