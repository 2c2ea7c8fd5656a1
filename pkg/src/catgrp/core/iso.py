"""Homomorphism enumeration and isomorphism search by generator backtracking."""

from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from .groups import FiniteGroup, Hom, generated_subgroup


def generators(G: FiniteGroup) -> list[int]:
    """Greedy generating set: repeatedly add the least element not yet generated."""
    gens: list[int] = []
    H = generated_subgroup(G, gens)
    for g in range(1, G.order):
        if g not in H:
            gens.append(g)
            H = generated_subgroup(G, gens)
            if H.order == G.order:
                break
    return gens


def _extend(G: FiniteGroup, H: FiniteGroup, gens, images) -> Optional[np.ndarray]:
    """Propagate generator images over the Cayley graph of <gens>.

    Returns the partial map (-1 outside the generated subgroup), or None if
    some edge x -> xg disagrees, i.e. no homomorphism has these images.
    """
    f = np.full(G.order, -1, dtype=np.intp)
    f[0] = 0
    Gt, Ht = G.table, H.table
    stack = [0]
    while stack:
        x = stack.pop()
        fx = f[x]
        for g, y in zip(gens, images):
            z = Gt[x, g]
            fz = Ht[fx, y]
            if f[z] < 0:
                f[z] = fz
                stack.append(z)
            elif f[z] != fz:
                return None
    return f


def _search(G: FiniteGroup, H: FiniteGroup, bijective: bool) -> Iterator[np.ndarray]:
    gens = generators(G)
    g_orders = G.element_orders()
    h_orders = H.element_orders()
    if bijective:
        candidates = [[int(y) for y in np.flatnonzero(h_orders == g_orders[g])] for g in gens]
    else:
        candidates = [[int(y) for y in np.flatnonzero(g_orders[g] % h_orders == 0)] for g in gens]

    def backtrack(k: int, images: list[int]):
        f = _extend(G, H, gens[:k], images)
        if f is None:
            return
        if bijective:
            known = f[f >= 0]
            if np.unique(known).size != known.size:
                return
        if k == len(gens):
            yield f
            return
        for y in candidates[k]:
            yield from backtrack(k + 1, images + [y])

    yield from backtrack(0, [])


def homomorphisms(G: FiniteGroup, H: FiniteGroup) -> Iterator[Hom]:
    """All homomorphisms G -> H, in lexicographic order of generator images."""
    for f in _search(G, H, bijective=False):
        yield Hom(G, H, f, f"hom_{G.name}_{H.name}")


def isomorphisms(G: FiniteGroup, H: FiniteGroup) -> Iterator[Hom]:
    if G.order != H.order or G.order_profile() != H.order_profile():
        return
    for f in _search(G, H, bijective=True):
        yield Hom(G, H, f, f"iso_{G.name}_{H.name}")


def isomorphism_search(G: FiniteGroup, H: FiniteGroup) -> Optional[Hom]:
    """The isomorphism G -> H with lexicographically least generator images, if any."""
    return next(isomorphisms(G, H), None)
