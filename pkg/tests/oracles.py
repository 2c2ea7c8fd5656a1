"""Brute-force reference implementations, written without numpy or catgrp.

Everything here works on plain nested lists so the tests never check the
library against itself.
"""

import itertools


def as_lists(table):
    return [[int(x) for x in row] for row in table]


def cyclic(n):
    return [[(a + b) % n for b in range(n)] for a in range(n)]


def perm_group(gens):
    """Table of the permutation group generated by ``gens``; identity first, then BFS order."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        for g in gens:
            p = tuple(elems[i][g[k]] for k in range(n))
            if p not in seen:
                seen.add(p)
                elems.append(p)
        i += 1
    pos = {p: k for k, p in enumerate(elems)}
    return [[pos[tuple(p[q[k]] for k in range(n))] for q in elems] for p in elems], elems


def direct(t1, t2):
    n1, n2 = len(t1), len(t2)
    return [[t1[a // n2][b // n2] * n2 + t2[a % n2][b % n2] for b in range(n1 * n2)] for a in range(n1 * n2)]


def quaternions():
    """Q8 from unit quaternions as 4-tuples, identity first."""
    def mul(p, q):
        a1, b1, c1, d1 = p
        a2, b2, c2, d2 = q
        return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)
    units = []
    for k in range(4):
        for s in (1, -1):
            v = [0, 0, 0, 0]
            v[k] = s
            units.append(tuple(v))
    pos = {u: i for i, u in enumerate(units)}
    return [[pos[mul(p, q)] for q in units] for p in units]


def reference_groups():
    """Independently built copies of the catalog groups, keyed like the catalog."""
    s3, _ = perm_group([(1, 0, 2), (1, 2, 0)])
    d4, _ = perm_group([(1, 2, 3, 0), (0, 3, 2, 1)])
    d5, _ = perm_group([(1, 2, 3, 4, 0), (0, 4, 3, 2, 1)])
    a4, _ = perm_group([(1, 2, 0, 3), (0, 2, 3, 1)])
    out = {f"Z{n}": cyclic(n) for n in range(1, 9)}
    out.update({
        "Z2xZ2": direct(cyclic(2), cyclic(2)),
        "Z2xZ4": direct(cyclic(2), cyclic(4)),
        "Z2xZ2xZ2": direct(direct(cyclic(2), cyclic(2)), cyclic(2)),
        "S3": s3, "D4": d4, "Q8": quaternions(), "D5": d5, "A4": a4,
    })
    return out


def is_group(t):
    n = len(t)
    if any(t[0][x] != x or t[x][0] != x for x in range(n)):
        return False
    if any(not any(t[a][b] == 0 and t[b][a] == 0 for b in range(n)) for a in range(n)):
        return False
    return first_nonassociative(t) is None


def first_nonassociative(t):
    n = len(t)
    for a, b, c in itertools.product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return (a, b, c)
    return None


def inverse(t, a):
    return next(b for b in range(len(t)) if t[a][b] == 0)


def is_abelian(t):
    n = len(t)
    return all(t[a][b] == t[b][a] for a in range(n) for b in range(n))


def element_order(t, a):
    k, x = 1, a
    while x != 0:
        x = t[x][a]
        k += 1
    return k


def order_profile(t):
    return sorted(element_order(t, a) for a in range(len(t)))


def first_non_hom(t1, t2, m):
    for g, h in itertools.product(range(len(t1)), repeat=2):
        if m[t1[g][h]] != t2[m[g]][m[h]]:
            return (g, h)
    return None


def closure(t, elems):
    s = set(elems) | {0}
    changed = True
    while changed:
        changed = False
        for a in list(s):
            for b in list(s):
                if t[a][b] not in s:
                    s.add(t[a][b])
                    changed = True
    return frozenset(s)


def subgroup_lattice(t):
    """Every subgroup: start from cyclic subgroups and join pairs until nothing new appears."""
    subs = {closure(t, [a]) for a in range(len(t))}
    while True:
        new = {closure(t, h | k) for h in subs for k in subs} - subs
        if not new:
            return subs
        subs |= new


def is_normal(t, members):
    n = len(t)
    return all(t[t[g][x]][inverse(t, g)] in members for g in range(n) for x in members)


def normal_subgroups(t):
    return {H for H in subgroup_lattice(t) if is_normal(t, H)}


def isomorphic(t1, t2):
    """Brute force over all bijections fixing 0; only for small orders."""
    n = len(t1)
    if n != len(t2):
        return False
    for rest in itertools.permutations(range(1, n)):
        m = (0,) + rest
        if first_non_hom(t1, t2, m) is None:
            return True
    return False


def semidirect(tc, tg, act):
    """(c,g)(c',g') = (c . g.c', gg') with index c*|G| + g."""
    nc, ng = len(tc), len(tg)
    def mul(x, y):
        c, g = divmod(x, ng)
        c2, g2 = divmod(y, ng)
        return tc[c][act[g][c2]] * ng + tg[g][g2]
    return [[mul(x, y) for y in range(nc * ng)] for x in range(nc * ng)]


def conjugation_on(t, members):
    """Conjugation action of the whole group on a normal subgroup, in induced indices."""
    members = sorted(members)
    pos = {m: i for i, m in enumerate(members)}
    return [[pos[t[t[g][m]][inverse(t, g)]] for m in members] for g in range(len(t))]


def crossed_module_ok(tc, tg, d, act):
    nc, ng = len(tc), len(tg)
    for g, c in itertools.product(range(ng), range(nc)):
        if d[act[g][c]] != tg[tg[g][d[c]]][inverse(tg, g)]:
            return False
    for c, e in itertools.product(range(nc), repeat=2):
        if act[d[c]][e] != tc[tc[c][e]][inverse(tc, c)]:
            return False
    return True


def composable(A_order, s, t):
    return [(f, g) for f in range(A_order) for g in range(A_order) if t[f] == s[g]]


def internal_category_legs(A, s, t, e, comp):
    """Which of the four legs hold, by direct loops; ``comp`` maps (f, g) to g∘f."""
    n = len(A)
    pairs = [(f, g) for f in range(n) for g in range(n) if t[f] == s[g]]
    legs = {}
    legs["source_target"] = all(s[comp[f, g]] == s[f] and t[comp[f, g]] == t[g] for f, g in pairs)
    ok = legs["source_target"]
    if ok:
        ok = all(comp[comp[f, g], h] == comp[f, comp[g, h]]
                 for f, g in pairs for h in range(n) if t[g] == s[h])
    legs["associativity"] = ok
    legs["identity"] = all(comp.get((f, e[t[f]])) == f and comp.get((e[s[f]], f)) == f for f in range(n))
    legs["interchange"] = all(
        comp.get((A[f][f2], A[g][g2])) == A[comp[f, g]][comp[f2, g2]]
        for f, g in pairs for f2, g2 in pairs)
    return legs


def xmod_internal_category(tc, tg, d, act):
    """The internal category of a crossed module straight from the formulas."""
    nc, ng = len(tc), len(tg)
    A = semidirect(tc, tg, act)
    s = [x % ng for x in range(nc * ng)]
    t = [tg[d[x // ng]][x % ng] for x in range(nc * ng)]
    e = list(range(ng))
    comp = {}
    for f in range(nc * ng):
        c, g = divmod(f, ng)
        for c2 in range(nc):
            # (c', ∂c g) ∘ (c, g) = (c' c, g)
            second = c2 * ng + t[f]
            comp[f, second] = tc[c2][c] * ng + g
    return A, s, t, e, comp
