"""Builtin groups.

Element numbering, per constructor:

* ``make_cyclic(n)``: k stands for k mod n, product is addition.
* ``make_symmetric(n)``: permutations of 0..n-1 in lexicographic order
  (identity first); the product p*q applies q first, (p*q)(i) = p(q(i)).
* ``make_alternating(n)``: the even permutations, in the same order.
* ``make_dihedral(n)``: order 2n; k < n stands for r^k and n + k for r^k s,
  with s r s = r^-1.
* ``make_quaternion8()``: 1, -1, i, -i, j, -j, k, -k.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..errors import MalformedInputError
from .groups import FiniteGroup, Hom, _check_cap, kernel
from .products import direct_product

MAX_SYMMETRIC_DEGREE = 8


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise MalformedInputError(msg)


def make_cyclic(n: int) -> FiniteGroup:
    _need(n >= 1, f"cyclic group needs n >= 1, got {n}")
    k = np.arange(n)
    return FiniteGroup.from_table((k[:, None] + k[None, :]) % n, f"Z{n}")


def permutations(n: int) -> list[tuple[int, ...]]:
    return list(itertools.permutations(range(n)))


def make_symmetric(n: int) -> FiniteGroup:
    _need(1 <= n <= MAX_SYMMETRIC_DEGREE, f"symmetric group needs 1 <= n <= {MAX_SYMMETRIC_DEGREE}, got {n}")
    return _perm_group(n, even_only=False)


def make_alternating(n: int) -> FiniteGroup:
    _need(1 <= n <= MAX_SYMMETRIC_DEGREE, f"alternating group needs 1 <= n <= {MAX_SYMMETRIC_DEGREE}, got {n}")
    return _perm_group(n, even_only=True)


def _parity(p) -> int:
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return inversions % 2


def _perm_group(n: int, even_only: bool) -> FiniteGroup:
    perms = [p for p in permutations(n) if not even_only or _parity(p) == 0]
    _check_cap(len(perms))
    arr = np.array(perms, dtype=np.intp).reshape(len(perms), n)
    lookup = {p: i for i, p in enumerate(perms)}
    # composed[a, b, i] = perms[a][perms[b][i]]
    composed = arr[np.arange(len(perms))[:, None, None], arr[None, :, :]]
    table = [[lookup[tuple(row)] for row in composed[a]] for a in range(len(perms))]
    return FiniteGroup.from_table(table, f"A{n}" if even_only else f"S{n}")


def sign(n: int) -> Hom:
    """The sign homomorphism S_n -> Z2 (0 for even permutations)."""
    Sn = make_symmetric(n)
    return Hom(Sn, make_cyclic(2), [_parity(p) for p in permutations(n)], "sign")


def make_dihedral(n: int) -> FiniteGroup:
    _need(n >= 1, f"dihedral group needs n >= 1, got {n}")
    idx = np.arange(2 * n)
    rot, refl = idx % n, idx // n
    a, i = rot[:, None], refl[:, None]
    b, j = rot[None, :], refl[None, :]
    new_rot = (a + np.where(i == 1, -b, b)) % n
    return FiniteGroup.from_table(new_rot + n * ((i + j) % 2), f"D{n}")


# unit products among 1, i, j, k as (sign, unit)
_QUAT_UNITS = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def make_quaternion8() -> FiniteGroup:
    def split(x):  # index -> (sign, unit)
        return (-1 if x % 2 else 1), x // 2

    table = []
    for x in range(8):
        sx, ux = split(x)
        row = []
        for y in range(8):
            sy, uy = split(y)
            s, u = _QUAT_UNITS[(ux, uy)]
            row.append(2 * u + (1 if s * sx * sy < 0 else 0))
        table.append(row)
    return FiniteGroup.from_table(table, "Q8")


BUILTINS = {
    "cyclic": make_cyclic,
    "dihedral": make_dihedral,
    "symmetric": make_symmetric,
    "alternating": make_alternating,
    "quaternion8": make_quaternion8,
}


def builtin(kind: str, k=None) -> FiniteGroup:
    """Look up a builtin family by name, e.g. ``builtin("cyclic", 4)``."""
    if kind not in BUILTINS:
        raise MalformedInputError(f"unknown builtin {kind!r}; expected one of {', '.join(BUILTINS)}")
    if kind == "quaternion8":
        _need(k is None, "quaternion8 takes no parameter")
        return make_quaternion8()
    _need(k is not None, f"builtin {kind} needs a parameter")
    return BUILTINS[kind](int(k))


def catalog() -> dict[str, FiniteGroup]:
    """The test catalog: Z1..Z8, Z2xZ2, Z2xZ4, Z2xZ2xZ2, S3, D4, Q8, D5, A4."""
    return dict(_catalog())


@lru_cache(maxsize=None)
def _catalog() -> dict[str, FiniteGroup]:
    groups = {f"Z{n}": make_cyclic(n) for n in range(1, 9)}
    z2, z4 = groups["Z2"], groups["Z4"]
    groups["Z2xZ2"] = direct_product(z2, z2, "Z2xZ2").group
    groups["Z2xZ4"] = direct_product(z2, z4, "Z2xZ4").group
    groups["Z2xZ2xZ2"] = direct_product(groups["Z2xZ2"], z2, "Z2xZ2xZ2").group
    groups["S3"] = make_symmetric(3)
    groups["D4"] = make_dihedral(4)
    groups["Q8"] = make_quaternion8()
    groups["D5"] = make_dihedral(5)
    groups["A4"] = make_alternating(4)
    return groups


def alternating_in_symmetric(n: int):
    """A_n as the kernel subgroup of sign inside S_n."""
    return kernel(sign(n), f"A{n}")
