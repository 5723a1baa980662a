"""Level-structure arithmetic over Z/l by explicit enumeration.

Orders are counted by brute force inside the supported ranges; the closed
formula for |SL2(Z/l)| is exposed separately and is only ever used when
asked for by name.
"""

from __future__ import annotations

import itertools
import os
from collections import deque
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .errors import BadModulus, BoundTooLarge, ModulusTooLarge

MAX_ENUM_MODULUS = 16
MAX_CLOSURE_MODULUS = 12
MAX_BOUND = 100
SP_ENUMERABLE = {(2, 2), (2, 3)}


def prime_factors(n: int) -> list:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _check_modulus(l: int) -> None:
    if l < 2:
        raise BadModulus(f"modulus must be >= 2, got {l}")


def sl2_order_formula(l: int) -> int:
    """``l^3 prod_{p | l} (1 - p^-2)``."""
    _check_modulus(l)
    n = l ** 3
    for p in prime_factors(l):
        n = n // (p * p) * (p * p - 1)
    return n


def sl2_enumerate_order(l: int) -> int:
    _check_modulus(l)
    if l > MAX_ENUM_MODULUS:
        raise ModulusTooLarge(f"enumeration supports l <= {MAX_ENUM_MODULUS}")
    r = np.arange(l, dtype=np.int64)
    a, b, c, d = np.meshgrid(r, r, r, r, indexing="ij", sparse=True)
    return int(np.count_nonzero((a * d - b * c) % l == 1 % l))


def sl2_mod_order(l: int, method: str = "enumerate") -> int:
    if method == "enumerate":
        return sl2_enumerate_order(l)
    if method == "formula":
        return sl2_order_formula(l)
    raise ValueError(f"unknown method {method!r}")


def _form(g: int) -> np.ndarray:
    z = np.zeros((g, g), dtype=np.int64)
    i = np.eye(g, dtype=np.int64)
    return np.block([[z, i], [-i, z]])


def symplectic_columns(g: int, l: int):
    """Yield every matrix in Sp_g(Z/l) as a tuple of column vectors.

    Columns are chosen one at a time; column ``k`` must pair with each
    earlier column ``i`` to ``J[i, k]`` mod l, which prunes the search to
    exactly the symplectic bases.
    """
    j = _form(g)
    vecs = np.array(list(itertools.product(range(l), repeat=2 * g)), dtype=np.int64)
    jv = vecs @ j.T  # row v -> J v, so <u, v> = u . (J v)

    def extend(cols, idx):
        k = len(cols)
        if k == 2 * g:
            yield tuple(tuple(int(x) for x in vecs[i]) for i in idx)
            return
        mask = np.ones(len(vecs), dtype=bool)
        for i, ci in enumerate(idx):
            mask &= (vecs[ci] @ jv.T) % l == j[i, k] % l
        for ci in np.flatnonzero(mask):
            yield from extend(cols + [vecs[ci]], idx + [ci])

    yield from extend([], [])


def sp_mod_order(g: int, l: int) -> int:
    _check_modulus(l)
    if not ((g == 1 and l <= MAX_ENUM_MODULUS) or (g, l) in SP_ENUMERABLE):
        raise ModulusTooLarge(f"Sp_{g}(Z/{l}) is outside the enumerable range")
    return sum(1 for _ in symplectic_columns(g, l))


def level_cover_degree(l: int) -> int:
    """Degree of M_1[l] -> M_1: half of |SL2(Z/l)| (-I acts trivially)."""
    if l <= 2:
        raise BadModulus("the half-order degree needs l > 2")
    return sl2_mod_order(l) // 2


def _mul_mod(x, y, l):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % l, (a * f + b * h) % l, (c * e + d * g) % l, (c * f + d * h) % l)


def generated_subgroup(generators, l: int) -> set:
    """Closure of the given 2x2 matrices (entry 4-tuples) under products mod l."""
    gens = [tuple(x % l for x in m) for m in generators]
    ident = (1 % l, 0, 0, 1 % l)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for gen in gens:
            y = _mul_mod(x, gen, l)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def reduction_surjectivity_check(l: int) -> bool:
    """Do the reductions of S and T generate all of SL2(Z/l)?"""
    _check_modulus(l)
    if l > MAX_CLOSURE_MODULUS:
        raise ModulusTooLarge(f"closure check supports l <= {MAX_CLOSURE_MODULUS}")
    reached = generated_subgroup([(0, -1, 1, 0), (1, 1, 0, 1)], l)
    return len(reached) == sl2_enumerate_order(l)


def _has_finite_order(m, limit: int = 12) -> bool:
    a, b, c, d = m
    x = (1, 0, 0, 1)
    for _ in range(limit):
        p, q, r, s = x
        x = (p * a + q * c, p * b + q * d, r * a + s * c, r * b + s * d)
        if x == (1, 0, 0, 1):
            return True
    return False


def _torsion_slice(l, bound, a_values):
    found = []
    r = np.arange(-bound, bound + 1)
    bs = r[r % l == 0]
    cs = bs
    for a in a_values:
        bc = np.add.outer(bs, np.zeros_like(cs)) * cs  # b*c grid
        num = 1 + bc
        ok = num % a == 0
        d = np.where(ok, num // a, 0)
        ok &= (np.abs(d) <= bound) & ((d - 1) % l == 0)
        # finite order forces |trace| <= 2; the identity is excluded
        ok &= np.abs(a + d) <= 2
        for i, k in zip(*np.nonzero(ok)):
            m = (int(a), int(bs[i]), int(cs[k]), int(d[i, k]))
            if m != (1, 0, 0, 1) and _has_finite_order(m):
                found.append(m)
    return found


def torsion_search(l: int, bound: int, workers: int | None = None) -> list:
    """Finite-order ``M != I`` in SL2(Z) with ``M = I mod l`` and ``|entries| <= bound``."""
    _check_modulus(l)
    if bound > MAX_BOUND:
        raise BoundTooLarge(f"bound must be <= {MAX_BOUND}")
    r = np.arange(-bound, bound + 1)
    a_values = [int(a) for a in r[(r - 1) % l == 0] if a != 0]
    workers = workers or int(os.environ.get("MODULI_KIT_THREADS", "1"))
    chunks = [a_values[i::workers] for i in range(workers)]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        parts = ex.map(lambda ch: _torsion_slice(l, bound, ch), chunks)
    return sorted(set(m for part in parts for m in part))
