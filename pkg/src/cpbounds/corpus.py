"""A fixed corpus of small irreducible matrix groups with their composition factors."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from cpbounds.affine import MatrixGroupSpec


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    spec: MatrixGroupSpec
    factors: str  # factor-list text for H; "" for the trivial group
    order: int


def _small_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def cyclic_factor_text(k: int) -> str:
    return ", ".join(f"C{q}" for q in _small_factors(k))


def _mat_pow(a: np.ndarray, e: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    while e:
        if e & 1:
            result = (result @ a) % p
        a = (a @ a) % p
        e >>= 1
    return result


def companion(coeffs: tuple[int, ...], p: int) -> np.ndarray:
    """Companion matrix of x^n + c_{n-1} x^{n-1} + ... + c_0, coeffs = (c_0, ..., c_{n-1})."""
    n = len(coeffs)
    c = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        c[i, i - 1] = 1
    c[:, n - 1] = [(-x) % p for x in coeffs]
    return c


def element_order(a: np.ndarray, p: int, bound: int) -> Optional[int]:
    """Multiplicative order of ``a`` if it divides ``bound``, else None."""
    ident = np.eye(a.shape[0], dtype=np.int64)
    for d in sorted(d for d in range(1, bound + 1) if bound % d == 0):
        if np.array_equal(_mat_pow(a, d, p), ident):
            return d
    return None


def singer_cycle(p: int, n: int) -> np.ndarray:
    """Companion matrix of the first primitive polynomial of degree n over F_p."""
    top = p**n - 1
    for coeffs in product(range(p), repeat=n):
        if coeffs[0] == 0:
            continue
        c = companion(coeffs, p)
        if element_order(c, p, top) == top:
            return c
    raise ValueError("no primitive polynomial found")


def deleted_permutation_module(perms: list[tuple[int, ...]], degree: int, p: int) -> list[np.ndarray]:
    """Matrices of permutations on the sum-zero submodule, basis e_i - e_last."""
    n = degree - 1
    mats = []
    for sigma in perms:
        m = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            image = np.zeros(degree, dtype=np.int64)
            image[sigma[i]] += 1
            image[sigma[degree - 1]] -= 1
            m[:, i] = image[:n] % p
        mats.append(m)
    return mats


def _sym_gens(d: int) -> list[tuple[int, ...]]:
    swap = (1, 0) + tuple(range(2, d))
    cycle = tuple(range(1, d)) + (0,)
    return [swap, cycle]


def _alt_gens(d: int) -> list[tuple[int, ...]]:
    three = (1, 2, 0) + tuple(range(3, d))
    if d % 2:
        long = tuple(range(1, d)) + (0,)
    else:
        long = (0,) + tuple(range(2, d)) + (1,)
    return [three, long]


def _spec(p, n, mats) -> MatrixGroupSpec:
    return MatrixGroupSpec.from_rows(p, n, [np.asarray(m).tolist() for m in mats])


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def _sl2_factors(p: int) -> str:
    return "C2, C2, C2, C3" if p == 3 else f"C2, L(2,{p})"


def build_corpus() -> list[CorpusEntry]:
    entries = []

    def add(name, p, n, mats, factors, order):
        entries.append(CorpusEntry(name, _spec(p, n, mats), factors, order))

    add("trivial F5", 5, 1, [], "", 1)
    add("trivial F13", 13, 1, [], "", 1)
    add("scalars F7", 7, 1, [[[3]]], "C2, C3", 6)
    add("negation F11", 11, 1, [[[10]]], "C2", 2)
    add("order-5 scalars F31", 31, 1, [[[2]]], "C5", 5)
    add("rotation F3^2", 3, 2, [[[0, 2], [1, 0]]], "C2, C2", 4)
    add("Q8 F3^2", 3, 2, [[[0, 2], [1, 0]], [[1, 1], [1, 2]]], "C2, C2, C2", 8)
    add("signed perms F5^2", 5, 2, [[[0, 1], [1, 0]], [[1, 0], [0, 4]]], "C2, C2, C2", 8)
    for p in (3, 5, 7, 11):
        order = p * (p * p - 1)
        add(f"SL(2,{p})", p, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]], _sl2_factors(p), order)
    add("GL(2,5)", 5, 2, [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]],
        "C2, C2, C2, L(2,5)", 480)
    add("SL(3,2)", 2, 3, [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]],
        "L(3,2)", 168)
    add("GL(3,3)", 3, 3, [[[1, 1, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]],
                          [[2, 0, 0], [0, 1, 0], [0, 0, 1]]], "C2, L(3,3)", 11232)
    for p, n in ((2, 3), (2, 4), (3, 2), (5, 2), (3, 3), (2, 6)):
        c = singer_cycle(p, n)
        add(f"Singer F{p}^{n}", p, n, [c], cyclic_factor_text(p**n - 1), p**n - 1)
    c = singer_cycle(2, 4)
    add("Singer^3 F2^4", 2, 4, [_mat_pow(c, 3, 2)], "C5", 5)
    c = singer_cycle(2, 6)
    add("Singer^7 F2^6", 2, 6, [_mat_pow(c, 7, 2)], "C3, C3", 9)
    for d, p in ((5, 2), (5, 3), (7, 2), (4, 3), (6, 5), (7, 3), (8, 3), (5, 7)):
        n = d - 1
        add(f"Sym({d}) on F{p}^{n}", p, n, deleted_permutation_module(_sym_gens(d), d, p),
            "C2, C3, C2, C2" if d == 4 else f"C2, A{d}", _factorial(d))
    for d, p in ((5, 2), (7, 2), (5, 3)):
        n = d - 1
        add(f"Alt({d}) on F{p}^{n}", p, n, deleted_permutation_module(_alt_gens(d), d, p),
            f"A{d}", _factorial(d) // 2)
    return entries


def tightness_spec(p: int) -> tuple[MatrixGroupSpec, list[int]]:
    """Trivial group on F_p with the single-step orbital {1}."""
    return MatrixGroupSpec(p, 1, ()), [1]


def find(name: str, entries: Optional[list[CorpusEntry]] = None) -> CorpusEntry:
    for e in entries or build_corpus():
        if e.name == name:
            return e
    raise KeyError(name)
