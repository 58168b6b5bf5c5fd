"""Affine orbital graphs for matrix groups H <= GL(n, p) acting on V = F_p^n.

Vectors are encoded as integers ``sum(v[i] * p**i)`` so that all of V is a
flat range ``[0, p**n)``.  The nondiagonal orbitals of the affine group V:H
through ``(0, s)`` are the Cayley digraphs of V with connection set the
H-orbit of s, so their diameter is the eccentricity of 0.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from cpbounds.arith import DomainError, is_prime

DEFAULT_CAP = 10**6
# arcs handled by exact frontier expansion before switching to FFT sumsets
FRONTIER_ARC_LIMIT = 20_000_000

Matrix = tuple[tuple[int, ...], ...]


def _as_matrix(rows, p: int) -> Matrix:
    return tuple(tuple(int(x) % p for x in row) for row in rows)


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    rank = 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(a)) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        inv = pow(a[rank][col], -1, p)
        a[rank] = [x * inv % p for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class MatrixGroupSpec:
    """Generators of H <= GL(n, p); matrices act on column vectors."""

    p: int
    n: int
    generators: tuple[Matrix, ...] = ()
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"{self.p} is not prime")
        if self.n < 1:
            raise DomainError("dimension must be at least 1")
        if self.p**self.n > self.cap:
            raise DomainError(f"|V| = {self.p}^{self.n} exceeds the vertex cap {self.cap}")
        gens = []
        for g in self.generators:
            if len(g) != self.n or any(len(row) != self.n for row in g):
                raise DomainError(f"generator is not {self.n}x{self.n}")
            if any(not 0 <= x < self.p for row in g for x in row):
                raise DomainError(f"generator entries must lie in 0..{self.p - 1}")
            if rank_mod_p(g, self.p) < self.n:
                raise DomainError("generator is singular mod p")
            gens.append(tuple(tuple(row) for row in g))
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def from_rows(cls, p: int, n: int, generators, cap: int = DEFAULT_CAP) -> "MatrixGroupSpec":
        return cls(p, n, tuple(_as_matrix(g, p) for g in generators), cap)

    @property
    def size(self) -> int:
        return self.p**self.n


def encode(vec: Sequence[int], p: int) -> int:
    x = 0
    for i in reversed(range(len(vec))):
        x = x * p + vec[i] % p
    return x


def decode(x: int, p: int, n: int) -> tuple[int, ...]:
    out = []
    for _ in range(n):
        x, d = divmod(x, p)
        out.append(d)
    return tuple(out)


def all_digits(p: int, n: int) -> np.ndarray:
    """Row x holds the coordinates of the vector encoded by x."""
    idx = np.arange(p**n, dtype=np.int64)
    return np.stack([(idx // p**i) % p for i in range(n)], axis=1)


def _weights(p: int, n: int) -> np.ndarray:
    return p ** np.arange(n, dtype=np.int64)


def generator_permutations(spec: MatrixGroupSpec) -> list[np.ndarray]:
    """perm[x] = encoding of g . decode(x) for each generator g."""
    digits = all_digits(spec.p, spec.n)
    w = _weights(spec.p, spec.n)
    return [((digits @ np.array(g, dtype=np.int64).T) % spec.p) @ w for g in spec.generators]


@dataclass(frozen=True)
class CapExceeded:
    cap: int
    reached: int


def closure(spec: MatrixGroupSpec, element_cap: int = DEFAULT_CAP) -> Union[frozenset, CapExceeded]:
    """All elements of H, by breadth-first right multiplication by generators."""
    p, n = spec.p, spec.n
    gens = [np.array(g, dtype=np.int64) for g in spec.generators]
    ident = np.eye(n, dtype=np.int64)
    seen = {ident.tobytes(): ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = (x @ g) % p
            key = y.tobytes()
            if key not in seen:
                if len(seen) >= element_cap:
                    return CapExceeded(element_cap, len(seen))
                seen[key] = y
                queue.append(y)
    return frozenset(tuple(map(tuple, m.tolist())) for m in seen.values())


def orbits_on_nonzero(spec: MatrixGroupSpec) -> list[list[int]]:
    """H-orbits on V minus 0 as sorted lists of encoded vectors, ordered by least element."""
    size = spec.size
    perms = generator_permutations(spec)
    if perms:
        rows = np.concatenate([np.arange(size)] * len(perms))
        cols = np.concatenate(perms)
        graph = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(size, size))
        _, labels = connected_components(graph, directed=True, connection="weak")
    else:
        labels = np.arange(size)
    groups: dict[int, list[int]] = {}
    for x in range(1, size):
        groups.setdefault(int(labels[x]), []).append(x)
    return sorted(groups.values(), key=lambda orb: orb[0])


def _apply(g: Matrix, v: Sequence[int], p: int) -> list[int]:
    return [sum(a * b for a, b in zip(row, v)) % p for row in g]


def spin_dimension(spec: MatrixGroupSpec, v: Sequence[int]) -> int:
    """Dimension of the smallest H-invariant subspace containing v."""
    p = spec.p
    basis: dict[int, list[int]] = {}  # pivot column -> row with 1 at pivot

    def reduce(w):
        w = [x % p for x in w]
        for col, row in basis.items():
            if w[col]:
                f = w[col]
                w = [(a - f * b) % p for a, b in zip(w, row)]
        return w

    def insert(w):
        col = next(i for i, x in enumerate(w) if x)
        inv = pow(w[col], -1, p)
        w = [x * inv % p for x in w]
        for c, row in basis.items():
            if row[col]:
                f = row[col]
                basis[c] = [(a - f * b) % p for a, b in zip(row, w)]
        basis[col] = w

    pending = deque()
    w = reduce(v)
    if any(w):
        insert(w)
        pending.append(list(v))
    while pending and len(basis) < spec.n:
        u = pending.popleft()
        for g in spec.generators:
            img = _apply(g, u, p)
            w = reduce(img)
            if any(w):
                insert(w)
                pending.append(img)
    return len(basis)


def is_irreducible(spec: MatrixGroupSpec) -> bool:
    """Exact test: every H-orbit representative spins to the whole space.

    Spins of vectors in one orbit are translates of each other, so one
    representative per orbit decides all nonzero vectors.
    """
    if spec.n == 1:
        return True
    for orbit in orbits_on_nonzero(spec):
        if spin_dimension(spec, decode(orbit[0], spec.p, spec.n)) < spec.n:
            return False
    return True


def _check_orbit(spec: MatrixGroupSpec, orbit: Sequence[int], perms=None) -> np.ndarray:
    s = np.unique(np.asarray(list(orbit), dtype=np.int64))
    if s.size == 0:
        raise DomainError("empty connection set")
    if s[0] <= 0 or s[-1] >= spec.size:
        raise DomainError("connection set must consist of nonzero vectors of V")
    member = np.zeros(spec.size, dtype=bool)
    member[s] = True
    for perm in perms if perms is not None else generator_permutations(spec):
        if not member[perm[s]].all():
            raise DomainError("connection set is not closed under H")
    return s


def negate(spec: MatrixGroupSpec, s: np.ndarray) -> np.ndarray:
    digits = all_digits(spec.p, spec.n)[s]
    return np.sort(((-digits) % spec.p) @ _weights(spec.p, spec.n))


def _diameter_frontier(p: int, n: int, s: np.ndarray, start: int = 0, reverse: bool = False) -> float:
    size = p**n
    digits = all_digits(p, n)
    w = _weights(p, n)
    step = digits[s]
    if reverse:
        step = (-step) % p
    dist = np.full(size, -1, dtype=np.int64)
    dist[start] = 0
    frontier = np.array([start], dtype=np.int64)
    level = 0
    chunk = max(1, 2_000_000 // max(1, len(s)))
    while frontier.size:
        level += 1
        found = []
        for i in range(0, frontier.size, chunk):
            f = digits[frontier[i : i + chunk]]
            nb = (((f[:, None, :] + step[None, :, :]) % p) @ w).ravel()
            nb = np.unique(nb)
            nb = nb[dist[nb] < 0]
            dist[nb] = level
            found.append(nb)
        frontier = np.concatenate(found) if found else np.array([], dtype=np.int64)
    if (dist < 0).any():
        return math.inf
    return int(dist.max())


def _diameter_fft(p: int, n: int, s: np.ndarray) -> float:
    """Balls B_k = B_{k-1} | (B_{k-1} + S) via cyclic convolution on Z_p^n.

    Convolution counts are integers; a rounding error of 1/4 or more makes
    the result untrustworthy and raises.
    """
    shape = (p,) * n
    axes = tuple(range(n))
    # encoded x = sum v_i p^i; C-order reshape puts digit i on axis n-1-i
    conn = np.zeros(p**n)
    conn[s] = 1.0
    conn_hat = np.fft.rfftn(conn.reshape(shape))
    ball = np.zeros(p**n)
    ball[0] = 1.0
    level = 0
    while True:
        if ball.all():
            return level
        conv = np.fft.irfftn(np.fft.rfftn(ball.reshape(shape)) * conn_hat, s=shape, axes=axes).ravel()
        if np.abs(conv - np.rint(conv)).max() >= 0.25:
            raise ArithmeticError("FFT sumset lost integrality")
        grown = np.maximum(ball, (np.rint(conv) > 0).astype(float))
        if np.array_equal(grown, ball):
            return math.inf
        ball = grown
        level += 1


def orbital_diameter(
    spec: MatrixGroupSpec,
    orbit: Sequence[int],
    undirected: bool = False,
    method: str = "auto",
) -> float:
    """Diameter of the Cayley digraph u -> u + s, s in ``orbit``; math.inf if not strongly connected."""
    s = _check_orbit(spec, orbit)
    if undirected:
        s = np.union1d(s, negate(spec, s))
    if method == "auto":
        method = "frontier" if spec.size * s.size <= FRONTIER_ARC_LIMIT else "fft"
    if method == "frontier":
        return _diameter_frontier(spec.p, spec.n, s)
    if method == "fft":
        return _diameter_fft(spec.p, spec.n, s)
    raise ValueError(f"unknown method {method!r}")


def eccentricity(spec: MatrixGroupSpec, orbit: Sequence[int], start: int, reverse: bool = False) -> float:
    """Eccentricity of ``start`` (in the reversed digraph when ``reverse``)."""
    s = _check_orbit(spec, orbit)
    return _diameter_frontier(spec.p, spec.n, s, start=start, reverse=reverse)


@dataclass
class OrbitalResult:
    orbit_representative: tuple[int, ...]
    orbit_size: int
    diameter: float
    ms_bound: int
    ms_bound_holds: bool
    cp_value: Optional[int] = None
    corollary_ratio: Optional[Fraction] = None
    undirected_diameter: Optional[float] = None
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def num(x):
            return None if x is None else ("inf" if x == math.inf else int(x))

        return {
            "type": "orbital",
            "anchor": "affine-orbital-diameter",
            "orbit_representative": list(self.orbit_representative),
            "orbit_size": self.orbit_size,
            "diameter": num(self.diameter),
            "ms_bound": self.ms_bound,
            "ms_bound_holds": self.ms_bound_holds,
            "cp_value": self.cp_value,
            "corollary_ratio": None if self.corollary_ratio is None else str(self.corollary_ratio),
            "undirected_diameter": num(self.undirected_diameter),
            **self.extra,
        }


def check_bounds(
    spec: MatrixGroupSpec,
    orbit: Sequence[int],
    cp_value: Optional[int] = None,
    undirected: bool = False,
) -> OrbitalResult:
    """Diameter against (p-1)n, and diameter * c_p / n^2 when c_p >= 1."""
    s = sorted(int(x) for x in orbit)
    diam = orbital_diameter(spec, s)
    bound = (spec.p - 1) * spec.n
    ratio = None
    if cp_value is not None and cp_value >= 1 and diam != math.inf:
        ratio = Fraction(int(diam) * cp_value, spec.n**2)
    return OrbitalResult(
        orbit_representative=decode(s[0], spec.p, spec.n),
        orbit_size=len(s),
        diameter=diam,
        ms_bound=bound,
        ms_bound_holds=diam <= bound,
        cp_value=cp_value,
        corollary_ratio=ratio,
        undirected_diameter=orbital_diameter(spec, s, undirected=True) if undirected else None,
    )


def orbit_of(spec: MatrixGroupSpec, vec: Sequence[int]) -> list[int]:
    x = encode(vec, spec.p)
    if x == 0:
        raise DomainError("the zero vector has no nondiagonal orbital")
    for orb in orbits_on_nonzero(spec):
        if x in orb:
            return orb
    raise AssertionError("orbits do not cover V")


# ---------------------------------------------------------------- spec files


def parse_spec_text(text: str, cap: int = DEFAULT_CAP) -> MatrixGroupSpec:
    """First line ``p n``; then one generator per line, n^2 residues row-major."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty spec file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError("first line must be 'p n'")
    p, n = int(head[0]), int(head[1])
    gens = []
    for lineno, ln in enumerate(lines[1:], 2):
        vals = [int(x) for x in ln.split()]
        if len(vals) != n * n:
            raise ValueError(f"generator line {lineno}: expected {n * n} entries, got {len(vals)}")
        gens.append(tuple(tuple(vals[i * n : (i + 1) * n]) for i in range(n)))
    return MatrixGroupSpec(p, n, tuple(gens), cap)


def format_spec_text(spec: MatrixGroupSpec) -> str:
    lines = [f"{spec.p} {spec.n}"]
    lines += [" ".join(str(x) for row in g for x in row) for g in spec.generators]
    return "\n".join(lines) + "\n"
