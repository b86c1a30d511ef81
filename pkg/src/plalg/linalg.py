"""Exact linear algebra over F_p on int64 numpy arrays.

Every subspace is stored by its reduced row-echelon basis, so two
:class:`Subspace` values are equal exactly when they are the same set.
Vectors are rows; a matrix ``M`` acts on column vectors, i.e. the linear map
is ``v -> M @ v`` and its kernel lives in ``F_p^{cols}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Optional, Sequence, Union

import numpy as np

from .errors import BudgetExceeded, DimensionError

DEFAULT_ENUM_BUDGET = 10**6

__all__ = [
    "as_matrix",
    "rref",
    "rank",
    "Subspace",
    "kernel_image",
    "kernel",
    "lattice",
    "solve",
    "mat_inv",
    "mat_pow",
    "gaussian_binomial",
    "count_subspaces",
    "enumerate_subspaces",
    "all_vectors",
    "projective_points",
]


def as_matrix(rows, p: int, cols: Optional[int] = None) -> np.ndarray:
    m = np.array(rows, dtype=np.int64)
    if m.size == 0:
        return np.zeros((0, cols or 0), dtype=np.int64)
    if m.ndim == 1:
        m = m.reshape(1, -1)
    return m % p


def rref(m: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row-echelon form with zero rows removed, plus pivot columns."""
    a = np.array(m, dtype=np.int64) % p
    if a.ndim != 2:
        raise DimensionError("rref expects a 2-d array")
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = (a[r] * pow(int(a[r, c]), -1, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        nzr = np.flatnonzero(col)
        if nzr.size:
            a[nzr] = (a[nzr] - np.outer(col[nzr], a[r])) % p
        pivots.append(c)
        r += 1
    return a[:r], tuple(pivots)


def rank(m: np.ndarray, p: int) -> int:
    return len(rref(m, p)[1])


def mat_pow(a: np.ndarray, n: int, p: int) -> np.ndarray:
    result = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while n:
        if n & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        n >>= 1
    return result


def mat_inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([a % p, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != tuple(range(n)) or len(piv) < n:
        raise ValueError("matrix is singular")
    return r[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """An F_p-subspace of ``F_p^ambient_dim`` held by its canonical basis."""

    p: int
    ambient_dim: int
    basis: np.ndarray
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, vectors, p: int, ambient_dim: Optional[int] = None) -> "Subspace":
        m = np.array(vectors, dtype=np.int64)
        if ambient_dim is None:
            if m.ndim != 2:
                raise DimensionError("cannot infer ambient dimension")
            ambient_dim = m.shape[1]
        m = m.reshape(-1, ambient_dim) if m.size else np.zeros((0, ambient_dim), np.int64)
        b, piv = rref(m, p)
        b.setflags(write=False)
        return cls(p, ambient_dim, b, piv)

    @classmethod
    def _from_rref(cls, b: np.ndarray, pivots, p: int, n: int) -> "Subspace":
        b.setflags(write=False)
        return cls(p, n, b, tuple(pivots))

    @classmethod
    def zero(cls, n: int, p: int) -> "Subspace":
        return cls._from_rref(np.zeros((0, n), np.int64), (), p, n)

    @classmethod
    def full(cls, n: int, p: int) -> "Subspace":
        return cls._from_rref(np.eye(n, dtype=np.int64), range(n), p, n)

    # -- identity ---------------------------------------------------------
    def key(self) -> tuple:
        return (self.p, self.ambient_dim, self.pivots, self.basis.tobytes())

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        rows = ";".join(",".join(str(int(a)) for a in r) for r in self.basis)
        return f"Subspace(p={self.p}, n={self.ambient_dim}, basis=[{rows}])"

    def sort_key(self) -> tuple:
        return (self.dim, self.pivots, tuple(int(a) for a in self.basis.ravel()))

    # -- queries ----------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residue of v (or each row of a 2-d v) modulo the subspace."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if self.dim == 0:
            return v
        piv = list(self.pivots)
        if v.ndim == 1:
            return (v - v[piv] @ self.basis) % self.p
        return (v - v[:, piv] @ self.basis) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def contains_all(self, vs) -> bool:
        vs = np.asarray(vs, dtype=np.int64)
        if vs.size == 0:
            return True
        return not self.reduce(vs.reshape(-1, self.ambient_dim)).any()

    def issubset(self, other: "Subspace") -> bool:
        _check_same(self, other)
        return self.dim <= other.dim and other.contains_all(self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __lt__(self, other: "Subspace") -> bool:
        return self.dim < other.dim and self.issubset(other)

    def coords(self, v) -> np.ndarray:
        """Coordinates of v in the canonical basis (v must lie in the space)."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if not self.contains(v):
            raise ValueError("vector is not in the subspace")
        if v.ndim == 1:
            return v[list(self.pivots)]
        return v[:, list(self.pivots)]

    def __add__(self, other: "Subspace") -> "Subspace":
        _check_same(self, other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return _intersect(self, other)

    def elements(self) -> Iterator[np.ndarray]:
        """Every vector of the subspace, coefficient tuples in product order."""
        for c in itertools.product(range(self.p), repeat=self.dim):
            yield (np.array(c, dtype=np.int64) @ self.basis) % self.p if self.dim else \
                np.zeros(self.ambient_dim, dtype=np.int64)

    def element_array(self) -> np.ndarray:
        return (all_vectors(self.dim, self.p) @ self.basis) % self.p

    def projective_array(self) -> np.ndarray:
        """One representative (first nonzero coordinate 1) of each line."""
        return (projective_points(self.dim, self.p) @ self.basis) % self.p

    def size(self) -> int:
        return self.p ** self.dim


def _check_same(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim or a.p != b.p:
        raise DimensionError(
            f"ambient mismatch: F_{a.p}^{a.ambient_dim} vs F_{b.p}^{b.ambient_dim}")


def _intersect(a: Subspace, b: Subspace) -> Subspace:
    # Zassenhaus: rows [a|a] and [b|0]; rows of the echelon form whose left
    # half vanishes carry the intersection in their right half.
    _check_same(a, b)
    n, p = a.ambient_dim, a.p
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(n, p)
    top = np.hstack([a.basis, a.basis])
    bot = np.hstack([b.basis, np.zeros_like(b.basis)])
    r, piv = rref(np.vstack([top, bot]), p)
    rows = [i for i, c in enumerate(piv) if c >= n]
    return Subspace.span(r[rows, n:], p, n)


def kernel(m: np.ndarray, p: int) -> Subspace:
    m = np.asarray(m, dtype=np.int64) % p
    rows, cols = m.shape
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for j, c in enumerate(piv):
            basis[i, c] = (-r[j, f]) % p
    return Subspace.span(basis, p, cols)


def kernel_image(m: np.ndarray, p: int) -> tuple[Subspace, Subspace]:
    """Kernel in F_p^cols and image (column space) in F_p^rows of ``m``."""
    m = np.asarray(m, dtype=np.int64) % p
    return kernel(m, p), Subspace.span(m.T, p, m.shape[0])


def solve(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution x of ``a @ x = b`` (b a vector), or None."""
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    rows, cols = a.shape
    r, piv = rref(np.hstack([a, b.reshape(-1, 1)]), p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for j, c in enumerate(piv):
        x[c] = r[j, cols]
    return x


def lattice(a: Subspace, b: Subspace,
            op: Literal["sum", "intersect", "contains", "complement_in"]
            ) -> Union[Subspace, bool]:
    """Sum, intersection, inclusion ``b <= a``, or a complement of b in a."""
    _check_same(a, b)
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "contains":
        return b.issubset(a)
    if op == "complement_in":
        if not b.issubset(a):
            raise DimensionError("complement_in needs b to lie inside a")
        chosen: list[np.ndarray] = []
        cur = b
        for row in a.basis:
            if not cur.contains(row):
                chosen.append(row)
                cur = cur + Subspace.span([row], a.p, a.ambient_dim)
        return Subspace.span(np.array(chosen).reshape(-1, a.ambient_dim), a.p, a.ambient_dim)
    raise ValueError(f"unknown lattice op {op!r}")


def gaussian_binomial(n: int, k: int, p: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (n - i) - 1
        den *= p ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, p: int, dim: Optional[int] = None) -> int:
    if dim is not None:
        return gaussian_binomial(n, dim, p)
    return sum(gaussian_binomial(n, k, p) for k in range(n + 1))


def all_vectors(n: int, p: int) -> np.ndarray:
    """All p**n vectors of F_p^n, rows in product (lexicographic) order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def projective_points(n: int, p: int) -> np.ndarray:
    """Normalized representatives of the lines of F_p^n (first nonzero = 1)."""
    blocks = []
    for lead in range(n):
        tail = all_vectors(n - lead - 1, p)
        block = np.zeros((tail.shape[0], n), dtype=np.int64)
        block[:, lead] = 1
        block[:, lead + 1:] = tail
        blocks.append(block)
    if not blocks:
        return np.zeros((0, n), dtype=np.int64)
    return np.vstack(blocks)


def _subspaces_of_dim(n: int, k: int, p: int) -> Iterator[Subspace]:
    for piv in itertools.combinations(range(n), k):
        pivset = set(piv)
        free = [(r, c) for r, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
        base = np.zeros((k, n), dtype=np.int64)
        for r, c in enumerate(piv):
            base[r, c] = 1
        if not free:
            yield Subspace._from_rref(base, piv, p, n)
            continue
        rr = [r for r, _ in free]
        cc = [c for _, c in free]
        for vals in itertools.product(range(p), repeat=len(free)):
            b = base.copy()
            b[rr, cc] = vals
            yield Subspace._from_rref(b, piv, p, n)


def enumerate_subspaces(ambient_dim: int, p: int, dim_filter: Optional[int] = None,
                        budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[Subspace]:
    """Every subspace exactly once, in canonical order.

    Order: by dimension (ascending, when unfiltered), then pivot tuple, then
    free echelon entries in lexicographic order.  The budget is checked
    against the exact Gaussian-binomial count before anything is yielded.
    """
    total = count_subspaces(ambient_dim, p, dim_filter)
    if total > budget:
        raise BudgetExceeded(f"subspaces of F_{p}^{ambient_dim}", total, budget)
    dims: Iterable[int] = [dim_filter] if dim_filter is not None else range(ambient_dim + 1)
    return itertools.chain.from_iterable(_subspaces_of_dim(ambient_dim, k, p) for k in dims)
