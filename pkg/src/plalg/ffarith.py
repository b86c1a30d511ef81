"""Prime fields, dense polynomials over F_p, and small extension fields.

Polynomials are tuples of coefficients, lowest degree first, with trailing
zeros stripped (the zero polynomial is ``()``).  Monic polynomials of a given
degree are ordered by their integer encoding ``sum(c_i * p**i)``, which is
the order used whenever a "least" polynomial or element is chosen.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

Poly = tuple

__all__ = [
    "PrimeField",
    "ExtField",
    "is_prime",
    "frobenius",
    "poly_trim",
    "poly_add",
    "poly_sub",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_is_irreducible",
    "poly_factor",
    "monic_polys",
    "least_irreducible",
    "poly_of_matrix",
]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; elements are plain ints in ``[0, p-1]``."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def __call__(self, a: int) -> int:
        return a % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.p)

    def elements(self) -> range:
        return range(self.p)


# ---------------------------------------------------------------------------
# polynomials over F_p
# ---------------------------------------------------------------------------

def poly_trim(f: Sequence[int], p: int) -> Poly:
    c = [a % p for a in f]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(f: Poly, g: Poly, p: int) -> Poly:
    n = max(len(f), len(g))
    return poly_trim([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)
                      for i in range(n)], p)


def poly_sub(f: Poly, g: Poly, p: int) -> Poly:
    return poly_add(f, tuple(-a for a in g), p)


def poly_mul(f: Poly, g: Poly, p: int) -> Poly:
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return poly_trim(out, p)


def poly_divmod(f: Poly, g: Poly, p: int) -> tuple[Poly, Poly]:
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    q = [0] * max(len(f) - len(g) + 1, 0)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    for k in range(len(f) - 1, dg - 1, -1):
        c = (r[k] * inv) % p
        if c:
            q[k - dg] = c
            for j, b in enumerate(g):
                r[k - dg + j] = (r[k - dg + j] - c * b) % p
    return poly_trim(q, p), poly_trim(r[:dg], p)


def poly_gcd(f: Poly, g: Poly, p: int) -> Poly:
    """Monic gcd."""
    while g:
        f, g = g, poly_divmod(f, g, p)[1]
    if not f:
        return ()
    inv = pow(f[-1], -1, p)
    return poly_trim([a * inv for a in f], p)


def monic_polys(p: int, degree: int) -> Iterator[Poly]:
    """Monic polynomials of exactly ``degree``, in integer-encoding order."""
    for low in itertools.product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def poly_is_irreducible(f: Poly, p: int) -> bool:
    d = len(f) - 1
    if d < 1:
        return False
    for k in range(1, d // 2 + 1):
        for g in monic_polys(p, k):
            if not poly_divmod(f, g, p)[1]:
                return False
    return True


@lru_cache(maxsize=None)
def _irreducibles(p: int, degree: int) -> tuple[Poly, ...]:
    return tuple(g for g in monic_polys(p, degree) if poly_is_irreducible(g, p))


def least_irreducible(p: int, k: int) -> Poly:
    return _irreducibles(p, k)[0]


def poly_factor(f: Poly, p: int) -> list[tuple[Poly, int]]:
    """Factor a nonzero polynomial into monic irreducibles (trial division).

    Returns ``[(factor, multiplicity), ...]`` in order of degree, then
    encoding; the leading coefficient is discarded.
    """
    f = poly_trim(f, p)
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    inv = pow(f[-1], -1, p)
    f = poly_trim([a * inv for a in f], p)
    out: list[tuple[Poly, int]] = []
    k = 1
    while len(f) - 1 >= 2 * k:
        for g in _irreducibles(p, k):
            m = 0
            while True:
                q, r = poly_divmod(f, g, p)
                if r:
                    break
                f, m = q, m + 1
            if m:
                out.append((g, m))
        k += 1
    if len(f) > 1:
        # the cofactor has no factor of degree <= deg/2, so it is irreducible
        for i, (g, m) in enumerate(out):
            if g == f:
                out[i] = (g, m + 1)
                break
        else:
            out.append((f, 1))
    out.sort(key=lambda gm: (len(gm[0]), tuple(reversed(gm[0]))))
    return out


def poly_of_matrix(f: Poly, a: np.ndarray, p: int) -> np.ndarray:
    """Evaluate ``f(A)`` mod p by Horner's rule."""
    n = a.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(f):
        out = (out @ a + c * eye) % p
    return out


# ---------------------------------------------------------------------------
# extension fields
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtField:
    """F_{p^k} as F_p[X]/(modulus); elements are length-k coefficient tuples.

    If ``modulus`` is omitted the least irreducible monic polynomial of
    degree k is used, so that constructions built on top are reproducible.
    """

    p: int
    k: int
    modulus: Poly = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.k < 1:
            raise ValueError("extension degree must be >= 1")
        if not self.modulus:
            object.__setattr__(self, "modulus", least_irreducible(self.p, self.k))
        mod = poly_trim(self.modulus, self.p)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise ValueError(f"modulus must be monic of degree {self.k}")
        if not poly_is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def order(self) -> int:
        return self.p ** self.k

    def element(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        c = [a % self.p for a in coeffs]
        if len(c) > self.k:
            return self.reduce(c)
        return tuple(c + [0] * (self.k - len(c)))

    def reduce(self, f: Sequence[int]) -> tuple[int, ...]:
        _, r = poly_divmod(poly_trim(f, self.p), self.modulus, self.p)
        return tuple(r) + (0,) * (self.k - len(r))

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * self.k

    @property
    def one(self) -> tuple[int, ...]:
        return (1,) + (0,) * (self.k - 1)

    def add(self, x, y):
        return tuple((a + b) % self.p for a, b in zip(x, y))

    def sub(self, x, y):
        return tuple((a - b) % self.p for a, b in zip(x, y))

    def scale(self, c: int, x):
        return tuple((c * a) % self.p for a in x)

    def mul(self, x, y):
        return self.reduce(poly_mul(poly_trim(x, self.p), poly_trim(y, self.p), self.p))

    def pow(self, x, n: int):
        result, base = self.one, x
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def frobenius(self, x, iterations: int = 1):
        for _ in range(iterations):
            x = self.pow(x, self.p)
        return x

    def encode(self, x) -> int:
        return sum(a * self.p ** i for i, a in enumerate(x))

    def decode(self, n: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.k):
            n, r = divmod(n, self.p)
            out.append(r)
        return tuple(out)

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements in encoding order."""
        for n in range(self.order):
            yield self.decode(n)

    def frobenius_matrix(self) -> np.ndarray:
        """Matrix of x -> x^p on the polynomial basis; row i is (X^i)^p."""
        rows = []
        for i in range(self.k):
            basis = tuple(1 if j == i else 0 for j in range(self.k))
            rows.append(self.frobenius(basis))
        return np.array(rows, dtype=np.int64).reshape(self.k, self.k)


def frobenius(field_: ExtField, x, iterations: int = 1):
    """``x**(p**iterations)`` by repeated p-th powering."""
    return field_.frobenius(x, iterations)
