"""Integer polynomials, cyclotomic polynomials, and exact singularity tests.

A circulant matrix is identified with its first row, and the first row with
the polynomial sum(c_j x^j) in Z[x]/(x^n - 1).  The matrix is singular
exactly when some cyclotomic polynomial of a divisor of n divides that row
polynomial, which is what :func:`singular_divisors` decides with exact
integer arithmetic.  :func:`dft_eigenvalues` provides the floating-point
cross-check; it is never trusted over the exact test.
"""
from __future__ import annotations

import cmath
import dataclasses
import functools
import math
import warnings


@dataclasses.dataclass(init=False, frozen=True)
class IntPolynomial:
    """Dense integer polynomial; ``coeffs[j]`` is the coefficient of x^j.

    Trailing zero coefficients are trimmed on construction, so equal
    polynomials always compare equal.  The zero polynomial is the empty
    tuple and has ``degree is None``.

    >>> IntPolynomial((1, 0, 2, 0))
    IntPolynomial(coeffs=(1, 0, 2))
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int | None:
        """Degree of the polynomial, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: IntPolynomial) -> IntPolynomial:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPolynomial(
            [x + y for x, y in zip(a, b)] + list(a[len(b):]))

    def __sub__(self, other: IntPolynomial) -> IntPolynomial:
        return self + (-other)

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial([-c for c in self.coeffs])

    def __mul__(self, other: IntPolynomial) -> IntPolynomial:
        if self.is_zero() or other.is_zero():
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    def stretch(self, k: int) -> IntPolynomial:
        """Substitute x -> x^k."""
        if k < 1:
            raise ValueError("stretch factor must be positive")
        out = [0] * (k * len(self.coeffs))
        for j, c in enumerate(self.coeffs):
            out[k * j] = c
        return IntPolynomial(out)

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Quotient and remainder by a monic divisor, exact over the integers.

        Satisfies self = divisor * quot + rem with deg rem < deg divisor.
        """
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        dd = len(divisor.coeffs) - 1
        rem = list(self.coeffs)
        if len(rem) <= dd:
            return IntPolynomial(), self
        quot = [0] * (len(rem) - dd)
        for i in range(len(quot) - 1, -1, -1):
            c = rem[i + dd]
            if c:
                quot[i] = c
                for j, g in enumerate(divisor.coeffs):
                    rem[i + j] -= c * g
        return IntPolynomial(quot), IntPolynomial(rem)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 by trial division."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def divisors(n: int) -> list[int]:
    """All divisors of n, sorted ascending."""
    ds = [1]
    for p, k in factorize(n).items():
        ds = [d * p**j for d in ds for j in range(k + 1)]
    return sorted(ds)


def totient(n: int) -> int:
    t = 1
    for p, k in factorize(n).items():
        t *= (p - 1) * p ** (k - 1)
    return t


def smallest_prime(n: int) -> int:
    """Smallest prime divisor of n >= 2."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return min(factorize(n))


@dataclasses.dataclass(frozen=True)
class DivisorProfile:
    """n together with its divisor list, smallest prime, and totients."""

    n: int
    divisors: tuple[int, ...]
    smallest_prime: int | None
    totients: dict[int, int]

    @classmethod
    def of(cls, n: int) -> "DivisorProfile":
        ds = divisors(n)
        return cls(
            n=n,
            divisors=tuple(ds),
            smallest_prime=smallest_prime(n) if n >= 2 else None,
            totients={d: totient(d) for d in ds},
        )


@dataclasses.dataclass(frozen=True)
class FirstRow:
    """First row of a circulant matrix as a 0/1 coefficient sequence.

    The signed model maps bit b to 2b - 1, so the same row object serves
    both the {0,1} and the {-1,1} matrix.
    """

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if len(self.bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    def polynomial(self, signed: bool = False) -> IntPolynomial:
        if signed:
            return IntPolynomial([2 * b - 1 for b in self.bits])
        return IntPolynomial(self.bits)


@functools.lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """The d-th cyclotomic polynomial, exact.

    Built from x - 1 with the prime-power closed form and the
    substitution/division recursion on the squarefree kernel; every
    division is an exact monic integer division.

    >>> cyclotomic(6).coeffs
    (1, -1, 1)
    """
    if d < 1:
        raise ValueError("d must be positive")
    if d == 1:
        return IntPolynomial((-1, 1))
    fac = factorize(d)
    if len(fac) == 1:
        ((p, k),) = fac.items()
        step = p ** (k - 1)
        coeffs = [0] * ((p - 1) * step + 1)
        for i in range(p):
            coeffs[i * step] = 1
        return IntPolynomial(coeffs)
    poly = IntPolynomial((-1, 1))
    for p in sorted(fac):
        quot, rem = poly.stretch(p).divmod_monic(poly)
        if not rem.is_zero():  # cannot happen: p is new to the kernel
            raise AssertionError(f"inexact cyclotomic division at d={d}, p={p}")
        poly = quot
    rad = math.prod(fac)
    return poly.stretch(d // rad)


def fold(f: IntPolynomial, n: int, d: int) -> IntPolynomial:
    """Image of f in Z[x]/(x^d - 1): bucket coefficients by index mod d."""
    if d < 1 or n % d:
        raise ValueError(f"{d} does not divide {n}")
    if f.degree is not None and f.degree >= n:
        raise ValueError(f"polynomial degree {f.degree} not below n={n}")
    buckets = [0] * d
    for i, c in enumerate(f.coeffs):
        buckets[i % d] += c
    return IntPolynomial(buckets)


def reduce_mod_cyclotomic(f: IntPolynomial, d: int) -> IntPolynomial:
    """Exact remainder of f modulo the d-th cyclotomic polynomial."""
    return f.divmod_monic(cyclotomic(d))[1]


def singular_divisors(row: FirstRow, signed: bool = False) -> set[int]:
    """Divisors d of n whose cyclotomic polynomial divides the row polynomial.

    The circulant matrix built from the row is singular iff the returned
    set is nonempty.  Each divisor is tested by folding into
    Z[x]/(x^d - 1) first and reducing modulo the cyclotomic there.
    """
    f = row.polynomial(signed)
    hits = set()
    for d in divisors(row.n):
        if reduce_mod_cyclotomic(fold(f, row.n, d), d).is_zero():
            hits.add(d)
    return hits


def dft_eigenvalues(row: FirstRow, signed: bool = False) -> list[complex]:
    """Floating-point circulant eigenvalues sum_k c_k exp(2*pi*i*k*j/n)."""
    cs = [2 * b - 1 for b in row.bits] if signed else list(row.bits)
    n = row.n
    return [
        sum(c * cmath.exp(2j * cmath.pi * k * j / n) for k, c in enumerate(cs))
        for j in range(n)
    ]


def dft_singularity_crosscheck(row: FirstRow, signed: bool = False,
                               tol: float | None = None) -> bool:
    """Exact singularity verdict, warning if the DFT check disagrees.

    The numeric check declares an eigenvalue zero below ``tol``
    (default 1e-6 * n).  Disagreements are reported as warnings; the
    exact result is always returned.
    """
    if tol is None:
        tol = 1e-6 * row.n
    exact = bool(singular_divisors(row, signed))
    numeric = min(abs(lam) for lam in dft_eigenvalues(row, signed)) < tol
    if numeric != exact:
        warnings.warn(
            f"DFT singularity check disagrees with exact test for n={row.n} "
            f"(numeric={numeric}, exact={exact}); trusting the exact test",
            RuntimeWarning,
            stacklevel=2,
        )
    return exact
