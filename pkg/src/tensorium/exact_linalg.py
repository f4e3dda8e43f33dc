"""Exact rational linear algebra with modular fast paths.

All ranks over Q are computed with fraction-free Bareiss elimination on
integer-cleared rows (gmpy2 big integers when available). Modular ranks use
Fermat inverses; the Mersenne prime 2^61 - 1 gets a vectorized kernel since
it is the default certificate modulus for the large Gram matrices.

Key choices:
  - Rationals are fractions.Fraction everywhere; canonical string form "p/q".
  - rank_mod_p(m, p) <= rank_exact(m) always; equality at full size is a
    sound certificate of full rank over Q.
  - Deterministic pivoting (largest |numerator| for Bareiss, first nonzero
    for modular) so repeated runs give identical eliminations.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import DenominatorDivisibleByP, DimensionMismatch

try:
    from gmpy2 import mpz
except ImportError:  # pragma: no cover
    mpz = int

MERSENNE61 = (1 << 61) - 1

# -----------------------------------------------------------------
# rationals
# -----------------------------------------------------------------


def parse_rational(s: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction. Whitespace is not tolerated."""
    return Fraction(s)


def format_rational(x: Fraction) -> str:
    """Canonical string form: "p/q" with q > 0 and gcd 1, or "p" when q = 1."""
    return str(Fraction(x))


def thread_count() -> int:
    """Worker count from TENSORIUM_THREADS (default 1, floor 1)."""
    try:
        return max(1, int(os.environ.get("TENSORIUM_THREADS", "1")))
    except ValueError:
        return 1


# -----------------------------------------------------------------
# matrices
# -----------------------------------------------------------------


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of Fractions, row-major flat storage."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: list[list[Fraction]]) -> RatMatrix:
        r = len(rows)
        c = len(rows[0]) if rows else 0
        for row in rows:
            if len(row) != c:
                raise DimensionMismatch("ragged rows")
        flat = tuple(Fraction(x) for row in rows for x in row)
        return cls(r, c, flat)

    def at(self, i: int, j: int) -> Fraction:
        """0-based entry access."""
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise DimensionMismatch(f"entry ({i},{j}) outside {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[Fraction]:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def to_rows(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> RatMatrix:
        flat = tuple(
            self.entries[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return RatMatrix(self.cols, self.rows, flat)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [format_rational(x) for x in self.entries],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> RatMatrix:
        return cls(
            int(d["rows"]),
            int(d["cols"]),
            tuple(parse_rational(s) for s in d["entries"]),
        )


@dataclass(frozen=True)
class PrimeFieldMatrix:
    """Matrix over F_p; entries are ints in [0, p)."""

    modulus: int
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch("entry count does not match shape")

    @classmethod
    def from_rational(cls, m: RatMatrix, p: int) -> PrimeFieldMatrix:
        out = []
        for x in m.entries:
            den = x.denominator % p
            if den == 0:
                raise DenominatorDivisibleByP(
                    f"denominator {x.denominator} of entry {x} is divisible by {p}"
                )
            out.append((x.numerator % p) * pow(den, p - 2, p) % p)
        return cls(p, m.rows, m.cols, tuple(out))


def is_probable_prime(p: int) -> bool:
    """Deterministic Miller-Rabin for p < 3.3e24 (fixed witness set)."""
    if p < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if p % q == 0:
            return p == q
    d = p - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(r - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


# -----------------------------------------------------------------
# exact rank: fraction-free Bareiss with full pivoting
# -----------------------------------------------------------------


def _integer_rows(m: RatMatrix) -> list[list]:
    """Clear denominators per row (row scaling preserves rank)."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        scale = lcm(*(x.denominator for x in row)) if row else 1
        out.append([mpz(x.numerator * (scale // x.denominator)) for x in row])
    return out


def rank_exact(m: RatMatrix) -> int:
    """Rank over Q. Zero-dimensional matrices have rank 0."""
    if m.rows == 0 or m.cols == 0:
        return 0
    a = _integer_rows(m)
    rows, cols = m.rows, m.cols
    prev = mpz(1)
    r = 0
    for _ in range(min(rows, cols)):
        best = None
        bi = bj = -1
        for i in range(r, rows):
            ai = a[i]
            for j in range(r, cols):
                v = ai[j]
                if v and (best is None or abs(v) > best):
                    best = abs(v)
                    bi, bj = i, j
        if best is None:
            break
        if bi != r:
            a[r], a[bi] = a[bi], a[r]
        if bj != r:
            for row in a:
                row[r], row[bj] = row[bj], row[r]
        piv = a[r][r]
        ar = a[r]
        for i in range(r + 1, rows):
            ai = a[i]
            air = ai[r]
            for j in range(r + 1, cols):
                # Bareiss update: exact division, entries stay integral
                ai[j] = (ai[j] * piv - air * ar[j]) // prev
            ai[r] = mpz(0)
        prev = piv
        r += 1
    return r


# -----------------------------------------------------------------
# modular rank
# -----------------------------------------------------------------

_M61 = np.uint64(MERSENNE61)
_LOW31 = np.uint64((1 << 31) - 1)
_LOW30 = np.uint64((1 << 30) - 1)


def _mulmod61(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact (a*b) mod 2^61-1 for uint64 inputs < 2^61, via 31/30-bit limbs."""
    a1 = a >> np.uint64(31)
    a0 = a & _LOW31
    b1 = b >> np.uint64(31)
    b0 = b & _LOW31
    mid = a1 * b0 + a0 * b1  # < 2^62
    lo = a0 * b0  # < 2^62
    t = a1 * b1 * np.uint64(2)  # a1*b1*2^62 = a1*b1*2 mod M
    t += (mid >> np.uint64(30)) + ((mid & _LOW30) << np.uint64(31))
    t += (lo & _M61) + (lo >> np.uint64(61))
    t = (t & _M61) + (t >> np.uint64(61))
    t = (t & _M61) + (t >> np.uint64(61))
    return np.where(t >= _M61, t - _M61, t)


def _submod61(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.where(a >= b, a - b, a + _M61 - b)


def _rank_m61_numpy(a: np.ndarray) -> int:
    """Row echelon rank mod 2^61-1 on a uint64 array (destroys a)."""
    n, m = a.shape
    r = 0
    for c in range(m):
        if r == n:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        inv = np.uint64(pow(int(a[r, c]), MERSENNE61 - 2, MERSENNE61))
        row = _mulmod61(a[r, c + 1 :], inv)
        a[r, c + 1 :] = row
        a[r, c] = np.uint64(1)
        fac = a[r + 1 :, c]
        hot = np.nonzero(fac)[0]
        if hot.size and c + 1 < m:
            sub = a[r + 1 :, c + 1 :]
            sub[hot] = _submod61(sub[hot], _mulmod61(fac[hot, None], row[None, :]))
        a[r + 1 :, c] = np.uint64(0)
        r += 1
    return r


_numba_rank = None
_numba_tried = False


def _get_numba_rank():
    """Compile the fused elimination kernel once; None when numba is absent."""
    global _numba_rank, _numba_tried
    if _numba_tried:
        return _numba_rank
    _numba_tried = True
    try:
        import numba
        from numba import uint64
    except ImportError:
        return None

    M = uint64(MERSENNE61)
    U30, U31, U61 = uint64(30), uint64(31), uint64(61)
    L31, L30 = uint64((1 << 31) - 1), uint64((1 << 30) - 1)
    U0, U1, U2 = uint64(0), uint64(1), uint64(2)
    M_INT = MERSENNE61

    @numba.njit("uint64(uint64, uint64)", inline="always", cache=True)
    def mulmod(a, b):
        a1 = a >> U31
        a0 = a & L31
        b1 = b >> U31
        b0 = b & L31
        mid = a1 * b0 + a0 * b1
        lo = a0 * b0
        t = a1 * b1 * U2
        t += (mid >> U30) + ((mid & L30) << U31)
        t += (lo & M) + (lo >> U61)
        t = (t & M) + (t >> U61)
        t = (t & M) + (t >> U61)
        if t >= M:
            t -= M
        return t

    @numba.njit("int64(uint64[:, :])", cache=True)
    def rank_kernel(a):
        n, m = a.shape
        r = 0
        for c in range(m):
            if r == n:
                break
            piv = -1
            for i in range(r, n):
                if a[i, c] != U0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, m):
                    tmp = a[r, j]
                    a[r, j] = a[piv, j]
                    a[piv, j] = tmp
            inv = U1
            base = a[r, c]
            e = M_INT - 2
            while e:
                if e & 1:
                    inv = mulmod(inv, base)
                base = mulmod(base, base)
                e >>= 1
            for j in range(c + 1, m):
                a[r, j] = mulmod(a[r, j], inv)
            a[r, c] = U1
            for i in range(r + 1, n):
                f = a[i, c]
                if f == U0:
                    continue
                a[i, c] = U0
                for j in range(c + 1, m):
                    v = mulmod(f, a[r, j])
                    w = a[i, j]
                    a[i, j] = w - v if w >= v else w + M - v
            r += 1
        return r

    _numba_rank = rank_kernel
    return _numba_rank


def rank_m61_array(a: np.ndarray) -> int:
    """Rank mod 2^61-1 of a uint64 residue array. Consumes its argument."""
    if a.size == 0:
        return 0
    kernel = _get_numba_rank()
    if kernel is not None:
        return int(kernel(np.ascontiguousarray(a)))
    return _rank_m61_numpy(np.ascontiguousarray(a))


def pow_mod61_array(a: np.ndarray, d: int) -> np.ndarray:
    """Elementwise a**d mod 2^61-1 on a uint64 residue array."""
    if d < 0:
        raise ValueError("power must be nonnegative")
    out = np.full_like(a, 1)
    base = a.copy()
    e = d
    while e:
        if e & 1:
            out = _mulmod61(out, base)
        e >>= 1
        if e:
            base = _mulmod61(base, base)
    return out


def _rank_mod_p_python(rows: list[list[int]], p: int) -> int:
    n = len(rows)
    m = len(rows[0]) if rows else 0
    r = 0
    for c in range(m):
        if r == n:
            break
        piv = next((i for i in range(r, n) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], p - 2, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(r + 1, n):
            f = rows[i][c]
            if f:
                ri, rr = rows[i], rows[r]
                rows[i] = [(a - f * b) % p for a, b in zip(ri, rr)]
        r += 1
    return r


def rank_mod_p(m: RatMatrix | PrimeFieldMatrix, p: int | None = None) -> int:
    """Rank of the mod-p reduction. Always <= rank_exact.

    p defaults to the matrix modulus for PrimeFieldMatrix inputs and to
    2^61 - 1 otherwise. Composite p is rejected.
    """
    if isinstance(m, PrimeFieldMatrix):
        p = m.modulus if p is None else p
        if p != m.modulus:
            raise DimensionMismatch("modulus mismatch between matrix and p")
        pf = m
    else:
        p = MERSENNE61 if p is None else p
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        pf = PrimeFieldMatrix.from_rational(m, p)
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if pf.rows == 0 or pf.cols == 0:
        return 0
    if p == MERSENNE61 and min(pf.rows, pf.cols) >= 16:
        arr = np.array(pf.entries, dtype=np.uint64).reshape(pf.rows, pf.cols)
        return rank_m61_array(arr)
    rows = [list(pf.entries[i * pf.cols : (i + 1) * pf.cols]) for i in range(pf.rows)]
    return _rank_mod_p_python(rows, p)


# -----------------------------------------------------------------
# span membership and linear solving
# -----------------------------------------------------------------


def solve_rational(
    a_rows: list[list[Fraction]], b: list[Fraction]
) -> list[Fraction] | None:
    """One exact solution of A x = b (free variables set to 0), or None."""
    n = len(a_rows)
    if len(b) != n:
        raise DimensionMismatch("rhs length does not match row count")
    m = len(a_rows[0]) if n else 0
    aug = [list(map(Fraction, a_rows[i])) + [Fraction(b[i])] for i in range(n)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                row_r = aug[r]
                aug[i] = [x - f * y for x, y in zip(aug[i], row_r)]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    for i in range(r, n):
        if aug[i][m] != 0:
            return None
    x = [Fraction(0)] * m
    for pr, pc in pivots:
        x[pc] = aug[pr][m]
    return x


def in_span(
    v: list[Fraction], basis: list[list[Fraction]]
) -> list[Fraction] | None:
    """Coefficients c with v = sum c_i * basis_i, or None if v is outside."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    k = len(v)
    for b in basis:
        if len(b) != k:
            raise DimensionMismatch("basis vector length differs from v")
    a_rows = [[basis[j][i] for j in range(len(basis))] for i in range(k)]
    return solve_rational(a_rows, list(v))


def kernel_vector(m: RatMatrix) -> list[Fraction] | None:
    """A nonzero rational vector in the kernel of m, or None if full column rank."""
    rows = [list(r) for r in m.to_rows()]
    n, cols = m.rows, m.cols
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row_r = rows[r]
                rows[i] = [x - f * y for x, y in zip(rows[i], row_r)]
        pivots.append((r, c))
        r += 1
        if r == n:
            break
    pivot_cols = {c for _, c in pivots}
    free = next((c for c in range(cols) if c not in pivot_cols), None)
    if free is None:
        return None
    x = [Fraction(0)] * cols
    x[free] = Fraction(1)
    for pr, pc in pivots:
        x[pc] = -rows[pr][free]
    return x


def gram_power_matrix(vectors: list[list[Fraction]], d: int) -> RatMatrix:
    """G[i][j] = <v_i, v_j>^d, exact.

    Full rank of G certifies linear independence of the d-th symmetric
    powers of the vectors, since G is the Gram matrix of those powers.
    """
    if d < 0:
        raise ValueError("power must be nonnegative")
    k = len(vectors)
    if k:
        width = len(vectors[0])
        for v in vectors:
            if len(v) != width:
                raise DimensionMismatch("vectors of unequal length")
    ips = [[Fraction(0)] * k for _ in range(k)]
    for i in range(k):
        vi = vectors[i]
        for j in range(i, k):
            ip = sum(a * b for a, b in zip(vi, vectors[j]))
            ips[i][j] = ips[j][i] = ip**d
    return RatMatrix.from_rows(ips)
