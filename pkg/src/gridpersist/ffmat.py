"""Dense exact linear algebra over prime fields GF(p).

Matrices are immutable wrappers around numpy integer arrays with entries
reduced to [0, p).  Zero-row and zero-column matrices are first-class: a
k x 0 or 0 x k matrix is the unique linear map from or to the zero space
and participates in products, stacking and rank like any other matrix.

Ranks are computed by row reduction.  For p = 2 rows are packed into
64-bit words and eliminated with XOR; for general p a vectorised
elimination with modular pivot inverses is used.  Both paths are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ShapeError(ValueError):
    """Raised when matrix dimensions or moduli do not fit an operation."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A prime field GF(p) with 2 <= p < 2**16."""

    p: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not 2 <= self.p < 2**16:
            raise ValueError(f"field modulus must be an integer in [2, 2**16): {self.p!r}")
        if not _is_prime(self.p):
            raise ValueError(f"field modulus must be prime: {self.p}")


GF2 = FieldSpec(2)


class FFMatrix:
    """An immutable rows x cols matrix over GF(p)."""

    __slots__ = ("p", "data")

    def __init__(self, data, p: int):
        if not _is_prime(p) or not 2 <= p < 2**16:
            raise ValueError(f"invalid modulus {p!r}")
        arr = np.asarray(data, dtype=np.int64)
        if arr.ndim != 2:
            raise ShapeError(f"matrix data must be two-dimensional, got shape {arr.shape}")
        arr = np.mod(arr, p)
        arr.setflags(write=False)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("FFMatrix is immutable")

    @classmethod
    def _wrap(cls, arr: np.ndarray, p: int) -> "FFMatrix":
        """Internal: wrap an int64 array already reduced mod p, no copy."""
        arr.setflags(write=False)
        obj = object.__new__(cls)
        object.__setattr__(obj, "p", p)
        object.__setattr__(obj, "data", arr)
        return obj

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FFMatrix":
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64), p)

    @classmethod
    def identity(cls, n: int, p: int) -> "FFMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "FFMatrix":
        return FFMatrix(self.data.T, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FFMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.data, other.data))

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return NotImplemented if eq is NotImplemented else not eq

    def __matmul__(self, other: "FFMatrix") -> "FFMatrix":
        return mat_mul(self, other)

    def __repr__(self) -> str:
        return f"FFMatrix(p={self.p}, shape={self.shape})"

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()


def _check_same_p(*mats: FFMatrix) -> int:
    p = mats[0].p
    for m in mats[1:]:
        if m.p != p:
            raise ShapeError(f"modulus mismatch: {m.p} != {p}")
    return p


def mat_mul(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """Exact product a @ b over GF(p).

    The composition through a zero-dimensional space is the zero map of
    the appropriate shape, which numpy's empty matmul already yields.
    """
    p = _check_same_p(a, b)
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.cols
    # Partial sums of nonnegative int products stay below 2**53, so the
    # BLAS float path is exact here and much faster than int64 matmul.
    if inner and (p - 1) * (p - 1) * inner < 2**53:
        prod = np.rint(a.data.astype(np.float64) @ b.data.astype(np.float64)).astype(np.int64)
    else:
        prod = a.data @ b.data
    return FFMatrix._wrap(prod % p, p)


def _rank_generic(arr: np.ndarray, p: int) -> int:
    """Row-echelon rank over GF(p) with vectorised elimination."""
    a = np.array(arr, dtype=np.int64) % p
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        below = a[r + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            idx = r + 1 + hit
            a[idx] = (a[idx] - np.outer(a[idx, c], a[r])) % p
        r += 1
    return r


def _pack_gf2(arr: np.ndarray) -> np.ndarray:
    """Pack a 0/1 matrix into rows of little-endian 64-bit words."""
    rows, cols = arr.shape
    words = (cols + 63) // 64
    padded = np.zeros((rows, words * 64), dtype=np.uint8)
    padded[:, :cols] = arr.astype(np.uint8)
    packed = np.packbits(padded, axis=1, bitorder="little")
    return packed.view(np.uint64)


def _rank_gf2(arr: np.ndarray) -> int:
    """Bit-packed XOR elimination rank over GF(2)."""
    rows, cols = arr.shape
    if rows == 0 or cols == 0:
        return 0
    a = _pack_gf2(arr % 2)
    r = 0
    for c in range(cols):
        w = c >> 6
        mask = np.uint64(1 << (c & 63))
        nz = np.nonzero(a[r:, w] & mask)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            # the swapped-out row r had a zero bit here, so the rows left
            # to eliminate are still exactly nz[1:]
            a[[r, piv]] = a[[piv, r]]
        if nz.size > 1:
            a[r + nz[1:]] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def mat_rank(a: FFMatrix) -> int:
    """Rank of a over GF(p); a 0 x k or k x 0 matrix has rank 0."""
    if a.rows == 0 or a.cols == 0:
        return 0
    if a.p == 2:
        return _rank_gf2(a.data)
    return _rank_generic(a.data, a.p)


def _rref(arr: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot column indices."""
    a = np.array(arr, dtype=np.int64) % p
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = (a[r] * inv) % p
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] = (a[hit] - np.outer(a[hit, c], a[r])) % p
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(a: FFMatrix) -> FFMatrix:
    """A cols x k matrix whose columns form a basis of ker(a).

    Columns are ordered by the free column index they correspond to, so
    the result is deterministic.  a @ kernel_basis(a) is always zero and
    k = cols - rank(a).
    """
    rref, pivots = _rref(a.data, a.p)
    p = a.p
    free = [c for c in range(a.cols) if c not in set(pivots)]
    basis = np.zeros((a.cols, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for i, pc in enumerate(pivots):
            basis[pc, k] = (-rref[i, fc]) % p
    return FFMatrix(basis, p)


def mat_inv(a: FFMatrix) -> FFMatrix:
    """Inverse of a square invertible matrix; raises ShapeError otherwise."""
    if a.rows != a.cols:
        raise ShapeError(f"cannot invert non-square matrix {a.shape}")
    n, p = a.rows, a.p
    aug = np.hstack([a.data, np.eye(n, dtype=np.int64)])
    rref, pivots = _rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise ShapeError("matrix is singular")
    return FFMatrix(rref[:, n:], p)


def hstack(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """[a | b]; row counts must agree."""
    p = _check_same_p(a, b)
    if a.rows != b.rows:
        raise ShapeError(f"hstack row mismatch: {a.shape} vs {b.shape}")
    return FFMatrix._wrap(np.hstack([a.data, b.data]), p)


def vstack(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """[a ; b]; column counts must agree."""
    p = _check_same_p(a, b)
    if a.cols != b.cols:
        raise ShapeError(f"vstack column mismatch: {a.shape} vs {b.shape}")
    return FFMatrix._wrap(np.vstack([a.data, b.data]), p)


def block2x2(a, b, c, d, p: int | None = None) -> FFMatrix:
    """Assemble [[a, b], [c, d]] with None meaning an auto-sized zero block.

    Each None block takes its row count from its horizontal neighbour and
    its column count from its vertical neighbour; if a dimension cannot be
    inferred from any given block a ShapeError is raised.
    """
    given = [m for m in (a, b, c, d) if m is not None]
    if not given:
        raise ShapeError("block2x2 needs at least one concrete block")
    p = _check_same_p(*given) if p is None else p
    _check_same_p(*given)

    def dim(primary, secondary, axis):
        if primary is not None:
            return primary.shape[axis]
        if secondary is not None:
            return secondary.shape[axis]
        raise ShapeError("block2x2 cannot infer a block dimension")

    top = dim(a, b, 0)
    bottom = dim(c, d, 0)
    left = dim(a, c, 1)
    right = dim(b, d, 1)
    expected = [(a, top, left), (b, top, right), (c, bottom, left), (d, bottom, right)]
    for m, r, cc in expected:
        if m is not None and m.shape != (r, cc):
            raise ShapeError(f"block of shape {m.shape} does not fit slot {(r, cc)}")
    body = np.zeros((top + bottom, left + right), dtype=np.int64)
    if a is not None:
        body[:top, :left] = a.data
    if b is not None:
        body[:top, left:] = b.data
    if c is not None:
        body[top:, :left] = c.data
    if d is not None:
        body[top:, left:] = d.data
    return FFMatrix._wrap(body, p)


def pullback_basis(f: FFMatrix, g: FFMatrix) -> tuple[FFMatrix, FFMatrix]:
    """Projections (phi1, phi2) of a basis of the pullback of f and g.

    f and g must share a codomain.  The pullback is the subspace
    {(a, b) : f a = g b} of dom(f) x dom(g); its dimension is
    dom(f) + dom(g) - rank([f | g]).  The returned matrices satisfy
    f @ phi1 == g @ phi2 and [phi1 ; phi2] has full column rank.
    """
    p = _check_same_p(f, g)
    if f.rows != g.rows:
        raise ShapeError(f"pullback needs a common codomain: {f.shape} vs {g.shape}")
    neg_g = FFMatrix((-g.data) % p, p)
    ker = kernel_basis(hstack(f, neg_g))
    phi1 = FFMatrix(ker.data[: f.cols, :], p)
    phi2 = FFMatrix(ker.data[f.cols:, :], p)
    return phi1, phi2


def random_matrix(rows: int, cols: int, field: FieldSpec, rng: np.random.Generator) -> FFMatrix:
    """Uniform random rows x cols matrix over GF(p)."""
    return FFMatrix(rng.integers(0, field.p, size=(rows, cols), dtype=np.int64), field.p)


def random_invertible(d: int, field: FieldSpec, rng: np.random.Generator) -> FFMatrix:
    """A random invertible d x d matrix, built as P @ L @ U.

    L is unit lower triangular with random strictly lower entries, U is
    upper triangular with random nonzero diagonal, P is a random
    permutation, so the product is always invertible.  For d = 1, p = 2
    this is the unique invertible matrix [[1]].
    """
    p = field.p
    if d == 0:
        return FFMatrix.zeros(0, 0, p)
    lower = np.tril(rng.integers(0, p, size=(d, d), dtype=np.int64), -1) + np.eye(d, dtype=np.int64)
    upper = np.triu(rng.integers(0, p, size=(d, d), dtype=np.int64), 1)
    upper += np.diag(rng.integers(1, p, size=d, dtype=np.int64))
    perm = np.eye(d, dtype=np.int64)[rng.permutation(d)]
    return mat_mul(FFMatrix(perm, p), mat_mul(FFMatrix(lower, p), FFMatrix(upper, p)))
