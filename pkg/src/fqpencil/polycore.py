"""Vectorized polynomial arithmetic over F_{p^k}.

A polynomial of degree < n is stored as an int64 array of shape (n, k):
row i holds the coefficient of x^i as a length-k vector over F_p (low power
of the field generator first).  All routines keep entries reduced mod p.

ModCtx precomputes, for a fixed monic modulus M of degree n, the images of
x^{n+j} mod M as an array; multiply-and-reduce then costs one convolution
plus one matrix product, which keeps long square-and-multiply chains (e.g.
Frobenius powers of degree-144 polynomials) fast.
"""

from __future__ import annotations

import numpy as np


def to_array(coeffs, field, length=None) -> np.ndarray:
    """Pack a list of field elements (low degree first) into an (n, k) array."""
    n = len(coeffs) if length is None else length
    out = np.zeros((max(n, 1), field.k), dtype=np.int64)
    for i, e in enumerate(coeffs):
        out[i] = e
    return out


def from_array(arr, field):
    """Unpack an (n, k) array into a trimmed list of field elements."""
    coeffs = [tuple(int(v) for v in row) for row in arr]
    while len(coeffs) > 1 and coeffs[-1] == field.zero:
        coeffs.pop()
    return coeffs


def _fold(wide: np.ndarray, field) -> np.ndarray:
    """Reduce generator powers y^k..y^{2k-2} using the field's modulus rows.

    wide has shape (..., 2k-1); returns shape (..., k), entries mod p.
    """
    k, p = field.k, field.p
    if k == 1:
        return wide % p
    low = wide[..., :k].astype(np.int64, copy=True)
    high = wide[..., k:]
    if high.size:
        low += high @ field._red_np
    return low % p


def poly_mul(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    """Product of two packed polynomials."""
    p, k = field.p, field.k
    na, nb = a.shape[0], b.shape[0]
    n = na + nb - 1
    if k == 1:
        return (np.convolve(a[:, 0], b[:, 0]) % p).reshape(n, 1)
    wide = np.zeros((n, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        col = a[:, i]
        if not col.any():
            continue
        for j in range(k):
            colb = b[:, j]
            if colb.any():
                wide[:, i + j] += np.convolve(col, colb) % p
    return _fold(wide, field)


class ModCtx:
    """Fixed monic modulus with a precomputed power-reduction table."""

    def __init__(self, modulus: np.ndarray, field, headroom: int | None = None):
        """modulus: packed array of length n+1 with monic top coefficient."""
        self.field = field
        n = modulus.shape[0] - 1
        if field.k == 1:
            assert int(modulus[n, 0]) == 1
        else:
            top = tuple(int(v) for v in modulus[n])
            assert top == field.one
        self.n = n
        self.modulus = modulus
        # rows[j] = x^{n+j} mod M, for j = 0 .. headroom-1
        hr = (n - 1) if headroom is None else headroom
        rows = np.zeros((max(hr, 1), n, field.k), dtype=np.int64)
        cur = (field.p - modulus[:n]) % field.p  # x^n mod M
        for j in range(hr):
            rows[j] = cur
            nxt = np.zeros_like(cur)
            nxt[1:] = cur[:-1]
            top = cur[n - 1]
            if top.any() if field.k > 1 else top[0]:
                # fold the overflowing x^n term back in
                prod = _elem_outer(top, rows[0], field)
                nxt = (nxt + prod) % field.p
            cur = nxt % field.p
        self.rows = rows
        self.headroom = hr

    def reduce(self, a: np.ndarray) -> np.ndarray:
        """a mod M, for deg a <= n - 1 + headroom."""
        n, field = self.n, self.field
        if a.shape[0] <= n:
            out = np.zeros((n, field.k), dtype=np.int64)
            out[: a.shape[0]] = a
            return out
        extra = a.shape[0] - n
        assert extra <= self.headroom
        low = a[:n] + _contract(a[n:], self.rows[:extra], field)
        return low % field.p

    def mulmod(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.reduce(poly_mul(a, b, self.field))

    def powmod(self, a: np.ndarray, e: int) -> np.ndarray:
        field = self.field
        result = np.zeros((self.n, field.k), dtype=np.int64)
        result[0] = field.one
        base = self.reduce(a)
        while e:
            if e & 1:
                result = self.mulmod(result, base)
            base = self.mulmod(base, base)
            e >>= 1
        return result


def _contract(coeffs: np.ndarray, block: np.ndarray, field) -> np.ndarray:
    """sum_e coeffs[e] * block[e] over field elements.

    coeffs has shape (m, k) and block (m, n, k); returns (n, k) mod p.
    """
    p, k = field.p, field.k
    if k == 1:
        return ((coeffs[:, 0] @ block[:, :, 0]) % p).reshape(-1, 1)
    n = block.shape[1]
    wide = np.zeros((n, 2 * k - 1), dtype=np.int64)
    for i in range(k):
        ci = coeffs[:, i]
        if not ci.any():
            continue
        for j in range(k):
            wide[:, i + j] += (ci @ block[:, :, j]) % p
    return _fold(wide, field)


class FrobCtx(ModCtx):
    """ModCtx with a composition table for the q-power Frobenius.

    For h with coefficients in the ground field F_q, h(x)^q = h(x^q), so
    h^q mod M is the contraction of h's coefficients against the table of
    (x^q)^j mod M.
    """

    def __init__(self, modulus: np.ndarray, field):
        super().__init__(modulus, field)
        n = self.n
        x = np.zeros((2, field.k), dtype=np.int64)
        x[1] = field.one
        xq = self.powmod(x, field.q)
        table = np.zeros((n, n, field.k), dtype=np.int64)
        table[0, 0] = field.one
        if n > 1:
            table[1] = xq
            for j in range(2, n):
                table[j] = self.mulmod(table[j - 1], xq)
        self.frob_table = table

    def frobenius(self, a: np.ndarray) -> np.ndarray:
        """a(x)^q mod M; a packed with length <= n."""
        n, field = self.n, self.field
        if a.shape[0] < n:
            padded = np.zeros((n, field.k), dtype=np.int64)
            padded[: a.shape[0]] = a
            a = padded
        return _contract(a, self.frob_table, field)


def _elem_outer(c: np.ndarray, block: np.ndarray, field) -> np.ndarray:
    """Multiply every coefficient in block (..., n, k) by field element c."""
    p, k = field.p, field.k
    if k == 1:
        return (block * int(c[0])) % p
    # c * row for each row: widen, convolve in the generator variable
    wide = np.zeros(block.shape[:-1] + (2 * k - 1,), dtype=np.int64)
    for i in range(k):
        ci = int(c[i])
        if ci:
            wide[..., i : i + k] += ci * block
    return _fold(wide, field)
