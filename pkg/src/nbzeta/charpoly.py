"""Exact characteristic polynomials of integer matrices.

The workhorse is a modular method: reduce the matrix mod several word-size
primes, bring each image to Hessenberg form, run the Hessenberg charpoly
recurrence, and CRT-lift.  The prime count comes from a rigorous Hadamard
bound on the coefficients (each coefficient is a signed sum of principal
minors), so the result is exact, never heuristic.

A division-free Berkowitz implementation is kept as an independent oracle
for small matrices.
"""

from math import comb, isqrt

import numpy as np

from .errors import TooLarge

EXACT_CHARPOLY_LIMIT = 512

# Primes just below 2**26: products of two residues fit int64 even after
# summing 512 of them (512 * (2**26)**2 < 2**63), so numpy matmul is safe.
_PRIME_CEILING_BITS = 26


def _is_prime(n):
    if n < 2 or n % 2 == 0:
        return n == 2
    f, r = 3, isqrt(n)
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_pool():
    pool = []
    x = (1 << _PRIME_CEILING_BITS) - 1
    while len(pool) < 160:
        if _is_prime(x):
            pool.append(x)
        x -= 2
    return pool

_PRIMES = _prime_pool()


def coefficient_bound(M):
    """Rigorous bound on |c_k| over all k for charpoly(M).

    c_k is a signed sum of the C(m,k) principal k-minors; each minor is
    Hadamard-bounded by the product of the k largest row 2-norms.
    """
    m = M.shape[0]
    sq = np.sort(np.asarray(np.sum(M.astype(object) ** 2, axis=1)))[::-1]
    best, acc = 1, 1
    for k in range(1, m + 1):
        if sq[k - 1] > 0:
            acc *= int(sq[k - 1])
        b = comb(m, k) * (isqrt(acc) + 1)
        if b > best:
            best = b
    return best


def _hessenberg_mod(M, p):
    """Similarity-reduce M to upper Hessenberg form mod p (in place copy)."""
    H = (M % p).astype(np.int64)
    m = H.shape[0]
    for k in range(m - 2):
        col = H[k + 1:, k]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        r = k + 1 + int(nz[0])
        if r != k + 1:
            H[[k + 1, r], :] = H[[r, k + 1], :]
            H[:, [k + 1, r]] = H[:, [r, k + 1]]
        inv = pow(int(H[k + 1, k]), p - 2, p)
        v = (H[k + 2:, k] * inv) % p
        H[k + 2:, :] = (H[k + 2:, :] - v[:, None] * H[k + 1, :]) % p
        H[:, k + 1] = (H[:, k + 1] + H[:, k + 2:] @ v) % p
    return H


def _charpoly_hessenberg_mod(H, p):
    """charpoly of an upper Hessenberg matrix mod p, ascending coefficients.

    Zero subdiagonal entries split the matrix into independent blocks.  On
    a block with nonzero subdiagonal, rescale by a diagonal similarity so
    every subdiagonal entry is 1; the leading-minor recurrence then reads
    p_k = (x - h_kk) p_{k-1} - sum_i h_ik p_{i-1}, one matvec per step.
    """
    m = H.shape[0]
    if m == 0:
        return np.array([1], dtype=np.int64)
    sub = np.array([int(H[j + 1, j]) % p for j in range(m - 1)], dtype=np.int64)
    cut = np.nonzero(sub == 0)[0]
    if cut.size:
        j = int(cut[0]) + 1
        c1 = _charpoly_hessenberg_mod(H[:j, :j], p)
        c2 = _charpoly_hessenberg_mod(H[j:, j:], p)
        out = np.zeros(m + 1, dtype=np.int64)
        for a, ca in enumerate(c1.tolist()):
            if ca:
                out[a:a + len(c2)] = (out[a:a + len(c2)] + ca * c2) % p
        return out

    d = np.ones(m, dtype=np.int64)
    for j in range(1, m):
        d[j] = (d[j - 1] * int(H[j, j - 1])) % p
    dinv = np.array([pow(int(x), p - 2, p) for x in d], dtype=np.int64)
    Hs = ((dinv[:, None] * H % p) * d[None, :]) % p

    P = np.zeros((m + 1, m + 1), dtype=np.int64)
    P[0, 0] = 1
    for k in range(1, m + 1):
        a = int(Hs[k - 1, k - 1])
        newp = np.zeros(m + 1, dtype=np.int64)
        newp[1:k + 1] = P[k - 1, 0:k]
        newp[:k] = (newp[:k] - a * P[k - 1, :k]) % p
        if k >= 2:
            w = Hs[0:k - 1, k - 1]
            newp[:k] = (newp[:k] - w @ P[0:k - 1, :k]) % p
        P[k, :] = newp % p
    return P[m, :]


def _crt_lift(residues, primes):
    """Symmetric CRT lift of per-prime coefficient vectors to signed ints."""
    ncoef = len(residues[0])
    out = []
    for j in range(ncoef):
        x, prod = 0, 1
        for res, p in zip(residues, primes):
            t = ((int(res[j]) - x) * pow(prod % p, p - 2, p)) % p
            x += prod * t
            prod *= p
        if x > prod // 2:
            x -= prod
        out.append(x)
    return out


def charpoly(M, limit=EXACT_CHARPOLY_LIMIT):
    """Exact det(xI - M) for an integer matrix, ascending coefficients."""
    M = np.asarray(M)
    m = M.shape[0]
    if m != M.shape[1]:
        raise ValueError("matrix must be square")
    if m > limit:
        raise TooLarge(f"exact charpoly limited to {limit}x{limit}")
    if m == 0:
        return [1]
    target = 2 * coefficient_bound(M) + 1
    Mi = M.astype(np.int64)
    residues, primes, prod = [], [], 1
    for p in _PRIMES:
        residues.append(_charpoly_hessenberg_mod(_hessenberg_mod(Mi, p), p))
        primes.append(p)
        prod *= p
        if prod > target:
            break
    else:
        raise TooLarge("prime pool exhausted; matrix entries too large")
    return _crt_lift(residues, primes)


def charpoly_berkowitz(M):
    """Division-free Berkowitz charpoly; slow, used as a cross-check oracle."""
    M = [[int(x) for x in row] for row in np.asarray(M)]
    m = len(M)
    if m == 0:
        return [1]
    # vectors[k] holds charpoly of leading k x k block, descending coeffs
    poly = [1, -M[0][0]]
    for k in range(1, m):
        a = M[k][k]
        row = [M[k][j] for j in range(k)]
        col = [M[j][k] for j in range(k)]
        block = [[M[i][j] for j in range(k)] for i in range(k)]
        # toeplitz column: [1, -a, -(R C), -(R B C), -(R B^2 C), ...]
        tcol = [1, -a]
        vec = col
        for _ in range(k):
            tcol.append(-sum(r * v for r, v in zip(row, vec)))
            vec = [sum(block[i][j] * vec[j] for j in range(k)) for i in range(k)]
        new = [0] * (k + 2)
        for i, c in enumerate(poly):
            for j, t in enumerate(tcol):
                if i + j <= k + 1:
                    new[i + j] += c * t
        poly = new
    return list(reversed(poly))
