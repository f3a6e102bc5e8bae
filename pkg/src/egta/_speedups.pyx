# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the hot kernels (see _fallback.py for the contract)."""

import numpy as np

cimport numpy as cnp

IMPLEMENTATION = "cython"

cdef unsigned long long GOLDEN = 0x9E3779B97F4A7C15ULL
cdef unsigned long long MIX1 = 0xBF58476D1CE4E5B9ULL
cdef unsigned long long MIX2 = 0x94D049BB133111EBULL
cdef unsigned long long PLAYER_KEY = 0xD6E8FEB86659FD93ULL
cdef unsigned long long RANK_KEY = 0xA5A3564E4B9E96A3ULL


cdef inline unsigned long long finalize(unsigned long long x) nogil:
    x ^= x >> 30
    x *= MIX1
    x ^= x >> 27
    x *= MIX2
    x ^= x >> 31
    return x


def condition_stream(master_seed, long long start, long long count):
    cdef unsigned long long seed = <unsigned long long>(master_seed & 0xFFFFFFFFFFFFFFFF)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty(count, dtype=np.uint64)
    cdef long long j
    for j in range(count):
        out[j] = finalize(seed + (<unsigned long long>(start + j + 1)) * GOLDEN)
    return out


def noise_sign_matrix(cnp.ndarray[cnp.uint64_t, ndim=1] conditions, long long player,
                      cnp.ndarray[cnp.uint64_t, ndim=1] ranks):
    cdef long long nprof = ranks.shape[0]
    cdef long long ncond = conditions.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.empty((nprof, ncond), dtype=np.float64)
    cdef unsigned long long key, mixed
    cdef long long i, j
    for i in range(nprof):
        key = finalize(<unsigned long long>player * PLAYER_KEY + ranks[i] * RANK_KEY)
        for j in range(ncond):
            mixed = finalize(key ^ conditions[j])
            out[i, j] = 2.0 * <double>(mixed & 1ULL) - 1.0
    return out


def welford_merge(cnp.ndarray[cnp.float64_t, ndim=1] count,
                  cnp.ndarray[cnp.float64_t, ndim=1] mean,
                  cnp.ndarray[cnp.float64_t, ndim=1] m2,
                  cnp.ndarray[cnp.float64_t, ndim=1] b_count,
                  cnp.ndarray[cnp.float64_t, ndim=1] b_mean,
                  cnp.ndarray[cnp.float64_t, ndim=1] b_m2):
    cdef long long n = count.shape[0]
    cdef long long i
    cdef double total, delta, frac
    for i in range(n):
        total = count[i] + b_count[i]
        if total > 0:
            delta = b_mean[i] - mean[i]
            frac = b_count[i] / max(total, 1.0)
            mean[i] += delta * frac
            m2[i] += b_m2[i] + delta * delta * count[i] * frac
        else:
            m2[i] += b_m2[i]
        count[i] += b_count[i]
    return count, mean, m2
