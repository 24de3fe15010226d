import numpy as np
from numba import njit


@njit(cache=True)
def _locates(mask, nbr, self_bit, dominate, buf):
    cnt = 0
    for e in range(nbr.shape[0]):
        b = self_bit[e]
        if b >= 0 and (mask >> b) & 1:
            continue
        sig = mask & nbr[e]
        if dominate and sig == 0:
            return False
        for i in range(cnt):
            if buf[i] == sig:
                return False
        buf[cnt] = sig
        cnt += 1
    return True


@njit(cache=True)
def first_hit(nbr, self_bit, dominate, base, cand, size):
    buf = np.empty(nbr.shape[0], np.int64)
    m = cand.shape[0]
    if size == 0:
        return base if _locates(base, nbr, self_bit, dominate, buf) else -1
    if size > m:
        return -1
    idx = np.arange(size)
    one = np.int64(1)
    while True:
        mask = base
        for i in range(size):
            mask |= one << cand[idx[i]]
        if _locates(mask, nbr, self_bit, dominate, buf):
            return mask
        i = size - 1
        while i >= 0 and idx[i] == m - size + i:
            i -= 1
        if i < 0:
            return -1
        idx[i] += 1
        for j in range(i + 1, size):
            idx[j] = idx[j - 1] + 1


@njit(cache=True)
def _sat(a, pos, neg, full):
    for c in range(pos.shape[0]):
        if (a & pos[c]) == 0 and ((full ^ a) & neg[c]) == 0:
            return False
    return True


@njit(cache=True)
def first_sat(pos, neg, nvars):
    full = (np.int64(1) << nvars) - 1
    for a in range(np.int64(1) << nvars):
        if _sat(np.int64(a), pos, neg, full):
            return a
    return -1


@njit(cache=True)
def count_sat(pos, neg, nvars):
    full = (np.int64(1) << nvars) - 1
    total = 0
    for a in range(np.int64(1) << nvars):
        if _sat(np.int64(a), pos, neg, full):
            total += 1
    return total
