import itertools

import numpy as np

CHUNK = 1 << 14


def _locates(masks, nbr, self_bit, dominate):
    n_ent = nbr.shape[0]
    if n_ent == 0:
        return np.ones(masks.shape[0], dtype=bool)
    sigs = masks[:, None] & nbr[None, :]
    exempt = np.zeros(sigs.shape, dtype=bool)
    has = self_bit >= 0
    if has.any():
        exempt[:, has] = ((masks[:, None] >> self_bit[has][None, :]) & 1).astype(bool)
    ok = np.ones(masks.shape[0], dtype=bool)
    if dominate:
        ok &= ~np.any((sigs == 0) & ~exempt, axis=1)
    sentinel = -np.arange(1, n_ent + 1, dtype=np.int64)
    sigs = np.where(exempt, sentinel[None, :], sigs)
    sigs.sort(axis=1)
    ok &= ~np.any(sigs[:, 1:] == sigs[:, :-1], axis=1)
    return ok


def first_hit(nbr, self_bit, dominate, base, cand, size):
    base = np.int64(base)
    if size == 0:
        return int(base) if _locates(np.array([base]), nbr, self_bit, dominate)[0] else -1
    if size > cand.shape[0]:
        return -1
    bits = np.left_shift(np.int64(1), cand)
    combos = itertools.combinations(range(cand.shape[0]), size)
    while True:
        block = np.array(list(itertools.islice(combos, CHUNK)), dtype=np.int64)
        if block.size == 0:
            return -1
        masks = np.bitwise_or.reduce(bits[block], axis=1) | base
        ok = _locates(masks, nbr, self_bit, dominate)
        if ok.any():
            return int(masks[np.argmax(ok)])


def _sat_block(a, pos, neg, full):
    ok = np.ones(a.shape[0], dtype=bool)
    na = full ^ a
    for p, q in zip(pos, neg):
        ok &= ((a & p) != 0) | ((na & q) != 0)
    return ok


def first_sat(pos, neg, nvars):
    full = np.int64((1 << nvars) - 1)
    total = 1 << nvars
    for start in range(0, total, CHUNK * 4):
        a = np.arange(start, min(total, start + CHUNK * 4), dtype=np.int64)
        ok = _sat_block(a, pos, neg, full)
        if ok.any():
            return int(a[np.argmax(ok)])
    return -1


def count_sat(pos, neg, nvars):
    full = np.int64((1 << nvars) - 1)
    total = 1 << nvars
    count = 0
    for start in range(0, total, CHUNK * 4):
        a = np.arange(start, min(total, start + CHUNK * 4), dtype=np.int64)
        count += int(_sat_block(a, pos, neg, full).sum())
    return count
