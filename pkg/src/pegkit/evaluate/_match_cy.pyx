# cython: boundscheck=False, wraparound=False
"""Cython alignment kernel: hot loops of the Smatch hill climber.

Mirrors _match_py move-for-move; see that module for the contract.
"""

from cpython cimport array
import array

BACKEND = "cython"


cdef long _count(int[::1] mapping, int[:, ::1] pair_score,
                 int[::1] rel_u, int[::1] rel_r, int[::1] rel_v,
                 set pred_rel, int n_roles, int n_pred):
    cdef long total = 0
    cdef int i, j, k, mu, mv
    cdef int n_gold = mapping.shape[0]
    cdef int n_rel = rel_u.shape[0]
    for i in range(n_gold):
        j = mapping[i]
        if j >= 0:
            total += pair_score[i, j]
    for k in range(n_rel):
        mu = mapping[rel_u[k]]
        mv = mapping[rel_v[k]]
        if mu >= 0 and mv >= 0:
            if (mu * n_roles + rel_r[k]) * n_pred + mv in pred_rel:
                total += 1
    return total


def count_matches(mapping, pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    cdef array.array m = array.array('i', mapping)
    cdef array.array ru = array.array('i', rel_u)
    cdef array.array rr = array.array('i', rel_r)
    cdef array.array rv = array.array('i', rel_v)
    cdef int n_gold = len(mapping)
    flat = array.array('i', [v for row in pair_score for v in row])
    cdef int[:, ::1] ps
    if n_pred > 0 and n_gold > 0:
        ps = memoryview(flat).cast('B').cast('i', (n_gold, n_pred))
        return int(_count(m, ps, ru, rr, rv, pred_rel, n_roles, n_pred))
    # no pred nodes: only the (empty) pair-score part can match
    return 0


def exhaustive(pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    """Globally optimal mapping by enumerating every full injection of the
    smaller side; lexicographically first optimum wins (same as _match_py)."""
    from itertools import permutations

    cdef int n_gold = len(pair_score)
    if n_gold == 0 or n_pred == 0:
        return [-1] * n_gold, 0
    cdef array.array ru = array.array('i', rel_u)
    cdef array.array rr = array.array('i', rel_r)
    cdef array.array rv = array.array('i', rel_v)
    flat = array.array('i', [v for row in pair_score for v in row])
    cdef int[:, ::1] ps = memoryview(flat).cast('B').cast('i', (n_gold, n_pred))
    cdef array.array buf = array.array('i', [-1] * n_gold)
    cdef int[::1] mv = buf
    cdef long best = -1, score
    cdef int i, j
    best_map = [-1] * n_gold
    if n_gold <= n_pred:
        for image in permutations(range(n_pred), n_gold):
            for i in range(n_gold):
                mv[i] = image[i]
            score = _count(mv, ps, ru, rr, rv, pred_rel, n_roles, n_pred)
            if score > best:
                best = score
                best_map = list(buf)
    else:
        for image in permutations(range(n_gold), n_pred):
            for i in range(n_gold):
                mv[i] = -1
            for j in range(n_pred):
                mv[image[j]] = j
            score = _count(mv, ps, ru, rr, rv, pred_rel, n_roles, n_pred)
            if score > best:
                best = score
                best_map = list(buf)
    return best_map, int(best)


def climb(mapping, pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    cdef int n_gold = len(mapping)
    if n_gold == 0 or n_pred == 0:
        return list(mapping), 0
    cdef array.array m = array.array('i', mapping)
    cdef array.array ru = array.array('i', rel_u)
    cdef array.array rr = array.array('i', rel_r)
    cdef array.array rv = array.array('i', rel_v)
    flat = array.array('i', [v for row in pair_score for v in row])
    cdef int[:, ::1] ps = memoryview(flat).cast('B').cast('i', (n_gold, n_pred))
    cdef int[::1] mv = m
    cdef array.array own = array.array('i', [-1] * n_pred)
    cdef int[::1] owner = own
    cdef int i, j, other, old
    cdef int best_i, best_j, best_other
    cdef long score, trial, gain, best_gain
    for i in range(n_gold):
        if mv[i] >= 0:
            owner[mv[i]] = i
    score = _count(mv, ps, ru, rr, rv, pred_rel, n_roles, n_pred)
    while True:
        best_gain = 0
        best_i = -1
        best_j = -1
        best_other = -1
        for i in range(n_gold):
            old = mv[i]
            for j in range(-1, n_pred):
                if j == old:
                    continue
                other = owner[j] if j >= 0 else -1
                mv[i] = j
                if other >= 0:
                    mv[other] = old
                trial = _count(mv, ps, ru, rr, rv, pred_rel, n_roles, n_pred)
                mv[i] = old
                if other >= 0:
                    mv[other] = j
                gain = trial - score
                if gain > best_gain:
                    best_gain = gain
                    best_i = i
                    best_j = j
                    best_other = other
        if best_i < 0:
            return list(m), int(score)
        i = best_i
        j = best_j
        other = best_other
        old = mv[i]
        mv[i] = j
        if other >= 0:
            mv[other] = old
            if old >= 0:
                owner[old] = other
        elif old >= 0:
            owner[old] = -1
        if j >= 0:
            owner[j] = i
        score += best_gain
