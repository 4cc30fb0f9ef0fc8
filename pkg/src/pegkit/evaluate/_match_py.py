"""Pure-Python alignment kernel.

Same contract as the Cython build (_match_cy): count matched triples under
a node mapping, and run one best-improvement local search to convergence.
Kept move-for-move identical so both backends return identical alignments.
"""

from __future__ import annotations

BACKEND = "python"


def count_matches(mapping, pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    """Matched triple count for a gold->pred node mapping (-1 = unmapped).

    pair_score[i][j] counts matched instance+surface triples for the node
    pair; relation triples are matched against the pred_rel key set, with
    keys (u * n_roles + r) * n_pred + v.
    """
    total = 0
    for i, j in enumerate(mapping):
        if j >= 0:
            total += pair_score[i][j]
    for k in range(len(rel_u)):
        mu = mapping[rel_u[k]]
        mv = mapping[rel_v[k]]
        if mu >= 0 and mv >= 0:
            if (mu * n_roles + rel_r[k]) * n_pred + mv in pred_rel:
                total += 1
    return total


def exhaustive(pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    """Globally optimal mapping by enumerating every full injection of the
    smaller side. Deterministic: the lexicographically first optimum wins.

    Only called for small search spaces; extending a partial map never
    loses matches, so full injections suffice.
    """
    from itertools import permutations

    n_gold = len(pair_score)
    if n_gold == 0 or n_pred == 0:
        return [-1] * n_gold, 0
    best_map = [-1] * n_gold
    best = -1
    if n_gold <= n_pred:
        for image in permutations(range(n_pred), n_gold):
            mapping = list(image)
            score = count_matches(mapping, pair_score, rel_u, rel_r, rel_v,
                                  pred_rel, n_roles, n_pred)
            if score > best:
                best, best_map = score, mapping
    else:
        for image in permutations(range(n_gold), n_pred):
            mapping = [-1] * n_gold
            for j, i in enumerate(image):
                mapping[i] = j
            score = count_matches(mapping, pair_score, rel_u, rel_r, rel_v,
                                  pred_rel, n_roles, n_pred)
            if score > best:
                best, best_map = score, mapping
    return best_map, best


def climb(mapping, pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred):
    """Best-improvement hill climbing from a start mapping.

    Moves: reassign one gold node to a free pred node (or unmap it), or
    swap the images of two gold nodes. Deterministic: the first move with
    the largest gain wins each round.
    """
    mapping = list(mapping)
    n_gold = len(mapping)
    owner = [-1] * n_pred
    for i, j in enumerate(mapping):
        if j >= 0:
            owner[j] = i
    score = count_matches(mapping, pair_score, rel_u, rel_r, rel_v,
                          pred_rel, n_roles, n_pred)
    while True:
        best_gain = 0
        best_move = None
        for i in range(n_gold):
            old = mapping[i]
            for j in range(-1, n_pred):
                if j == old:
                    continue
                other = owner[j] if j >= 0 else -1
                mapping[i] = j
                if other >= 0:
                    mapping[other] = old
                trial = count_matches(mapping, pair_score, rel_u, rel_r, rel_v,
                                      pred_rel, n_roles, n_pred)
                mapping[i] = old
                if other >= 0:
                    mapping[other] = j
                gain = trial - score
                if gain > best_gain:
                    best_gain = gain
                    best_move = (i, j, other)
        if best_move is None:
            return mapping, score
        i, j, other = best_move
        old = mapping[i]
        mapping[i] = j
        if other >= 0:
            mapping[other] = old
            if old >= 0:
                owner[old] = other
        elif old >= 0:
            owner[old] = -1
        if j >= 0:
            owner[j] = i
        score += best_gain
