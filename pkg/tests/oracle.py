"""Exhaustive alignment oracle, independent of the hill-climbing search.

Enumerates every injective node map (smaller side into larger; matched
counts are symmetric) and returns the maximum matched-triple count.
Only usable on small graphs; guarded against accidental blowups.
"""

from itertools import permutations

from pegkit.evaluate.smatch import TripleSet

MAX_NODES = 9


def oracle_matched(gold: TripleSet, pred: TripleSet) -> int:
    a, b = (pred, gold) if len(gold.nodes) > len(pred.nodes) else (gold, pred)
    if not a.nodes:
        return 0
    if len(a.nodes) > MAX_NODES or len(b.nodes) > MAX_NODES:
        raise ValueError("oracle restricted to small graphs")

    b_index = {n: i for i, n in enumerate(b.nodes)}
    # pair_score[i][j]: matched instance + surface triples if a-node i maps
    # to b-node j
    pair_score = [
        [
            (a.instance.get(u) is not None and a.instance.get(u) == b.instance.get(v))
            + (a.surface.get(u) is not None and a.surface.get(u) == b.surface.get(v))
            for v in b.nodes
        ]
        for u in a.nodes
    ]
    a_index = {n: i for i, n in enumerate(a.nodes)}
    a_relations = [(a_index[u], r, a_index[v]) for u, r, v in a.relations]
    b_relations = {(b_index[u], r, b_index[v]) for u, r, v in b.relations}

    n = len(a.nodes)
    best = 0
    for image in permutations(range(len(b.nodes)), n):
        total = 0
        for i in range(n):
            total += pair_score[i][image[i]]
        for u, r, v in a_relations:
            if (image[u], r, image[v]) in b_relations:
                total += 1
        if total > best:
            best = total
    return best


def oracle_f1(gold: TripleSet, pred: TripleSet) -> float:
    if gold.size == 0 and pred.size == 0:
        return 1.0
    if gold.size == 0 or pred.size == 0:
        return 0.0
    matched = oracle_matched(gold, pred)
    p = matched / pred.size
    r = matched / gold.size
    return 2 * p * r / (p + r) if p + r else 0.0
