"""Backend equivalence: the compiled kernel must be move-for-move identical
to the pure-Python one."""

import random

import pytest

from pegkit.evaluate import _match_py

cy = pytest.importorskip("pegkit.evaluate._match_cy",
                         reason="compiled kernel not built")


def _problem(rng: random.Random):
    n_gold = rng.randint(0, 7)
    n_pred = rng.randint(0, 7)
    n_roles = rng.randint(1, 4)
    pair_score = [[rng.randint(0, 2) for _ in range(n_pred)] for _ in range(n_gold)]
    n_rel = rng.randint(0, 10) if n_gold else 0
    rel_u = [rng.randrange(n_gold) for _ in range(n_rel)]
    rel_r = [rng.randrange(n_roles) for _ in range(n_rel)]
    rel_v = [rng.randrange(n_gold) for _ in range(n_rel)]
    pred_rel = {rng.randrange(max(1, (n_pred * n_roles + n_roles) * n_pred + n_pred))
                for _ in range(rng.randint(0, 12))}
    start = list(range(min(n_gold, n_pred))) + [-1] * max(0, n_gold - n_pred)
    rng.shuffle(start)
    return start, pair_score, rel_u, rel_r, rel_v, pred_rel, n_roles, n_pred


def test_backend_names():
    assert _match_py.BACKEND == "python"
    assert cy.BACKEND == "cython"


@pytest.mark.parametrize("seed", range(60))
def test_count_matches_identical(seed):
    args = _problem(random.Random(seed))
    assert cy.count_matches(*args) == _match_py.count_matches(*args)


@pytest.mark.parametrize("seed", range(60))
def test_climb_identical(seed):
    args = _problem(random.Random(seed))
    py_map, py_score = _match_py.climb(*args)
    cy_map, cy_score = cy.climb(*args)
    assert (py_map, py_score) == (list(cy_map), cy_score)


@pytest.mark.parametrize("seed", range(40))
def test_exhaustive_identical(seed):
    rng = random.Random(seed)
    args = _problem(rng)
    while len(args[0]) > 6 or args[-1] > 6:  # keep enumeration small
        args = _problem(rng)
    py_map, py_score = _match_py.exhaustive(*args[1:])
    cy_map, cy_score = cy.exhaustive(*args[1:])
    assert (py_map, py_score) == (list(cy_map), cy_score)
    # the exact optimum is never worse than any climb
    assert py_score >= _match_py.climb(*args)[1]


def test_selected_backend_exposed():
    from pegkit.evaluate import KERNEL_BACKEND
    assert KERNEL_BACKEND in ("python", "cython")
