"""Value types are frozen and the numeric engine is reentrant."""

import dataclasses
from concurrent.futures import ThreadPoolExecutor

import pytest

from ncdr import maps
from ncdr.algebra import QUATERNIONS
from ncdr.gateaux import gateaux
from ncdr.linmap import StdComponents
from ncdr.verify import run_check

H = QUATERNIONS


def test_value_types_reject_mutation():
    with pytest.raises(dataclasses.FrozenInstanceError):
        H.basis(1).coords = (1, 2, 3, 4)
    with pytest.raises(dataclasses.FrozenInstanceError):
        H.name = "other"
    with pytest.raises(dataclasses.FrozenInstanceError):
        StdComponents.identity(H).comps = ()


def test_parallel_evaluation_is_consistent():
    f = maps.square(H)
    x = H.element([1, 2, -1, 3])
    a = H.basis(1)
    with ThreadPoolExecutor(max_workers=4) as pool:
        results = list(pool.map(lambda _: gateaux(f, x, a), range(16)))
    assert all(r == results[0] for r in results)


def test_checks_reentrant_across_threads():
    names = ["05-derivative-table", "08-matrix-embedding"]
    with ThreadPoolExecutor(max_workers=2) as pool:
        parallel = list(pool.map(lambda n: run_check(n, seed=11), names))
    serial = [run_check(n, seed=11) for n in names]
    assert [(r.name, r.passed, r.detail) for r in parallel] == [
        (r.name, r.passed, r.detail) for r in serial
    ]
