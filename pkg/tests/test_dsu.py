import random
import time

import pytest

from cutsparse import ForestDsu, LinkedListDsu

BACKENDS = [ForestDsu, LinkedListDsu]


def naive_partition(n: int, unions: list[tuple[int, int]]) -> list[int]:
    """Label propagation until fixpoint; the independent partition oracle."""
    labels = list(range(n))
    changed = True
    while changed:
        changed = False
        for a, b in unions:
            la, lb = labels[a], labels[b]
            if la != lb:
                lo = min(la, lb)
                for i, l in enumerate(labels):
                    if l == la or l == lb:
                        labels[i] = lo
                changed = True
    return labels


def partition_of(dsu, elements) -> dict[int, set[int]]:
    groups: dict[int, set[int]] = {}
    for x in elements:
        groups.setdefault(dsu.find(x), set()).add(x)
    return groups


@pytest.mark.parametrize("backend", BACKENDS)
class TestBasics:
    def test_fresh_singletons_are_distinct(self, backend):
        dsu = backend()
        dsu.make_set(1)
        dsu.make_set(2)
        assert dsu.find(1) != dsu.find(2)

    def test_union_connects(self, backend):
        dsu = backend()
        dsu.make_set(1)
        dsu.make_set(2)
        dsu.union(1, 2)
        assert dsu.find(1) == dsu.find(2)

    def test_uncreated_element_raises(self, backend):
        dsu = backend()
        with pytest.raises(KeyError):
            dsu.find(0)
        dsu.make_set(0)
        with pytest.raises(KeyError):
            dsu.union(0, 1)

    def test_duplicate_make_set_raises(self, backend):
        dsu = backend()
        dsu.make_set(3)
        with pytest.raises(ValueError):
            dsu.make_set(3)

    def test_equivalence_laws(self, backend):
        rng = random.Random(11)
        dsu = backend()
        elements = list(range(40))
        for x in elements:
            dsu.make_set(x)
        for _ in range(60):
            dsu.union(rng.choice(elements), rng.choice(elements))
        for x in elements:
            assert dsu.find(x) == dsu.find(x)  # reflexive / stable
        for _ in range(100):
            a, b = rng.choice(elements), rng.choice(elements)
            assert (dsu.find(a) == dsu.find(b)) == (dsu.find(b) == dsu.find(a))
        # transitivity via the partition itself
        groups = partition_of(dsu, elements)
        assert sum(len(g) for g in groups.values()) == len(elements)


@pytest.mark.parametrize("backend", BACKENDS)
def test_random_script_matches_label_propagation(backend):
    rng = random.Random(123)
    n = 200
    unions = [(rng.randrange(n), rng.randrange(n)) for _ in range(150)]
    dsu = backend()
    for x in range(n):
        dsu.make_set(x)
    for a, b in unions:
        dsu.union(a, b)
    oracle = naive_partition(n, unions)
    for a in range(n):
        for b in range(a + 1, a + 5):
            if b < n:
                assert (dsu.find(a) == dsu.find(b)) == (oracle[a] == oracle[b])


def test_backends_agree_on_identical_scripts():
    rng = random.Random(77)
    n = 120
    script = [(rng.randrange(n), rng.randrange(n)) for _ in range(200)]
    forest = ForestDsu()
    linked = LinkedListDsu()
    for x in range(n):
        forest.make_set(x)
        linked.make_set(x)
    for a, b in script:
        forest.union(a, b)
        linked.union(a, b)
        assert (forest.find(a) == forest.find(b)) and (linked.find(a) == linked.find(b))
    pf = partition_of(forest, range(n))
    pl = partition_of(linked, range(n))
    assert sorted(map(sorted, pf.values())) == sorted(map(sorted, pl.values()))


@pytest.mark.parametrize("backend", BACKENDS)
def test_mixed_operation_smoke_budget(backend):
    # regression guard, not an asymptotic claim: 10^6 mixed ops in bounded time
    n = 100_000
    dsu = backend()
    t0 = time.perf_counter()
    for x in range(n):
        dsu.make_set(x)
    rng = random.Random(5)
    for _ in range(450_000):
        dsu.union(rng.randrange(n), rng.randrange(n))
    for _ in range(450_000):
        dsu.find(rng.randrange(n))
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"10^6 mixed operations took {elapsed:.1f}s"
