import pytest

from sdcodes.backtrack import (CheckpointError, SearchProblem, load_checkpoint,
                               run_backtrack, stabilizer_orbit_candidates)


class SubsetSums(SearchProblem):
    """Toy problem: multisets of values from a fixed pool, canonical key =
    sorted tuple, so classes at level k are the k-element multisets."""

    problem_id = "toy-multisets"
    levels = 4
    pool = (1, 2, 3)

    def roots(self):
        return [(v,) for v in self.pool]

    def children(self, level, state):
        return [state + (v,) for v in self.pool]

    def canonical_key(self, level, state):
        return str(sorted(state))

    def serialize_state(self, level, state):
        return list(state)

    def deserialize_state(self, level, blob):
        return tuple(blob)


def _expected(k):
    # multisets of size k from 3 values: C(k+2, 2)
    return (k + 2) * (k + 1) // 2


def test_counters_match_closed_form():
    res = run_backtrack(SubsetSums())
    assert res.counters == {k: _expected(k) for k in range(1, 5)}
    assert res.completed_levels == 4
    assert len(res.solutions) == _expected(4)


def test_stage_limit():
    res = run_backtrack(SubsetSums(), stage_limit=2)
    assert res.completed_levels == 2
    assert len(res.solutions) == _expected(2)


def test_checkpoint_resume_identical(tmp_path):
    ck = tmp_path / "ck.json"
    partial = run_backtrack(SubsetSums(), checkpoint_path=str(ck), stage_limit=2)
    resumed = run_backtrack(SubsetSums(), checkpoint_path=str(ck))
    full = run_backtrack(SubsetSums())
    assert resumed.counters == full.counters
    assert sorted(map(tuple, resumed.solutions)) == sorted(map(tuple, full.solutions))
    assert partial.counters[2] == full.counters[2]


def test_checkpoint_problem_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    run_backtrack(SubsetSums(), checkpoint_path=str(ck), stage_limit=1)

    class Other(SubsetSums):
        problem_id = "different"

    with pytest.raises(CheckpointError):
        load_checkpoint(str(ck), Other())


def test_worker_independence():
    one = run_backtrack(SubsetSums(), workers=1)
    two = run_backtrack(SubsetSums(), workers=2, chunk_size=2)
    assert one.counters == two.counters
    assert sorted(map(tuple, one.solutions)) == sorted(map(tuple, two.solutions))


def test_stabilizer_orbit_candidates():
    cands = list(range(8))
    gens = [lambda c: c ^ 1]  # pair up 2i, 2i+1
    reps = stabilizer_orbit_candidates(cands, gens, lambda g, c: g(c))
    assert reps == [0, 2, 4, 6]
