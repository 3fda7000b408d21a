"""Level-synchronous isomorph-free enumeration with checkpointing.

A SearchProblem builds objects level by level.  The engine expands every
frontier state, filters children through the problem's feasibility
logic, and keeps exactly one representative per isomorphism class and
level, deduplicated by canonical key.  Because the merge is a pure
key-indexed reduction, the per-level counters are independent of worker
count and of the order in which subtrees are processed, and a run can be
checkpointed at any level boundary and resumed bit-for-bit.
"""

from __future__ import annotations

import json
import os
import pickle
import tempfile
from concurrent.futures import ProcessPoolExecutor

CHECKPOINT_VERSION = 1


class SearchError(RuntimeError):
    pass


class CheckpointError(SearchError):
    pass


class SearchProblem:
    """Interface for a level-by-level enumeration problem.

    States at each level are opaque to the engine; the problem provides
    expansion, canonical keys for isomorph rejection, and (for
    checkpointing) a JSON-serializable encoding.
    """

    problem_id = "abstract"
    levels = 0

    def roots(self):
        """Iterable of level-1 states (feasible, not yet deduplicated)."""
        raise NotImplementedError

    def children(self, level: int, state):
        """Iterable of feasible level+1 states extending ``state``.

        Candidate generation should already be restricted to stabilizer
        orbit representatives where the problem supports it; the engine
        only guarantees class-level deduplication.
        """
        raise NotImplementedError

    def canonical_key(self, level: int, state) -> str:
        raise NotImplementedError

    def serialize_state(self, level: int, state):
        raise NotImplementedError

    def deserialize_state(self, level: int, blob):
        raise NotImplementedError


class SearchResult:
    __slots__ = ("counters", "solutions", "completed_levels")

    def __init__(self, counters, solutions, completed_levels):
        self.counters = counters
        self.solutions = solutions
        self.completed_levels = completed_levels


def _expand_chunk(problem_pickle, level, blobs):
    problem = pickle.loads(problem_pickle)
    # exact-identity dedup before the (expensive) canonical keys
    unique = {}
    for blob in blobs:
        state = problem.deserialize_state(level, blob)
        for child in problem.children(level, state):
            ser = problem.serialize_state(level + 1, child)
            unique[json.dumps(ser, sort_keys=True)] = (child, ser)
    out = []
    for child, ser in unique.values():
        key = problem.canonical_key(level + 1, child)
        out.append((key, ser))
    return out


def _merge(pairs, into: dict | None = None) -> dict:
    """Fold (key, blob) pairs into a dict keeping one representative per
    key; ties broken by serialized form so the result does not depend on
    arrival order.  Returns the dict (key -> (tie_string, blob))."""
    best = {} if into is None else into
    for key, blob in pairs:
        s = json.dumps(blob, sort_keys=True)
        old = best.get(key)
        if old is None or s < old[0]:
            best[key] = (s, blob)
    return best


def _merged_blobs(best: dict):
    return [best[k][1] for k in sorted(best)]


def _write_checkpoint(path, problem, level, counters, frontier_blobs):
    payload = {
        "version": CHECKPOINT_VERSION,
        "problem": problem.problem_id,
        "completed_level": level,
        "counters": {str(k): v for k, v in counters.items()},
        "frontier": frontier_blobs,
    }
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ckpt-")
    with os.fdopen(fd, "w") as fh:
        json.dump(payload, fh)
    os.replace(tmp, path)


def load_checkpoint(path, problem):
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(
            f"checkpoint version {payload.get('version')} != {CHECKPOINT_VERSION}"
        )
    if payload.get("problem") != problem.problem_id:
        raise CheckpointError(
            f"checkpoint is for problem {payload.get('problem')!r}, not {problem.problem_id!r}"
        )
    counters = {int(k): v for k, v in payload["counters"].items()}
    return payload["completed_level"], counters, payload["frontier"]


def run_backtrack(problem: SearchProblem, checkpoint_path=None, workers: int = 1,
                  stage_limit: int | None = None, chunk_size: int = 64,
                  progress=None) -> SearchResult:
    """Run the enumeration; returns per-level class counters and the final
    frontier as solutions.

    ``checkpoint_path``: if the file exists, resume from it; the file is
    rewritten at every completed level.  ``stage_limit`` stops after that
    many levels.
    """
    last = problem.levels if stage_limit is None else min(stage_limit, problem.levels)
    counters: dict[int, int] = {}
    if checkpoint_path and os.path.exists(checkpoint_path):
        level, counters, frontier_blobs = load_checkpoint(checkpoint_path, problem)
    else:
        level = 1
        pairs = []
        for state in problem.roots():
            pairs.append((problem.canonical_key(1, state), problem.serialize_state(1, state)))
        frontier_blobs = _merged_blobs(_merge(pairs))
        counters[1] = len(frontier_blobs)
        if checkpoint_path:
            _write_checkpoint(checkpoint_path, problem, 1, counters, frontier_blobs)
    if progress:
        progress(level, counters.get(level, len(frontier_blobs)))

    while level < last and frontier_blobs:
        # merge chunk by chunk so peak memory stays near the class count,
        # not the raw child count
        best: dict = {}
        pb = pickle.dumps(problem)
        chunks = [frontier_blobs[i : i + chunk_size] for i in range(0, len(frontier_blobs), chunk_size)]
        if workers <= 1:
            for ch in chunks:
                _merge(_expand_chunk(pb, level, ch), into=best)
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                for part in pool.map(_expand_chunk, [pb] * len(chunks), [level] * len(chunks), chunks):
                    _merge(part, into=best)
        frontier_blobs = _merged_blobs(best)
        level += 1
        counters[level] = len(frontier_blobs)
        if checkpoint_path:
            _write_checkpoint(checkpoint_path, problem, level, counters, frontier_blobs)
        if progress:
            progress(level, counters[level])

    solutions = [problem.deserialize_state(level, b) for b in frontier_blobs]
    return SearchResult(counters, solutions, level)


# ---------------------------------------------------------------------
# helpers used by the pipelines' problems


def stabilizer_orbit_candidates(raw_candidates, gens, act):
    """One representative (the minimal element) per orbit of the
    stabilizer generators on the candidate list; ``act(g, c)`` applies a
    generator.  The union of the returned orbits is the full list."""
    pool = set(raw_candidates)
    reps = []
    while pool:
        seed = min(pool)
        orbit = {seed}
        frontier = [seed]
        while frontier:
            c = frontier.pop()
            for g in gens:
                d = act(g, c)
                if d not in orbit:
                    orbit.add(d)
                    frontier.append(d)
        extra = orbit - pool
        if extra - set(raw_candidates):
            raise SearchError("stabilizer does not preserve the candidate list")
        reps.append(min(orbit))
        pool -= orbit
    return reps


def extension_filter_update(candidates, partial, predicate):
    """The shrunk candidate list {c : predicate(c, partial)}; an empty
    result means the branch can be pruned."""
    return [c for c in candidates if predicate(c, partial)]
