"""Minimum LP value over filtered configurations, with pruning and resume.

The stream of configurations is indexed lexicographically (rho-major, then
s) and cut into fixed-size chunks; chunks are independent work units that a
process pool may execute in any order.  Shared state is a monotone-
decreasing incumbent: a chunk receives the incumbent known at dispatch time,
prunes configurations whose traversal lower bound already exceeds it, and
reports back its own best.  Stale incumbents only weaken pruning, never
correctness, so the final minimum is independent of scheduling.

A configuration is solved unless its traversal bound is at least
incumbent + 1e-9; the slack keeps every near-tie of the eventual minimum
inside the solved set, which makes both the minimum and the reported argmin
(lexicographically smallest within 1e-10 of the minimum) reproducible
across thread counts.

Checkpoint files are append-only JSON lines: a problem-id header, then one
record per completed chunk.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass, field

from .configspace import (
    Configuration,
    FilterOptions,
    config_count_estimate,
    naive_upper_bound,
    rho_candidates,
    s_candidates,
    traversal_lower_bound,
)
from .geometry import make_polygon
from .lp import LpNumericError, build_lp, solve_certified

CHUNK_SIZE = 4096
PRUNE_SLACK = 1e-9     # solve anything within this of the incumbent
TIE_EPS = 1e-10        # argmin tie window
DEFAULT_BUDGET = 10 ** 9


class BudgetExceededError(RuntimeError):
    """Post-filter configuration count estimate exceeds the allowed budget."""


class CheckpointMismatchError(RuntimeError):
    """Existing checkpoint belongs to a different problem."""


class CheckpointParseError(RuntimeError):
    """Checkpoint file is corrupt."""


@dataclass
class BoundRecord:
    """Result of a configuration search: the certified filtered minimum."""

    n: int
    k: int
    w: float
    lower_value: float           # reporting value, clamped at 1
    raw_min: float               # unclamped LP minimum (diagnostic)
    argmin_config: Configuration | None
    solved_count: int
    pruned_count: int
    wall_time: float

    def same_bounds(self, other: "BoundRecord") -> bool:
        return (self.n, self.k, self.w) == (other.n, other.k, other.w) and \
            self.raw_min == other.raw_min and \
            self.argmin_config == other.argmin_config


@dataclass
class SearchCheckpoint:
    problem: dict
    completed: list              # sorted disjoint [lo, hi) pairs
    incumbent: float
    incumbent_config: Configuration | None
    solved_count: int = 0
    pruned_count: int = 0
    timestamp: float = field(default_factory=time.time)


def _problem_id(n: int, k: int, w: float, opts: FilterOptions) -> dict:
    return {
        "n": n, "k": k, "w": w,
        "filters": {
            "fix_first_vertex": opts.fix_first_vertex,
            "halve_second_vertex": opts.halve_second_vertex,
            "queen_consecutive_rule": opts.queen_consecutive_rule,
            "canonical_servant_labels": opts.canonical_servant_labels,
        },
    }


# per-process cache of candidate lists, reused across chunks
_SPACE_CACHE: dict = {}


def _space(n: int, k: int, opts: FilterOptions):
    key = (n, k, opts)
    if key not in _SPACE_CACHE:
        _SPACE_CACHE[key] = (list(rho_candidates(n, opts)), s_candidates(n, k, opts))
    return _SPACE_CACHE[key]


def _run_chunk(args):
    """Solve one index range; returns the chunk's best and near-ties.

    Runs inside worker processes; must stay import-safe and picklable.
    """
    (n, k, w, opts, presets, prune, lo, hi, incumbent) = args
    g = make_polygon(n)
    rhos, ss = _space(n, k, opts)
    S = len(ss)
    solved = pruned = 0
    best = math.inf
    cands: list = []
    for idx in range(lo, hi):
        rho = rhos[idx // S]
        s = ss[idx % S]
        c = Configuration(n, k, rho, s)
        if prune:
            bound = traversal_lower_bound(c, g)
            if bound >= min(incumbent, best) + PRUNE_SLACK:
                pruned += 1
                continue
        sol = solve_certified(build_lp(c, g, w, presets=presets,
                                       reduce_points=True))
        if sol.status != "optimal":
            raise LpNumericError(
                f"uncertified LP during search at {c.text()} (status {sol.status})")
        solved += 1
        v = sol.value
        if v < best - TIE_EPS:
            best = v
            cands = [(v, rho, s)]
        elif v <= best + TIE_EPS:
            cands.append((v, rho, s))
            best = min(best, v)
    cands = [t for t in cands if t[0] <= best + TIE_EPS]
    return (lo, hi, best, cands, solved, pruned)


def _merge_candidates(pool: list, new: list, best: float) -> list:
    pool.extend(new)
    return [t for t in pool if t[0] <= best + TIE_EPS]


def _pick_argmin(pool: list, best: float) -> tuple | None:
    ties = [(rho, s) for (v, rho, s) in pool if v <= best + TIE_EPS]
    return min(ties) if ties else None


class _CheckpointWriter:
    def __init__(self, path, problem):
        self.path = path
        exists = os.path.exists(path)
        if exists:
            header = _read_checkpoint_header(path)
            if header != problem:
                raise CheckpointMismatchError(
                    f"checkpoint at {path} is for {header}, not {problem}")
            self.fh = open(path, "a")
        else:
            self.fh = open(path, "w")
            self.fh.write(json.dumps(problem) + "\n")
            self.fh.flush()

    def record(self, lo, hi, incumbent, config, solved, pruned):
        line = {
            "chunk": [lo, hi],
            "incumbent": incumbent,
            "config": config.text() if config is not None else None,
            "solved": solved,
            "pruned": pruned,
        }
        self.fh.write(json.dumps(line) + "\n")
        self.fh.flush()

    def close(self):
        self.fh.close()


def _read_checkpoint_header(path) -> dict:
    with open(path) as fh:
        first = fh.readline()
    try:
        return json.loads(first)
    except json.JSONDecodeError as exc:
        raise CheckpointParseError(f"bad checkpoint header in {path}") from exc


def load_checkpoint(path) -> SearchCheckpoint:
    """Parse a checkpoint file into completed ranges plus the incumbent."""
    with open(path) as fh:
        lines = fh.read().splitlines()
    if not lines:
        raise CheckpointParseError(f"empty checkpoint {path}")
    try:
        problem = json.loads(lines[0])
        ranges = []
        inc = math.inf
        inc_cfg = None
        solved = pruned = 0
        for ln in lines[1:]:
            if not ln.strip():
                continue
            rec = json.loads(ln)
            lo, hi = rec["chunk"]
            ranges.append((int(lo), int(hi)))
            solved += int(rec.get("solved", 0))
            pruned += int(rec.get("pruned", 0))
            if rec["incumbent"] is not None and rec["incumbent"] <= inc:
                inc = float(rec["incumbent"])
                if rec.get("config"):
                    inc_cfg = Configuration.from_text(rec["config"])
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise CheckpointParseError(f"corrupt checkpoint {path}") from exc
    ranges.sort()
    return SearchCheckpoint(problem, ranges, inc, inc_cfg, solved, pruned)


def _uncovered(total: int, done: list) -> list:
    """Complement of the merged done-ranges inside [0, total)."""
    out = []
    cur = 0
    for lo, hi in sorted(done):
        if lo > cur:
            out.append((cur, lo))
        cur = max(cur, hi)
    if cur < total:
        out.append((cur, total))
    return out


def _resolve_threads(threads) -> int:
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("SOLVER_THREADS")
    return max(1, int(env)) if env else 1


def min_over_configs(n: int, k: int, w: float = 0.0,
                     opts: FilterOptions | None = None,
                     threads: int | None = None,
                     checkpoint_path=None,
                     budget: int = DEFAULT_BUDGET,
                     presets: bool = False,
                     prune: bool = True) -> BoundRecord:
    """Exact minimum of the configuration LP values after filtering.

    The incumbent starts at the naive sweep upper bound, which dominates the
    true minimum (for w > 0 the two-agent restriction makes the polygon
    sweep algorithm valid as well), so pruning never hides the minimum.
    Raises BudgetExceededError when the estimated stream size exceeds
    ``budget``; single-configuration verification is the intended fallback.
    """
    if n < 3 or k < 1:
        raise ValueError(f"need n >= 3 and k >= 1, got ({n}, {k})")
    if not 0.0 <= w <= 1.0 or (w > 0.0 and k != 1):
        raise ValueError(f"invalid weight w={w} for k={k}")
    opts = opts if opts is not None else FilterOptions()
    estimate = config_count_estimate(n, k, opts)
    if estimate > budget:
        raise BudgetExceededError(
            f"estimated {estimate:.3g} configurations for (n={n}, k={k}) "
            f"exceeds budget {budget:.3g}; raise --budget or verify a single "
            f"configuration instead")
    resume_from = None
    if checkpoint_path is not None and os.path.exists(checkpoint_path):
        resume_from = load_checkpoint(checkpoint_path)
        if resume_from.problem != _problem_id(n, k, w, opts):
            raise CheckpointMismatchError(
                f"checkpoint at {checkpoint_path} is for "
                f"{resume_from.problem}, not (n={n}, k={k}, w={w})")
    return _search(n, k, w, opts, _resolve_threads(threads), checkpoint_path,
                   presets, prune, resume_from=resume_from)


def resume(checkpoint_path, threads: int | None = None,
           presets: bool = False, prune: bool = True,
           expect: dict | None = None) -> BoundRecord:
    """Continue a checkpointed search; completed chunks are not re-solved.

    ``expect`` (optional problem id as produced by the header) guards
    against resuming the wrong file.
    """
    ck = load_checkpoint(checkpoint_path)
    prob = ck.problem
    if expect is not None and expect != prob:
        raise CheckpointMismatchError(
            f"checkpoint {checkpoint_path} is for {prob}, expected {expect}")
    try:
        n, k, w = int(prob["n"]), int(prob["k"]), float(prob["w"])
        opts = FilterOptions(**prob["filters"])
    except (KeyError, TypeError) as exc:
        raise CheckpointParseError(f"bad problem header in {checkpoint_path}") from exc
    return _search(n, k, w, opts, _resolve_threads(threads), checkpoint_path,
                   presets, prune, resume_from=ck)


def _search(n, k, w, opts, threads, checkpoint_path, presets, prune,
            resume_from) -> BoundRecord:
    t0 = time.time()
    g = make_polygon(n)
    rhos, ss = _space(n, k, opts)
    total = len(rhos) * len(ss)
    problem = _problem_id(n, k, w, opts)

    incumbent = naive_upper_bound(n, k, g)
    pool: list = []
    solved = pruned = 0
    done: list = []
    if resume_from is not None:
        done = resume_from.completed
        solved = resume_from.solved_count
        pruned = resume_from.pruned_count
        if resume_from.incumbent < incumbent:
            incumbent = resume_from.incumbent
            if resume_from.incumbent_config is not None:
                cfg = resume_from.incumbent_config
                pool = [(incumbent, cfg.rho, cfg.s)]

    todo = _uncovered(total, done)
    chunks = []
    for lo, hi in todo:
        for start in range(lo, hi, CHUNK_SIZE):
            chunks.append((start, min(start + CHUNK_SIZE, hi)))

    writer = None
    if checkpoint_path is not None:
        writer = _CheckpointWriter(checkpoint_path, problem)

    def absorb(result):
        nonlocal incumbent, solved, pruned, pool
        lo, hi, best, cands, ns, np_ = result
        solved += ns
        pruned += np_
        incumbent = min(incumbent, best)
        pool = _merge_candidates(pool, cands, incumbent)
        if writer is not None:
            arg = _pick_argmin(pool, incumbent)
            cfg = Configuration(n, k, *arg) if arg else None
            writer.record(lo, hi, incumbent if pool else None, cfg, ns, np_)

    try:
        if threads <= 1 or len(chunks) <= 1:
            for lo, hi in chunks:
                absorb(_run_chunk((n, k, w, opts, presets, prune, lo, hi, incumbent)))
        else:
            with ProcessPoolExecutor(max_workers=threads) as ex:
                pending = set()
                it = iter(chunks)
                def submit_next():
                    try:
                        lo, hi = next(it)
                    except StopIteration:
                        return False
                    pending.add(ex.submit(
                        _run_chunk, (n, k, w, opts, presets, prune, lo, hi, incumbent)))
                    return True
                for _ in range(2 * threads):
                    if not submit_next():
                        break
                while pending:
                    finished, pending = wait(pending, return_when=FIRST_COMPLETED)
                    for fut in finished:
                        absorb(fut.result())
                        submit_next()
    finally:
        if writer is not None:
            writer.close()

    arg = _pick_argmin(pool, incumbent)
    if arg is None:
        raise RuntimeError(
            f"search for (n={n}, k={k}, w={w}) ended with no solved candidate; "
            f"incumbent stayed at the naive bound {incumbent}")
    raw_min = min(v for (v, _rho, _s) in pool)
    argmin = Configuration(n, k, *arg)
    return BoundRecord(
        n=n, k=k, w=w,
        lower_value=max(raw_min, 1.0),
        raw_min=raw_min,
        argmin_config=argmin,
        solved_count=solved,
        pruned_count=pruned,
        wall_time=time.time() - t0,
    )


def w_sweep(n: int, w_start: float, w_end: float, w_step: float,
            opts: FilterOptions | None = None,
            threads: int | None = None,
            budget: int = DEFAULT_BUDGET,
            presets: bool = False) -> list:
    """One BoundRecord per grid point w_start, w_start + w_step, ... <= w_end."""
    if not (0.0 <= w_start <= w_end <= 1.0) or w_step <= 0:
        raise ValueError("need 0 <= w_start <= w_end <= 1 and w_step > 0")
    out = []
    wv = w_start
    m = 0
    while wv <= w_end + 1e-12:
        out.append(min_over_configs(n, 1, min(wv, 1.0), opts=opts,
                                    threads=threads, budget=budget,
                                    presets=presets))
        m += 1
        wv = w_start + m * w_step
    return out
