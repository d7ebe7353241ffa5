"""
Experiment sweeps over generated lot-sizing instances.

A sweep runs branch-and-cut for every (n, f, c, seed, mode, preset) task and
stores each report in the result store, so interrupted sweeps resume where
they stopped.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

from tqdm import tqdm

from .config import (
    EXPERIMENT_C,
    EXPERIMENT_F,
    EXPERIMENT_N,
    EXPERIMENT_SEEDS,
    JOBS,
    NODE_LIMIT,
    PATH_PRESETS,
    SHOW_PROGRESS,
    TIME_LIMIT,
)
from .exceptions import PathCutsError
from .instance import generate_lotsizing
from .solve import SolverConfig, branch_and_cut

LAST_SWEEP = "last_sweep"


@dataclass
class ExperimentConfig:
    n: list = field(default_factory=lambda: list(EXPERIMENT_N))
    f: list = field(default_factory=lambda: list(EXPERIMENT_F))
    c: list = field(default_factory=lambda: list(EXPERIMENT_C))
    seeds: int = EXPERIMENT_SEEDS
    modes: list = field(default_factory=lambda: ["spi", "mspi"])
    presets: list = field(default_factory=lambda: ["half"])
    time_limit: float = TIME_LIMIT
    node_limit: int = NODE_LIMIT
    jobs: int = JOBS
    show_progress: bool = SHOW_PROGRESS

    def tasks(self):
        """Task keys (n, f, c, seed, mode, preset) in cell-then-seed order."""
        return [
            (n, f, c, seed, mode, preset)
            for n in self.n
            for f in self.f
            for c in self.c
            for mode in self.modes
            for preset in self.presets
            for seed in range(1, self.seeds + 1)
        ]


def solver_config(mode, preset, time_limit, node_limit):
    """SolverConfig for a cut mode and a path-size preset."""
    kind, value = PATH_PRESETS[preset]
    cfg = SolverConfig(mode=mode, time_limit=time_limit, node_limit=node_limit, show_progress=False)
    if kind == "abs":
        cfg.max_path_len = int(value)
    else:
        cfg.max_path_frac = float(value)
    return cfg


def run_task(key, time_limit, node_limit):
    """Generate and solve one task; returns (key, report dict, error message)."""
    n, f, c, seed, mode, preset = key
    try:
        inst = generate_lotsizing(n, f, c, seed)
        report = branch_and_cut(inst, solver_config(mode, preset, time_limit, node_limit))
        return key, report.to_dict(), None
    except PathCutsError as e:
        return key, {}, f"{type(e).__name__}: {e}"


def run_experiment(cfg, store, fresh=False):
    """
    Run every task not yet stored (all tasks with fresh=True).

    Per-task failures are stored with their message and the sweep continues.
    The sweep settings and counts are recorded in the store metadata (see last_sweep).

    Returns:
        tuple: (tasks run, tasks skipped, tasks failed)
    """
    tasks = cfg.tasks()
    pending = tasks if fresh else [key for key in tasks if not store.has_run(key)]
    skipped = len(tasks) - len(pending)
    failed = 0

    with tqdm(total=len(pending), desc="🧪 Experiment", unit="run", disable=not cfg.show_progress) as bar:
        if cfg.jobs > 1 and len(pending) > 1:
            with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
                outcomes = pool.map(run_task, pending, [cfg.time_limit] * len(pending), [cfg.node_limit] * len(pending))
                for key, report, error in outcomes:
                    store.save_run(key, report, error)
                    failed += error is not None
                    bar.update(1)
        else:
            for key in pending:
                bar.set_postfix_str(f"n={key[0]} f={key[1]} c={key[2]} seed={key[3]} {key[4]}/{key[5]}")
                key, report, error = run_task(key, cfg.time_limit, cfg.node_limit)
                store.save_run(key, report, error)
                failed += error is not None
                bar.update(1)
    store.set_metadata(LAST_SWEEP, json.dumps({
        "n": cfg.n, "f": cfg.f, "c": cfg.c, "seeds": cfg.seeds, "modes": cfg.modes, "presets": cfg.presets,
        "time_limit": cfg.time_limit, "node_limit": cfg.node_limit,
        "run": len(pending), "skipped": skipped, "failed": failed,
        "finished_at": datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S"),
    }))
    return len(pending), skipped, failed


def last_sweep(store):
    """Settings and counts of the most recent sweep, or None if nothing was swept yet."""
    raw = store.get_metadata(LAST_SWEEP)
    return json.loads(raw) if raw else None


def stored_runs(cfg, store):
    """Stored runs belonging to the configured tasks, in task order."""
    wanted = set(cfg.tasks())
    return [run for run in store.get_runs()
            if (run["n"], run["f"], run["c"], run["seed"], run["mode"], run["preset"]) in wanted]
