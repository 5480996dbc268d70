"""Exhaustive and random sweeps of k(G) <= dim H(G) + 1, written as TSV plus a JSON summary.

    python scripts/run_sweep.py --max-n 7 --workers 4 --out results/
"""

from __future__ import annotations

import argparse
import json
from dataclasses import asdict, dataclass
from pathlib import Path

from holedim.generate import exhaustive, random_graphs
from holedim.graph import to_graph6
from holedim.report import SCALAR_FIELDS, exit_code, sweep


@dataclass
class SweepConfig:
    max_n: int = 7
    min_n: int = 1
    triangle_free: bool = False
    random_n: tuple[int, ...] = (8, 9)
    random_p: float = 0.4
    random_count: int = 200
    seed: int = 1
    oracle_limit: int = 9
    time_budget: float = 60.0
    workers: int = 1
    out: str = "results"


def corpus(cfg: SweepConfig):
    for g in exhaustive(cfg.max_n, cfg.min_n, triangle_free=cfg.triangle_free):
        yield to_graph6(g), g
    for n in cfg.random_n:
        for i, g in enumerate(random_graphs(n, cfg.random_p, cfg.random_count, cfg.seed + n)):
            yield f"random-n{n}-{i}:{to_graph6(g)}", g


def main() -> int:
    cfg = SweepConfig()
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(cfg).items():
        flag = "--" + name.replace("_", "-")
        if isinstance(default, bool):
            ap.add_argument(flag, action="store_true")
        elif isinstance(default, tuple):
            ap.add_argument(flag, type=int, nargs="*", default=list(default))
        else:
            ap.add_argument(flag, type=type(default), default=default)
    cfg = SweepConfig(**{k: (tuple(v) if isinstance(v, list) else v) for k, v in vars(ap.parse_args()).items()})

    summary, reports = sweep(corpus(cfg), cfg.oracle_limit, cfg.time_budget, cfg.workers)
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "reports.tsv", "w") as fh:
        fh.write("\t".join(SCALAR_FIELDS) + "\n")
        fh.writelines(r.tsv_row() + "\n" for r in reports)
    (out / "summary.json").write_text(json.dumps({"config": asdict(cfg), **summary.to_json()}, indent=2) + "\n")

    c = summary.counts
    print(f"{summary.total} graphs in {summary.seconds:.1f}s: {c['holds']} hold, "
          f"{c['violated']} violated, {c['unknown']} unknown, {c['error']} errors")
    print("slack histogram:", summary.to_json()["slack_histogram"])
    if summary.violations:
        print("VIOLATIONS:", [v["id"] for v in summary.violations])
    return exit_code(summary)


if __name__ == "__main__":
    raise SystemExit(main())
