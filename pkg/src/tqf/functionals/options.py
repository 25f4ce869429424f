"""Shared option bundle for the optimizers and the level-n search."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from typing import Optional


@dataclass
class Options:
    tol: float = 1e-8
    max_iters: int = 10_000
    restarts: int = 8
    seed: int = 0
    level_n: int = 4
    order: Optional[list] = None  # bipartition labels, written-product order

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "Options":
        obj = json.loads(text)
        known = {f.name for f in fields(cls)}
        extra = set(obj) - known
        if extra:
            raise ValueError(f"unknown option(s): {sorted(extra)}")
        return cls(**obj)

    @classmethod
    def coerce(cls, opts) -> "Options":
        if opts is None:
            return cls()
        if isinstance(opts, cls):
            return opts
        if isinstance(opts, dict):
            return cls(**opts)
        raise TypeError(f"cannot build options from {type(opts).__name__}")
