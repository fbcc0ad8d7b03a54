"""Run reports: the JSON-serialisable output bundle of every solver."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any

from .geometry import PointSet

SCHEMA_VERSION = 1


@dataclass
class RunReport:
    algorithm: str
    instance: dict[str, Any]
    order: list[int]
    legs: list[list[int]]
    cost: float
    mst_weight: float
    opt: float | None = None
    revisited: list[bool] | None = None
    contributions: dict[str, Any] | None = None
    wall_time: float = 0.0
    schema_version: int = SCHEMA_VERSION
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def ratio_vs_mst(self) -> float | None:
        return self.cost / self.mst_weight if self.mst_weight > 0 else None

    @property
    def ratio_vs_opt(self) -> float | None:
        if self.opt is None or self.opt <= 0:
            return None
        return self.cost / self.opt

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["ratio_vs_mst"] = self.ratio_vs_mst
        d["ratio_vs_opt"] = self.ratio_vs_opt
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RunReport":
        d = dict(d)
        d.pop("ratio_vs_mst", None)
        d.pop("ratio_vs_opt", None)
        return cls(**d)


def rescore(report: RunReport, points: PointSet) -> float:
    """Recompute the cost of the closed walk recorded in ``report``."""
    alpha = report.instance.get("alpha", points.alpha)
    return points.cycle_cost(report.order, alpha)


def same_cost(a: float, b: float, rel: float = 1e-9) -> bool:
    return math.isclose(a, b, rel_tol=rel, abs_tol=1e-12)
