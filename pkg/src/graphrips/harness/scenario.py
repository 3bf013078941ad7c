"""Declarative run descriptions (YAML or JSON)."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import yaml

__all__ = ["Sampling", "ScalePolicy", "Scenario", "load_scenario"]

MODES = ("gh", "h")
POLICIES = ("window", "explicit")


@dataclass(frozen=True)
class Sampling:
    spacing: float | None = None
    noise: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class ScalePolicy:
    """``window`` picks scales inside the admissible window; ``explicit`` uses eps/beta as given."""

    policy: str = "window"
    safety: float = 0.9
    position: float = 0.5
    eps: float | None = None
    beta: float | None = None


@dataclass(frozen=True)
class Scenario:
    graph: str
    mode: str = "gh"
    sampling: Sampling = field(default_factory=Sampling)
    scale: ScalePolicy = field(default_factory=ScalePolicy)
    homology_dim: int = 2
    delta: float | None = None
    distortion_resolution: float | None = None
    point_budget: int = 5000
    closed: bool = False
    output_dir: str | None = None
    name: str = "scenario"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        sc = self.scale
        if sc.policy not in POLICIES:
            raise ValueError(f"scale policy must be one of {POLICIES}, got {sc.policy!r}")
        if not 0.0 <= sc.position <= 1.0:
            raise ValueError("scale position must lie in [0, 1]")
        if not 0.0 < sc.safety < 1.0:
            raise ValueError("scale safety must lie in (0, 1)")
        if sc.policy == "explicit":
            if sc.beta is None or not sc.beta > 0:
                raise ValueError("explicit policy needs a positive beta")
            if self.mode == "h" and (sc.eps is None or not sc.eps > 0):
                raise ValueError("explicit policy in mode h needs a positive eps")
        for name in ("eps", "beta"):
            v = getattr(sc, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")
        if self.homology_dim < 0:
            raise ValueError("homology_dim must be non-negative")
        sp = self.sampling
        if sp.spacing is not None and not sp.spacing > 0:
            raise ValueError("sampling spacing must be positive")
        if sp.noise < 0:
            raise ValueError("sampling noise must be non-negative")
        if sp.spacing is None and not (self.mode == "h" and sc.policy == "window"):
            raise ValueError("sampling spacing is required unless the embedded window plan sets it")

    def to_dict(self) -> dict:
        return asdict(self)

    def with_scales(self, eps: float | None, beta: float) -> "Scenario":
        return replace(self, scale=replace(self.scale, policy="explicit", eps=eps, beta=beta))

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> "Scenario":
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scenario keys: {sorted(unknown)}")
        if "graph" not in data:
            raise ValueError("scenario needs a 'graph' path")
        graph = Path(data["graph"])
        if base_dir is not None and not graph.is_absolute():
            graph = base_dir / graph
        data["graph"] = str(graph)
        data["sampling"] = Sampling(**(data.get("sampling") or {}))
        data["scale"] = ScalePolicy(**(data.get("scale") or {}))
        return cls(**data)


def load_scenario(path) -> Scenario:
    path = Path(path)
    text = path.read_text()
    if path.suffix.lower() == ".json":
        data = json.loads(text)
    else:
        data = yaml.safe_load(text)
    if not isinstance(data, dict):
        raise ValueError("scenario file must hold a mapping")
    return Scenario.from_dict(data, base_dir=path.parent)
