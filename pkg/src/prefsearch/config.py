"""Dataclass configs and JSON config-file loading.

The run config file is JSON with sections {search, gateway, templates,
simulation, metrics}; every section and every field is optional and falls
back to the defaults below. The endpoint list may be overridden with the
PREFSEARCH_ENDPOINTS environment variable (a JSON array of endpoint
objects).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from pathlib import Path


@dataclass
class SearchConfig:
    """Knobs for the refinement tree search.

    exploration_c weights the UCT exploration bonus, gamma discounts
    backpropagated values, alpha blends the local win rate into the
    combined node score, n_max caps rollouts, and child_limit is the
    child count at which a node becomes eligible for pruning.
    """

    exploration_c: float = 1.414
    gamma: float = 0.5
    alpha: float = 0.5
    n_max: int = 16
    child_limit: int = 2
    seed: int = 0
    invert_local: bool = False
    checkpoint_interval: int = 4
    debug_matrix_dir: str | None = None

    def __post_init__(self):
        if self.exploration_c < 0:
            raise ValueError("exploration_c must be nonnegative")
        if not 0.0 <= self.gamma <= 1.0:
            raise ValueError("gamma must be in [0, 1]")
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError("alpha must be in [0, 1]")
        if self.n_max < 0:
            raise ValueError("n_max must be >= 0")
        if self.child_limit < 1:
            raise ValueError("child_limit must be >= 1")


@dataclass
class SamplingParams:
    model: str = "default"
    temperature: float = 0.8
    max_tokens: int = 2048
    top_logprobs: int = 5


@dataclass
class EndpointConfig:
    url: str
    role: str  # "generator" | "judge"
    max_in_flight: int = 4

    def __post_init__(self):
        if self.role not in ("generator", "judge"):
            raise ValueError(f"unknown endpoint role: {self.role!r}")
        if self.max_in_flight < 1:
            raise ValueError("max_in_flight must be >= 1")


@dataclass
class GatewayConfig:
    endpoints: list[EndpointConfig] = field(default_factory=list)
    retry_limit: int = 2
    health_check_interval: float = 30.0
    timeout: float = 120.0
    sampling: dict[str, SamplingParams] = field(
        default_factory=lambda: {
            "generator": SamplingParams(),
            "judge": SamplingParams(temperature=0.0, max_tokens=8),
        }
    )

    def __post_init__(self):
        if self.retry_limit < 0:
            raise ValueError("retry_limit must be >= 0")


@dataclass
class SimulationConfig:
    n: int = 10
    margin: float = 0.1
    delta: float = 0.05
    trials: int = 200
    t_grid: list[int] = field(default_factory=list)


@dataclass
class MetricsConfig:
    k_list: list[int] = field(default_factory=lambda: [1, 4, 16])
    symbolic_command: str | None = None


@dataclass
class RunConfig:
    search: SearchConfig = field(default_factory=SearchConfig)
    gateway: GatewayConfig = field(default_factory=GatewayConfig)
    templates_dir: str | None = None
    simulation: SimulationConfig = field(default_factory=SimulationConfig)
    metrics: MetricsConfig = field(default_factory=MetricsConfig)


def _endpoints_from(raw: list[dict]) -> list[EndpointConfig]:
    return [EndpointConfig(**ep) for ep in raw]


def load_config(path: str | Path | None) -> RunConfig:
    """Build a RunConfig from a JSON file (or pure defaults when path is None)."""
    data: dict = {}
    if path is not None:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError("config root must be a JSON object")

    search = SearchConfig(**data.get("search", {}))

    gw_raw = dict(data.get("gateway", {}))
    sampling_raw = gw_raw.pop("sampling", None)
    endpoints_raw = gw_raw.pop("endpoints", [])
    env_endpoints = os.environ.get("PREFSEARCH_ENDPOINTS")
    if env_endpoints:
        endpoints_raw = json.loads(env_endpoints)
    gateway = GatewayConfig(endpoints=_endpoints_from(endpoints_raw), **gw_raw)
    if sampling_raw:
        for role, params in sampling_raw.items():
            gateway.sampling[role] = SamplingParams(**params)

    templates_dir = data.get("templates", {}).get("dir")

    sim_raw = dict(data.get("simulation", {}))
    simulation = SimulationConfig(**sim_raw)

    met_raw = dict(data.get("metrics", {}))
    if "k" in met_raw:
        met_raw["k_list"] = list(met_raw.pop("k"))
    metrics = MetricsConfig(**met_raw)

    return RunConfig(
        search=search,
        gateway=gateway,
        templates_dir=templates_dir,
        simulation=simulation,
        metrics=metrics,
    )
