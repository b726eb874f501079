"""
Shared configuration for ramsey-forge
"""
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

from ramsey_forge.errors import ConfigError

DEFAULTS_PATH = Path(__file__).with_name("defaults.yaml")
CAP_ENV_VAR = "RAMSEY_FORGE_CAP"

OUTPUT_MODES = ("json", "table")


def load_defaults(path: Path = DEFAULTS_PATH) -> Dict[str, Any]:
    with open(path, "r") as f:
        return yaml.safe_load(f) or {}


@dataclass
class RunConfig:
    # Run configuration
    seed: int = 42
    workers: int = 1
    output: str = "json"
    artifacts_dir: Optional[str] = None

    # Search budgets, counted in search-tree nodes
    node_budget: int = 2_000_000
    split_depth: int = 2

    # Caps on exhaustive sweeps
    coloring_cap: int = 1 << 20
    oracle_cap: int = 4096
    fragment_set_cap: int = 4096

    def __post_init__(self):
        override = os.getenv(CAP_ENV_VAR)
        if override:
            try:
                cap = int(override)
            except ValueError:
                raise ConfigError(f"{CAP_ENV_VAR} must be an integer, got {override!r}")
            self.coloring_cap = cap
            self.oracle_cap = cap
        self.validate()

    def validate(self):
        for name in ("workers", "node_budget", "coloring_cap", "oracle_cap", "fragment_set_cap"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.split_depth < 0:
            raise ConfigError(f"split_depth must be non-negative, got {self.split_depth}")
        if self.output not in OUTPUT_MODES:
            raise ConfigError(f"output must be one of {OUTPUT_MODES}, got {self.output!r}")


def get_default_config(path: Path = DEFAULTS_PATH) -> RunConfig:
    raw = load_defaults(path)
    run = raw.get("run", {})
    search = raw.get("search", {})
    caps = raw.get("caps", {})
    return RunConfig(
        seed=run.get("seed", 42),
        workers=run.get("workers", 1),
        output=run.get("output", "json"),
        artifacts_dir=run.get("artifacts_dir"),
        node_budget=search.get("node_budget", 2_000_000),
        split_depth=search.get("split_depth", 2),
        coloring_cap=caps.get("coloring_cap", 1 << 20),
        oracle_cap=caps.get("oracle_cap", 4096),
        fragment_set_cap=caps.get("fragment_set_cap", 4096),
    )


# Acceptance criteria run by `ramsey_forge.run acceptance`
CRITERIA = {
    1: {
        "name": "Enumeration counts",
        "metric": "count_mismatches",
        "description": "Tree, binary-tree and partition counts against Catalan and Stirling numbers",
    },
    2: {
        "name": "Order agreement",
        "metric": "order_mismatches",
        "description": "Preorder comparison against the case-based lexicographic order",
    },
    3: {
        "name": "Rigid surjections on paths",
        "metric": "count_mismatches",
        "description": "Path counts and the partition correspondence",
    },
    4: {
        "name": "Galois laws",
        "metric": "law_violations",
        "description": "Adjoint existence, uniqueness and Galois verification",
    },
    5: {
        "name": "Tree instance axioms",
        "metric": "axiom_failures",
        "description": "Composition-space and Ramsey-domain axioms on the tree fragment",
    },
    6: {
        "name": "Pigeonhole implies Ramsey",
        "metric": "counterexamples",
        "description": "Every P with the local pigeonhole principle at all fibers satisfies (R)",
    },
    7: {
        "name": "Witness engine vs oracle",
        "metric": "disagreements",
        "description": "Search engine agrees with naive coloring enumeration",
    },
    8: {
        "name": "Convex sweep",
        "metric": "solver_disagreements",
        "description": "Simplex and Fourier-Motzkin agree on every coloring",
    },
    9: {
        "name": "Full sets",
        "metric": "disagreements",
        "description": "Fullness search against the definition and fixed-instance sweeps",
    },
    10: {
        "name": "Determinism",
        "metric": "differing_outputs",
        "description": "CLI JSON is byte-identical across runs and worker counts",
    },
}
