"""Resource caps shared by the tower builder, the oracles and the harness."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields, replace

ENV_PREFIX = "ITERLINE_"


@dataclass(frozen=True)
class Caps:
    max_vertices: int = 200_000  # per tower level
    max_depth: int = 12
    oracle_vertex_cap: int = 2000  # largest level handed to a Hamiltonian-family oracle
    collapsible_edge_cap: int = 14
    search_budget: int = 2_000_000  # search nodes per oracle call

    def __post_init__(self) -> None:
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"cap {f.name} must be positive")

    def to_dict(self) -> dict[str, int]:
        return asdict(self)

    def with_env(self, environ: dict[str, str] | None = None) -> Caps:
        """Override from ``ITERLINE_MAX_VERTICES`` and friends."""
        environ = os.environ if environ is None else environ
        changes = {}
        for f in fields(self):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                try:
                    changes[f.name] = int(raw)
                except ValueError:
                    raise ValueError(f"{ENV_PREFIX + f.name.upper()} must be an integer, got {raw!r}") from None
        return replace(self, **changes)
