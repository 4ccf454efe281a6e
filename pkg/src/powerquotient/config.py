"""Resource caps shared by the enumeration and graph builders."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_ORDER = "POWERGRAPH_MAX_ORDER"


class CapExceeded(RuntimeError):
    """A configured size cap would be exceeded."""


@dataclass(frozen=True)
class Caps:
    # symmetric/alternating enumeration by degree
    max_degree: int = 10
    # normalizer and fusion-control brute force over S_n
    brute_force_degree: int = 7
    # group order above which no graph is built (S_9 by default)
    max_order: int = 362880
    # explicit P_0(G) has |G| - 1 vertices; S_8 by default
    max_explicit_order: int = 40320
    # pairwise O(|G|^2) oracle
    max_oracle_order: int = 5040

    def __post_init__(self):
        for name in ("max_degree", "brute_force_degree", "max_order",
                     "max_explicit_order", "max_oracle_order"):
            if getattr(self, name) < 1:
                raise ValueError(f"cap {name} must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "Caps":
        raw = os.environ.get(ENV_MAX_ORDER)
        if raw is not None and "max_order" not in overrides:
            overrides["max_order"] = int(raw)
        return cls(**overrides)


DEFAULT_CAPS = Caps()


def check_cap(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise CapExceeded(f"{what}: {value} exceeds cap {limit}")
