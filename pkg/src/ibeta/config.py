"""Run-time settings shared by the CLI commands."""

from __future__ import annotations

from dataclasses import dataclass

FORMATS = ("json", "csv", "plain")


@dataclass(frozen=True)
class RunConfig:
    orbit_cap: int = 10**6
    refine_floor: int = 4096
    period_cap: int = 64
    prefix_len: int = 48
    precision: int = 12
    format: str = "json"

    def __post_init__(self):
        for name in ("orbit_cap", "refine_floor", "period_cap", "prefix_len", "precision"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}")
