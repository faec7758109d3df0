"""Declarative run configuration shared by the command line and the benchmark."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .pdu import PduConfig
from .simulator import preset_names
from .windowed import WindowSpec


class ConfigError(ValueError):
    """Inconsistent or malformed run configuration."""


SIM_WINDOW = {"T": 0.25, "B": 0.0625}


@dataclass(frozen=True)
class RunConfig:
    method: str = "pdu"
    use_cumsum: bool = False
    L: int = 5
    n_components: int = 2
    epsilon: float = 1e-6
    upsample_factor: int = 16
    residual_energy_stop: float = 1e-4
    window: dict | None = None
    window_schedule: tuple = ()
    taper: str = "post"
    detrend_degree: int = 2
    seed: int = 0
    realizations: int = 1
    preset: str | None = None

    def __post_init__(self):
        if self.method not in ("pdu", "windowed"):
            raise ConfigError(f"method must be 'pdu' or 'windowed', got {self.method!r}")
        if self.method == "windowed" and self.window is None and not self.window_schedule:
            raise ConfigError("method 'windowed' needs a window block {T, B}")
        if self.taper not in ("pre", "post"):
            raise ConfigError("taper must be 'pre' or 'post'")
        if self.detrend_degree not in (2, 3):
            raise ConfigError("detrend_degree must be 2 or 3")
        if self.realizations < 1:
            raise ConfigError("realizations must be at least 1")
        if self.preset is not None and self.preset not in preset_names():
            raise ConfigError(f"unknown preset {self.preset!r}")
        # the value objects carry their own checks
        try:
            self.pdu_config()
            self.windows()
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    def pdu_config(self) -> PduConfig:
        return PduConfig(
            lowpass_order=int(self.L),
            n_components=int(self.n_components),
            epsilon=float(self.epsilon),
            upsample_factor=int(self.upsample_factor),
            residual_energy_stop=float(self.residual_energy_stop),
        )

    def windows(self) -> list:
        """Window per extraction (empty for plain PDU)."""
        blocks = list(self.window_schedule) or ([self.window] if self.window else [])
        out = []
        for b in blocks:
            if not isinstance(b, dict) or "T" not in b:
                raise ConfigError("window blocks need at least 'T'")
            T = float(b["T"])
            out.append(WindowSpec(T, float(b.get("B", T / 4))))
        return out

    def to_dict(self) -> dict:
        d = asdict(self)
        d["window_schedule"] = list(self.window_schedule)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(d) - known
        if extra:
            raise ConfigError(f"unknown config keys: {sorted(extra)}")
        d = dict(d)
        if "window_schedule" in d:
            d["window_schedule"] = tuple(d["window_schedule"] or ())
        try:
            return cls(**d)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path) -> dict:
    """Raw dict from a JSON config file."""
    try:
        d = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(d, dict):
        raise ConfigError("config must be a JSON object")
    return d
