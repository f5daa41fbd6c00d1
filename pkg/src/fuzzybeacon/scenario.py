"""Scenario configuration: validation, JSON files, and the shipped presets.

``scenario1`` is the low-density setup (44 vehicles on a 20 x 100 m strip,
6 Mbps, gate acceptance Good); ``scenario2`` is the dense urban square
(193 vehicles on 100 x 100 m, 27 Mbps, acceptance VeryGood). Both run 200
simulated seconds with 1 s beaconing, 10 accidents, and one road-side unit.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from importlib import resources
from pathlib import Path

from .phy import dbm_to_watts

DEFAULT_SEED = 1  # fixed so runs are reproducible without flags

MODES = ("baseline", "fuzzy")


class ConfigError(ValueError):
    """Invalid configuration; carries a machine-readable error list."""

    def __init__(self, errors: list[dict], source: str = "<config>"):
        self.errors = errors
        self.source = source
        summary = "; ".join(f"{e['key']}: {e['message']}" for e in errors)
        super().__init__(f"{source}: {summary}")


@dataclass(frozen=True)
class PhyConfig:
    tx_power_w: float = 0.1
    frequency_hz: float = 5.89e9
    sensitivity_dbm: float = -89.0
    path_loss_exponent: float = 2.0
    corruption_prob: float = 0.0

    @property
    def sensitivity_w(self) -> float:
        return dbm_to_watts(self.sensitivity_dbm)


@dataclass(frozen=True)
class MacConfig:
    cw_min: int = 15
    cw_max: int = 1023
    slot_time_s: float = 13e-6
    aifs_s: float = 58e-6
    cw_doubling: bool = True


@dataclass(frozen=True)
class Scenario:
    name: str
    area_w: float
    area_h: float
    vehicle_count: int
    speed_min: float
    speed_max: float
    bitrate_bps: float
    duration_s: float = 200.0
    beacon_interval_s: float = 1.0
    beacon_bits: int = 256
    data_bits: int = 1024
    wsa_bits: int = 256
    accident_count: int = 10
    accident_halt_s: float = 10.0
    rsu_count: int = 1
    p_wsa: float = 0.1
    neighbor_expiry_s: float = 5.0
    mobility_tick_s: float = 0.1
    mode: str = "baseline"
    acceptance: str = "Good"
    seed: int = DEFAULT_SEED
    phy: PhyConfig = field(default_factory=PhyConfig)
    mac: MacConfig = field(default_factory=MacConfig)

    def validate(self, source: str = "<config>") -> None:
        errors: list[dict] = []

        def err(key: str, message: str):
            errors.append({"key": key, "message": message, "file": source})

        if self.area_w <= 0 or self.area_h <= 0:
            err("area", "area dimensions must be positive")
        if self.vehicle_count < 0:
            err("vehicle_count", "vehicle count must be non-negative")
        if self.rsu_count < 0:
            err("rsu_count", "rsu count must be non-negative")
        if not (0 <= self.speed_min <= self.speed_max):
            err("speed_range", "requires 0 <= speed_min <= speed_max")
        if self.bitrate_bps <= 0:
            err("bitrate_bps", "bitrate must be positive")
        if self.duration_s <= 0:
            err("duration_s", "duration must be positive")
        if self.beacon_interval_s <= 0:
            err("beacon_interval_s", "beacon interval must be positive")
        for key in ("beacon_bits", "data_bits", "wsa_bits"):
            if getattr(self, key) <= 0:
                err(key, "frame length must be positive")
        if self.accident_count < 0:
            err("accident_count", "accident count must be non-negative")
        if self.accident_count > 0 and self.vehicle_count == 0:
            err("accident_count", "accidents require at least one vehicle")
        if self.accident_halt_s < 0:
            err("accident_halt_s", "halt duration must be non-negative")
        if not 0.0 <= self.p_wsa <= 1.0:
            err("p_wsa", "service-request probability must lie in [0, 1]")
        if self.neighbor_expiry_s <= 0:
            err("neighbor_expiry_s", "neighbor expiry must be positive")
        if self.mobility_tick_s <= 0:
            err("mobility_tick_s", "mobility tick must be positive")
        if self.mode not in MODES:
            err("mode", f"mode must be one of {MODES}")
        if self.phy.tx_power_w <= 0:
            err("phy.tx_power_w", "transmit power must be positive")
        if self.phy.frequency_hz <= 0:
            err("phy.frequency_hz", "channel frequency must be positive")
        if self.phy.path_loss_exponent <= 0:
            err("phy.path_loss_exponent", "path-loss exponent must be positive")
        if not 0.0 <= self.phy.corruption_prob <= 1.0:
            err("phy.corruption_prob", "corruption probability must lie in [0, 1]")
        if self.mac.cw_min < 0 or self.mac.cw_min > self.mac.cw_max:
            err("mac.cw", "requires 0 <= cw_min <= cw_max")
        if self.mac.slot_time_s <= 0:
            err("mac.slot_time_s", "slot time must be positive")
        if self.mac.aifs_s < self.mac.slot_time_s:
            err("mac.aifs_s", "AIFS must be at least one slot time")
        for key in ("cw_min", "cw_max"):
            v = getattr(self.mac, key)
            if v >= 0 and ((v + 1) & v) != 0:
                err(f"mac.{key}", "must be one less than a power of two")

        if errors:
            raise ConfigError(errors, source)

    def fingerprint(self) -> dict:
        """Canonical scenario identity: every key except mode and acceptance."""
        d = asdict(self)
        d.pop("mode")
        d.pop("acceptance")
        d.pop("seed")
        return d

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def _from_dict(raw: dict, source: str) -> Scenario:
    data = dict(raw)
    data.pop("schema_version", None)
    phy = PhyConfig(**data.pop("phy", {}))
    mac = MacConfig(**data.pop("mac", {}))
    try:
        scn = Scenario(phy=phy, mac=mac, **data)
    except TypeError as exc:
        raise ConfigError([{"key": "<root>", "message": str(exc), "file": source}], source) from None
    scn.validate(source)
    return scn


def scenario_from_json(text: str, source: str = "<string>") -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError([{"key": "<root>", "message": f"invalid JSON: {exc}", "file": source}], source) from None
    if not isinstance(raw, dict):
        raise ConfigError([{"key": "<root>", "message": "top level must be an object", "file": source}], source)
    return _from_dict(raw, source)


PRESET_NAMES = ("scenario1", "scenario2")


def load_scenario(name_or_path: str | Path) -> Scenario:
    """Resolve a preset name or a JSON file path to a validated scenario."""
    name = str(name_or_path)
    if name in PRESET_NAMES:
        text = resources.files("fuzzybeacon.data").joinpath(f"{name}.json").read_text(encoding="utf-8")
        return scenario_from_json(text, source=f"preset:{name}")
    p = Path(name_or_path)
    if not p.exists():
        raise ConfigError(
            [{"key": "scenario", "message": f"no preset or file named {name!r}", "file": name}],
            name,
        )
    return scenario_from_json(p.read_text(encoding="utf-8"), source=str(p))


def with_overrides(
    scn: Scenario,
    mode: str | None = None,
    acceptance: str | None = None,
    seed: int | None = None,
    duration_s: float | None = None,
) -> Scenario:
    changes = {}
    if mode is not None:
        changes["mode"] = mode
    if acceptance is not None:
        changes["acceptance"] = acceptance
    if seed is not None:
        changes["seed"] = seed
    if duration_s is not None:
        changes["duration_s"] = duration_s
    if not changes:
        return scn
    out = replace(scn, **changes)
    out.validate("<overrides>")
    return out
