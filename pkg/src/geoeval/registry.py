"""Canonical country identity and alias resolution.

The registry is the join key between ground-truth manifests, the border
edge lists, and centroid coordinates. It is deliberately *not* used to
match model predictions: prediction matching is string-exact against
dataset label names and never expands aliases.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import GeoEvalError


@dataclass(frozen=True, eq=False)
class CountryId:
    """Canonical country key. Equality and hashing use the code only."""

    code: str
    display_name: str

    def __post_init__(self) -> None:
        if not (2 <= len(self.code) <= 3) or not self.code.isalpha() or not self.code.isupper():
            raise GeoEvalError(f"invalid country code {self.code!r} (want 2-3 uppercase letters)")
        if not self.display_name:
            raise GeoEvalError(f"empty display name for country code {self.code}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CountryId) and self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)

    def __repr__(self) -> str:
        return f"CountryId({self.code}:{self.display_name})"


@dataclass(frozen=True)
class RegistryEntry:
    country: CountryId
    aliases: tuple[str, ...]
    lat: float
    lon: float
    is_island: bool

    def __post_init__(self) -> None:
        if not -90.0 <= self.lat <= 90.0:
            raise GeoEvalError(f"latitude {self.lat} out of [-90,90] for {self.country.code}")
        if not -180.0 < self.lon <= 180.0:
            raise GeoEvalError(f"longitude {self.lon} out of (-180,180] for {self.country.code}")


class CountryRegistry:
    """Immutable alias -> country lookup with per-country centroids.

    Every alias (plus each entry's code and display name) resolves
    case-insensitively to exactly one country; a clash is a hard error
    at construction time.
    """

    def __init__(self, entries: list[RegistryEntry]):
        if not entries:
            raise GeoEvalError("registry has no entries")
        self._entries: dict[str, RegistryEntry] = {}
        self._by_alias: dict[str, CountryId] = {}
        for entry in entries:
            code = entry.country.code
            if code in self._entries:
                raise GeoEvalError(f"duplicate registry code {code}")
            self._entries[code] = entry
            for alias in (code, entry.country.display_name, *entry.aliases):
                key = alias.strip().lower()
                if not key:
                    raise GeoEvalError(f"blank alias for registry code {code}")
                owner = self._by_alias.get(key)
                if owner is not None and owner != entry.country:
                    raise GeoEvalError(
                        f"alias {alias!r} maps to both {owner.code} and {code}"
                    )
                self._by_alias[key] = entry.country

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, code: str) -> bool:
        return code in self._entries

    def codes(self) -> list[str]:
        return sorted(self._entries)

    def entry(self, code: str) -> RegistryEntry:
        try:
            return self._entries[code]
        except KeyError:
            raise GeoEvalError(f"unknown country code {code!r}") from None

    def country(self, code: str) -> CountryId:
        return self.entry(code).country

    def centroid(self, code: str) -> tuple[float, float]:
        entry = self.entry(code)
        return entry.lat, entry.lon

    def is_island(self, code: str) -> bool:
        return self.entry(code).is_island

    def resolve(self, name: str) -> CountryId:
        """Resolve a curated name or alias (case-insensitive) to its country."""
        country = self._by_alias.get(name.strip().lower())
        if country is None:
            raise GeoEvalError(f"unresolvable country {name!r}")
        return country

    def try_resolve(self, name: str) -> CountryId | None:
        return self._by_alias.get(name.strip().lower())


def load_registry(path: str | Path) -> CountryRegistry:
    """Load a registry from JSONL (one country per line).

    Line schema: {"code":..., "name":..., "aliases":[...], "lat":..., "lon":..., "island":bool}
    """
    path = Path(path)
    if not path.is_file():
        raise GeoEvalError(f"registry file not found: {path}")
    entries: list[RegistryEntry] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise GeoEvalError(f"{path}:{lineno}: invalid JSON: {exc}") from None
            try:
                entry = RegistryEntry(
                    country=CountryId(code=rec["code"], display_name=rec["name"]),
                    aliases=tuple(rec.get("aliases", [])),
                    lat=float(rec["lat"]),
                    lon=float(rec["lon"]),
                    is_island=bool(rec.get("island", False)),
                )
            except KeyError as exc:
                raise GeoEvalError(f"{path}:{lineno}: missing field {exc}") from None
            entries.append(entry)
    return CountryRegistry(entries)
