"""Shared fixture-building helpers for the engine test suite."""

import importlib.resources

from geoeval import CountryId, CountryRegistry, LabelSpace, RegistryEntry, SampleRecord

WORLD_DATA = importlib.resources.files("geoeval") / "data"


def make_registry(rows):
    """rows: (code, name, lat, lon, island) or (code, name, aliases, lat, lon, island)."""
    entries = []
    for row in rows:
        if len(row) == 5:
            code, name, lat, lon, island = row
            aliases = ()
        else:
            code, name, aliases, lat, lon, island = row
        entries.append(
            RegistryEntry(
                country=CountryId(code=code, display_name=name),
                aliases=tuple(aliases),
                lat=lat,
                lon=lon,
                is_island=island,
            )
        )
    return CountryRegistry(entries)


def country(code, name=None):
    return CountryId(code=code, display_name=name or code.title() + "land")


def sample(sid, country_id, dataset="test"):
    return SampleRecord(sample_id=sid, country=country_id, dataset=dataset)


def label_space(countries, dataset="test"):
    return LabelSpace(dataset=dataset, countries=frozenset(countries))
