"""Configuration helpers for the resolution toolkit."""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

from sympy import isprime

from .errors import InvalidInput


@dataclass(frozen=True)
class Settings:
    """Runtime knobs shared by the library and the command line."""

    prime: int = 32003
    cell_limit: int = 10**6
    morse_cell_limit: int = 10**4
    taylor_generator_limit: int = 22
    product_limit: int = 10**6
    hull_vertex_limit: int = 200
    lattice_max_n: int = 8
    lattice_max_d: int = 3
    dense_column_limit: int = 2000


DEFAULT_SETTINGS = Settings()


def load_settings(**overrides: int | None) -> Settings:
    """Overlay the non-None overrides on the defaults.

    The command line passes its flags straight through, so a flag that was not
    given keeps the default value.
    """

    known = {field.name for field in fields(Settings)}
    unknown = set(overrides) - known
    if unknown:
        raise TypeError(f"unknown settings: {', '.join(sorted(unknown))}")
    chosen = {key: value for key, value in overrides.items() if value is not None}
    settings = replace(DEFAULT_SETTINGS, **chosen)
    if not isprime(settings.prime):
        raise InvalidInput(f"field modulus {settings.prime} is not prime")
    return settings
