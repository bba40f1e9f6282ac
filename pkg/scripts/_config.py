"""Build an argparse parser from a dataclass of defaults."""

from __future__ import annotations

import argparse
from dataclasses import MISSING, fields
from typing import TypeVar, get_type_hints

T = TypeVar("T")


def parse_config(cls: type[T], description: str, argv: list[str] | None = None) -> T:
    parser = argparse.ArgumentParser(description=description)
    hints = get_type_hints(cls)
    for f in fields(cls):
        default = f.default if f.default is not MISSING else f.default_factory()  # type: ignore[misc]
        flag = "--" + f.name.replace("_", "-")
        kind = hints[f.name]
        if kind is bool:
            parser.add_argument(flag, action=argparse.BooleanOptionalAction, default=default)
        elif getattr(kind, "__origin__", None) is tuple:
            item = kind.__args__[0]
            parser.add_argument(flag, type=item, nargs="+", default=default)
        else:
            parser.add_argument(flag, type=kind, default=default)
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(parser.parse_args(argv)).items()})
