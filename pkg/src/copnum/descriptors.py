"""Parser for compact ``name:key=value,...`` descriptors.

Keys listed in ``nested`` swallow the rest of the string, so a nested
descriptor (``inner=optimal:from=solver``) can contain its own colons and
commas; nested keys must therefore come last.
"""

from __future__ import annotations

from copnum.errors import InvalidInput


def parse_descriptor(text: str, nested: tuple[str, ...] = ("inner", "base")) -> tuple[str, dict[str, str], list[str]]:
    text = text.strip()
    if not text:
        raise InvalidInput("empty descriptor")
    name, _, rest = text.partition(":")
    kwargs: dict[str, str] = {}
    positional: list[str] = []
    while rest:
        key, eq, tail = rest.partition("=")
        if eq and key in nested:
            kwargs[key] = tail
            break
        item, _, rest = rest.partition(",")
        if "=" in item:
            k, _, v = item.partition("=")
            if not k:
                raise InvalidInput(f"bad item {item!r} in descriptor {text!r}")
            kwargs[k.strip()] = v.strip()
        elif item:
            positional.append(item.strip())
    return name.strip(), kwargs, positional


def to_int(value: str, what: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InvalidInput(f"{what} must be an integer, got {value!r}") from None
