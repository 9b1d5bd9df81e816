"""Substitution ``${VAR}`` dans le document et typage des surcharges ``VGSTEIN__*``."""

from __future__ import annotations

import os
import re
from typing import Any

from ..observability import get_logger

logger = get_logger("config")

_VAR = re.compile(r"\$\{([A-Za-z_][A-Za-z0-9_]*)\}")
_BOOLS = {"true": True, "yes": True, "on": True, "false": False, "no": False, "off": False}


def _substitute(text: str) -> str:
    def _lookup(match: re.Match) -> str:
        name = match.group(1)
        if name not in os.environ:
            logger.warning("undefined variable in config, substituting empty string", var=name)
        return os.environ.get(name, "")

    return _VAR.sub(_lookup, text)


def _resolve(value: Any) -> Any:
    """Parcourt le document (dicts, listes) et remplace chaque ``${VAR}``."""
    match value:
        case str():
            return _substitute(value)
        case dict():
            return {key: _resolve(item) for key, item in value.items()}
        case list():
            return [_resolve(item) for item in value]
        case _:
            return value


def _number(text: str) -> int | float | str:
    for kind in (int, float):
        try:
            return kind(text)
        except ValueError:
            continue
    return text


def _coerce(value: str) -> Any:
    """
    Type une valeur lue dans l'environnement.

    ``"8,16,32"`` donne une liste (``VGSTEIN__EXPERIMENT__N_VALUES``),
    ``"none"``/``"null"`` donne None, puis booléens, entiers et flottants ;
    le reste reste une chaîne.
    """
    text = value.strip()
    if "," in text:
        return [_coerce(part) for part in text.split(",") if part.strip()]
    low = text.lower()
    if low in ("none", "null"):
        return None
    if low in _BOOLS:
        return _BOOLS[low]
    return _number(text)
