"""BoundReport — évaluation détaillée d'une borne de Malliavin–Stein."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any


@dataclass
class BoundReport:
    """
    terms      chaque terme de la borne, par nom
    total      valeur combinée (somme des termes, constantes unité)
    interior   polynôme intérieur avant racine carrée, quand il existe
    flags      événements numériques (interior_negative, constants_unit, ...)
    stderr     erreurs standard Monte Carlo, par nom de terme
    constants  constantes multiplicatives explicites, par nom de terme
    """

    kind: str
    terms: dict[str, float]
    total: float
    interior: float | None = None
    flags: list[str] = field(default_factory=list)
    stderr: dict[str, float] = field(default_factory=dict)
    constants: dict[str, float] = field(default_factory=dict)
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def total_with_constants(self) -> float:
        if not self.constants:
            return self.total
        return math.fsum(self.constants.get(k, 1.0) * v for k, v in self.terms.items())

    def flag(self, name: str) -> None:
        if name not in self.flags:
            self.flags.append(name)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "kind": self.kind,
            "terms": dict(self.terms),
            "total": self.total,
            "flags": list(self.flags),
        }
        if self.interior is not None:
            out["interior"] = self.interior
        if self.stderr:
            out["stderr"] = dict(self.stderr)
        if self.constants:
            out["constants"] = dict(self.constants)
            out["total_with_constants"] = self.total_with_constants
        if self.details:
            out["details"] = self.details
        return out
