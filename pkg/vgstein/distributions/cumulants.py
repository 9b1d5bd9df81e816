"""CumulantSet : cumulants κ₁…κ₆ et conversion moments ↔ cumulants."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

ORDER = 6


@dataclass(frozen=True)
class CumulantSet:
    """
    Cumulants κ₁…κ₆, éventuellement accompagnés d'erreurs standard
    (estimations Monte Carlo). L'indexation est 1-based : ``cs[4]`` vaut κ₄.
    """

    kappa: tuple[float, ...]
    stderr: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if len(self.kappa) != ORDER:
            raise ValueError(f"CumulantSet needs {ORDER} cumulants, got {len(self.kappa)}")
        if self.stderr is not None and len(self.stderr) != ORDER:
            raise ValueError("stderr must have one entry per cumulant")

    def __getitem__(self, j: int) -> float:
        if not 1 <= j <= ORDER:
            raise IndexError(f"cumulant order must be in 1..{ORDER}, got {j}")
        return self.kappa[j - 1]

    def __iter__(self) -> Iterator[float]:
        return iter(self.kappa)

    def se(self, j: int) -> float:
        if self.stderr is None:
            raise ValueError("this CumulantSet carries no standard errors")
        return self.stderr[j - 1]

    @classmethod
    def from_moments(cls, moments: Sequence[float]) -> "CumulantSet":
        """Raw moments m₁…m₆ → cumulants, κ_n = m_n − Σ C(n−1,k−1) κ_k m_{n−k}."""
        m = [1.0, *map(float, moments)]
        if len(m) != ORDER + 1:
            raise ValueError(f"expected {ORDER} moments, got {len(m) - 1}")
        kappa = [0.0] * (ORDER + 1)
        for n in range(1, ORDER + 1):
            kappa[n] = m[n] - sum(comb(n - 1, k - 1) * kappa[k] * m[n - k] for k in range(1, n))
        return cls(tuple(kappa[1:]))

    def to_moments(self) -> tuple[float, ...]:
        """Cumulants → raw moments m₁…m₆."""
        kappa = [0.0, *self.kappa]
        m = [1.0] + [0.0] * ORDER
        for n in range(1, ORDER + 1):
            m[n] = sum(comb(n - 1, k - 1) * kappa[k] * m[n - k] for k in range(1, n + 1))
        return tuple(m[1:])

    def centred(self) -> "CumulantSet":
        return CumulantSet((0.0, *self.kappa[1:]), self.stderr)

    def as_dict(self) -> dict[str, float]:
        out = {f"kappa{j}": v for j, v in enumerate(self.kappa, start=1)}
        if self.stderr is not None:
            out.update({f"kappa{j}_se": v for j, v in enumerate(self.stderr, start=1)})
        return out
