"""
Constantes c_q(r₁, …, r_a) de la représentation des opérateurs Γ sur le
q-ième chaos :

    c_q(r)           = q (r−1)! C(q−1, r−1)²
    c_q(r₁, …, r_a)  = q (r_a−1)! C(aq − 2r₁ − … − 2r_{a−1} − 1, r_a − 1)
                       · C(q−1, r_a−1) · c_q(r₁, …, r_{a−1})
"""

from __future__ import annotations

from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .symmetric import TensorError


class AdmissibilityError(TensorError):
    """Liste d'indices hors des contraintes de la représentation."""


def check_admissible(q: int, r_list: Sequence[int]) -> None:
    """
    1 ≤ r_k ≤ min(q, kq − 2(r₁ + … + r_{k−1})) pour tout k, et l'ordre
    intermédiaire (k+1)q − 2(r₁ + … + r_k) reste > 0 avant le dernier indice.
    """
    if q < 1:
        raise AdmissibilityError(f"chaos order must be >= 1, got {q}")
    if not r_list:
        raise AdmissibilityError("index list must not be empty")
    used = 0
    for k, r in enumerate(r_list, start=1):
        order = k * q - 2 * used
        if not 1 <= r <= min(q, order):
            raise AdmissibilityError(f"c_{q}{tuple(r_list)}: r_{k}={r} outside 1..{min(q, order)}")
        used += r
        if k < len(r_list) and (k + 1) * q - 2 * used <= 0:
            raise AdmissibilityError(
                f"c_{q}{tuple(r_list)}: intermediate contraction after r_{k} is a scalar"
            )


@lru_cache(maxsize=None)
def _cq(q: int, r_list: tuple[int, ...]) -> int:
    r_a = r_list[-1]
    if len(r_list) == 1:
        return q * factorial(r_a - 1) * comb(q - 1, r_a - 1) ** 2
    a = len(r_list)
    top = a * q - 2 * sum(r_list[:-1]) - 1
    return q * factorial(r_a - 1) * comb(top, r_a - 1) * comb(q - 1, r_a - 1) * _cq(q, r_list[:-1])


def cq(q: int, r_list: Sequence[int] | int) -> int:
    """c_q(r₁, …, r_a) ; lève AdmissibilityError hors des contraintes."""
    rs = (r_list,) if isinstance(r_list, int) else tuple(int(r) for r in r_list)
    check_admissible(q, rs)
    return _cq(q, rs)
