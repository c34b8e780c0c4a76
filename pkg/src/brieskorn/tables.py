"""Reference values for the three ASL families, as closed formulas in ``n``."""
from __future__ import annotations

from dataclasses import dataclass

from .exceptions import InputError

# Cells whose computed value is known to disagree with the reference
# formula.  They are reported as warnings unless strict checking is on.
KNOWN_DEVIATIONS = {
    "Z_ODD_SECOND_SUMMAND_GRADING": (
        "Z_n, n odd: the second HF_conn summand comes out at grading n-1 "
        "under g = -2t-2, the reference lists n+1"),
}


@dataclass(frozen=True)
class Expected:
    d: int
    mu_bar: int
    monotone: tuple[tuple[int, int], ...]
    hf_conn: tuple[tuple[int, int], ...]  # (grading, length), one per summand
    phi: dict[int, int]
    window: tuple[int, ...] | None = None


def expected(family: str, n: int) -> Expected:
    if n < 1:
        raise InputError("n must be >= 1")
    odd = n % 2 == 1
    if family == "X":
        return Expected(-2 * n, 0, ((2 * n, 0),), ((2 * n - 2, n),), {n: 1})
    if family == "Y":
        if odd:
            return Expected(-2 * n, 0, ((2 * n, 0),), ((2 * n - 2, n),), {n: 1})
        h = n // 2
        return Expected(-2 * n, -h, ((2 * n, 0), (n, n)),
                        ((2 * n - 2, n), (n - 2, h)), _phi([(n, 1), (h, -1)]))
    if family == "Z":
        if odd:
            h = (n + 1) // 2
            return Expected(-2 * n, -h, ((2 * n, 0), (n + 1, n + 1)),
                            ((2 * n - 2, n), (n + 1, h)), _phi([(n, 1), (h, -1)]))
        return Expected(-2 * n, 0, ((2 * n, 0),), ((2 * n - 2, n),), {n: 1})
    raise InputError(f"unknown family {family!r}")


def _phi(raw: list[tuple[int, int]]) -> dict[int, int]:
    # when two Kronecker deltas land on the same k they cancel (Z_1)
    out: dict[int, int] = {}
    for k, v in raw:
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}
