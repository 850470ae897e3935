from __future__ import annotations

from typing import Tuple


class AsymptoticsError(RuntimeError):
    pass


class NonPositiveW(AsymptoticsError):
    def __init__(self, time: float, w: float):
        msg = f"w = {w!r} ≤ 0 at s = {time!r}; τ-time is undefined"
        super().__init__(msg)


class AmbiguousZLimit(AsymptoticsError):
    def __init__(self, z_end: float, s0: float):
        msg = f"Terminal z = {z_end!r} is near neither 0 nor s₀ = {s0!r}"
        super().__init__(msg)


class WindowTooShort(AsymptoticsError):
    def __init__(self, window: Tuple[float, float], samples: int):
        msg = (
            f"Window [{window[0]!r}, {window[1]!r}] holds {samples} samples; "
            "integrate further or export a denser trajectory"
        )
        super().__init__(msg)
