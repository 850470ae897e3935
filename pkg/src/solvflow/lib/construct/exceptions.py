class ShotError(RuntimeError):
    pass


class OutsideAdmissibleRange(ShotError):
    def __init__(self, theta: float, theta0: float):
        msg = (
            f"θ = {theta!r} is outside the admissible range (−π/2, {theta0!r}); "
            "no guarantees apply"
        )
        super().__init__(msg)


class CaptureFailed(ShotError):
    def __init__(self, target: str, detail: str):
        msg = f"Shot was not captured by {target}: {detail}"
        super().__init__(msg)


class LeftK(ShotError):
    def __init__(self, time: float, state):
        msg = f"Einstein shot left the region K at s = {time!r}, (x, y) = {list(state)}"
        super().__init__(msg)


class NonNegativeZ(ShotError):
    def __init__(self, time: float, z: float):
        msg = f"z = {z!r} ≥ 0 at s = {time!r}; the orbit metric is undefined"
        super().__init__(msg)


class ShotInvariantViolated(ShotError):
    def __init__(self, kind: str, time: float, detail: str):
        msg = f"Shot violates an invariant: {kind} ({detail}) at s = {time!r}"
        super().__init__(msg)
