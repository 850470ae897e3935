class FlowError(ValueError):
    pass


class ScalarFlat(FlowError):
    def __init__(self):
        super().__init__(
            "Parameters are scalar-flat (s₀ = 0); only the noscal system applies"
        )


class DegenerateEigenspace(FlowError):
    def __init__(self, detail: str):
        msg = f"Unstable eigenspace is degenerate: {detail}"
        super().__init__(msg)


class NonNegativeLambda(FlowError):
    def __init__(self, *lambdas: float):
        msg = f"Cosmological constants must be negative, got {list(lambdas)}"
        super().__init__(msg)


class LambdaOutOfRange(FlowError):
    def __init__(self, lam: float):
        msg = f"The noscal system needs -1 < λ < 0, got λ = {lam!r}"
        super().__init__(msg)
