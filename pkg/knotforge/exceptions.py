class KnotForgeError(Exception):
    pass


class InvalidSeifertMatrixError(KnotForgeError):
    def __init__(self, matrix, reason):
        self.matrix = matrix
        self.reason = reason

    def __str__(self):
        return f"Not a Seifert matrix ({self.reason}): {self.matrix}"


class DimensionMismatchError(KnotForgeError):
    def __init__(self, expected, actual):
        self.expected = expected
        self.actual = actual

    def __str__(self):
        return f"Expected shape {self.expected}, got {self.actual}"


class SingularEvaluationError(KnotForgeError):
    def __init__(self, order, index):
        self.order = order
        self.index = index

    def __str__(self):
        return (f"Signature form is singular at exp(2πi·{self.index}/{self.order}). "
                f"This root of unity is a root of the Alexander polynomial.")


class UncertifiedError(KnotForgeError):
    def __init__(self, quantity, precision):
        self.quantity = quantity
        self.precision = precision

    def __str__(self):
        return (f"Could not certify {self.quantity} within {self.precision} bits. "
                f"Consider raising max_precision.")


class NonSquarefreeError(KnotForgeError):
    def __init__(self, delta):
        self.delta = delta

    def __str__(self):
        return (f"Alexander polynomial {self.delta} is not squarefree. "
                f"Supply generators and call verify_self_annihilating instead.")


class InfeasiblePrimeError(KnotForgeError):
    def __init__(self, prime, reason):
        self.prime = prime
        self.reason = reason

    def __str__(self):
        return f"No companion for p={self.prime}: {self.reason}"


class HypothesisError(KnotForgeError):
    def __init__(self, reason):
        self.reason = reason

    def __str__(self):
        return f"Hypothesis not met: {self.reason}"


class PrimeSearchExhaustedError(KnotForgeError):
    def __init__(self, cap, found, wanted):
        self.cap = cap
        self.found = found
        self.wanted = wanted

    def __str__(self):
        return f"Only {self.found} of {self.wanted} primes found below {self.cap}"


class CertificateInputError(KnotForgeError):
    def __init__(self, reason):
        self.reason = reason

    def __str__(self):
        return f"Invalid certificate input: {self.reason}"


class DuplicateChildError(KnotForgeError):
    def __init__(self, parent, identifier):
        self.parent = parent
        self.identifier = identifier

    def __str__(self):
        return f"Report node {self.parent!r} already has a child {self.identifier!r}"
