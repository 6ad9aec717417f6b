import dataclasses
from fractions import Fraction


@dataclasses.dataclass(frozen=True)
class Settings:
    """
    initial_precision: Bits used for the first interval evaluation
    max_precision: Precision doubles up to this many bits before giving up
    prime_cap: Forge never considers primes above this
    twist_cap: Largest twist parameter the forge may use for a bump
    search_bound: Height bound for metabolizer search when no certificate is given
    integral_tolerance: Width of certified signature-integral intervals
    crossing_factor: Multiplier turning a crossing number into C_K
    """
    initial_precision: int = 64
    max_precision: int = 4096
    prime_cap: int = 1000
    twist_cap: int = 10_000
    search_bound: int = 1
    integral_tolerance: Fraction = Fraction(1, 10**9)
    crossing_factor: int = 69713280

    def __post_init__(self):
        if self.initial_precision < 2 or self.max_precision < self.initial_precision:
            raise ValueError("Need 2 <= initial_precision <= max_precision")
        if self.prime_cap < 2 or self.twist_cap < 2:
            raise ValueError("prime_cap and twist_cap must be at least 2")
        if self.search_bound < 0:
            raise ValueError("search_bound can not be negative")
        if self.integral_tolerance <= 0:
            raise ValueError("integral_tolerance must be positive")

    def replace(self, **changes) -> "Settings":
        return dataclasses.replace(self, **changes)


DEFAULT_SETTINGS = Settings()
