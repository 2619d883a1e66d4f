import math
from dataclasses import asdict, dataclass
from typing import List, Tuple

from lie.exceptions import InputError, UndefinedRatioError

REGIME_FLAT = 'flat'
REGIME_EINSTEIN = 'einstein'
REGIME_GENERIC = 'generic'


@dataclass(frozen=True)
class SphereParams:
    """S^p x S^q with metric g_1/s + sgn(s') g_2/|s'| of sectional curvatures s and |s'|."""
    p: int
    q: int
    s: float
    s_prime: float

    def __post_init__(self):
        for name in ('p', 'q'):
            value = getattr(self, name)
            if isinstance(value, bool) or not float(value).is_integer() or value < 1:
                raise InputError('{0} must be a positive integer, got {1!r}'.format(name, value))
            object.__setattr__(self, name, int(value))
        if self.p + self.q < 3:
            raise InputError('p + q must be at least 3, got {0}'.format(self.p + self.q))
        if not self.s > 0:
            raise InputError('s must be positive, got {0!r}'.format(self.s))
        if self.s_prime == 0:
            raise InputError('s_prime must be nonzero')
        object.__setattr__(self, 's', float(self.s))
        object.__setattr__(self, 's_prime', float(self.s_prime))

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def sign(self) -> int:
        return 1 if self.s_prime > 0 else -1

    @property
    def simply_connected(self) -> bool:
        return self.p >= 2 and self.q >= 2

    @property
    def g_dim(self) -> int:
        return (self.n + 2) * (self.n + 1) // 2

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self):
        return 'p={0} q={1} s={2:g} s\'={3:g}'.format(self.p, self.q, self.s, self.s_prime)


def einstein_ratio(params: SphereParams) -> float:
    """The s' making the product Einstein: (p-1)/(q-1) * s."""
    if params.q == 1:
        raise UndefinedRatioError('Einstein ratio is undefined for q = 1')
    return (params.p - 1) / (params.q - 1) * params.s


def regime(params: SphereParams) -> Tuple[str, int]:
    """
    Which holonomy theorem applies, and the holonomy dimension it predicts.

    Returns:
        (str, int): one of flat / einstein / generic, and dim of the holonomy algebra
    """
    n = params.n
    if params.p == 1 or params.q == 1 or math.isclose(params.s_prime, -params.s):
        return REGIME_FLAT, 0
    if math.isclose(params.s_prime, einstein_ratio(params)):
        return REGIME_EINSTEIN, (n + 1) * n // 2
    return REGIME_GENERIC, params.g_dim


def parameter_grid(sizes=(1, 2, 3), curvatures=(1.0, 2.0)) -> List[SphereParams]:
    """Parameter points covering the flat, Einstein and generic regimes."""
    grid = []
    for p in sizes:
        for q in sizes:
            if p + q < 3:
                continue
            for s in curvatures:
                candidates = [-s, 1.0, -1.0, 3.0, -3.0]
                if q > 1:
                    candidates.append((p - 1) / (q - 1) * s)
                seen = []
                for s_prime in candidates:
                    if s_prime == 0 or any(math.isclose(s_prime, other) for other in seen):
                        continue
                    seen.append(s_prime)
                    grid.append(SphereParams(p, q, s, s_prime))
    return grid
