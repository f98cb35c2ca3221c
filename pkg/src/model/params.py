"""
SystemParams: every scalar the analytic engine and the simulator need, in SI linear units
"""
import math
from dataclasses import dataclass, field, replace

from src.core.errors import ValidationError
from src.model.link_class import ALL_CLASSES, LinkClass, Tier, Visibility

SPILLOVER_TAN_LIMIT = 1.0 / 8.0


def _as_class_map(mapping, name, errors):
    resolved = {}
    for key, value in dict(mapping).items():
        cls = key if isinstance(key, LinkClass) else None
        if cls is None:
            try:
                cls = LinkClass.from_key(str(key))
            except ValidationError as e:
                errors.extend(f"{name}: {msg}" for msg in e.errors)
                continue
        resolved[cls] = float(value)
    for cls in ALL_CLASSES:
        if cls not in resolved:
            errors.append(f"{name}: missing entry for link class {cls.key}")
    return resolved


@dataclass(frozen=True)
class SystemParams:
    lambda_m: float        # MBS areal density, /m^2
    lambda_r: float        # road line-process intensity, /m^2
    lambda_s: float        # SBS linear density per road, /m
    lambda_ou: float       # outdoor user linear density per road, /m
    d_m: float             # MBS LOS-ball radius, m
    p_tx_macro: float      # W
    p_tx_small: float      # W
    k: dict = field(default_factory=dict)
    alpha: dict = field(default_factory=dict)
    g0: float = 1000.0
    theta: float = math.radians(10.0)
    h: float = 10.0
    noise_mu: float = 1e-12
    noise_mm: float = 1e-11
    nakagami_m: int = 3

    def __post_init__(self):
        errors = []
        object.__setattr__(self, "k", _as_class_map(self.k, "k", errors))
        object.__setattr__(self, "alpha", _as_class_map(self.alpha, "alpha", errors))
        errors.extend(self._range_errors())
        if errors:
            raise ValidationError(errors)

    def _range_errors(self):
        errors = []
        positive = {
            "lambda_m": self.lambda_m, "lambda_r": self.lambda_r, "lambda_s": self.lambda_s,
            "lambda_ou": self.lambda_ou, "d_m": self.d_m, "p_tx_macro": self.p_tx_macro,
            "p_tx_small": self.p_tx_small, "g0": self.g0, "h": self.h,
            "noise_mu": self.noise_mu, "noise_mm": self.noise_mm,
        }
        for name, value in positive.items():
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                errors.append(f"{name}: must be a finite value > 0 (got {value!r})")
        if not (0.0 < self.theta < math.pi):
            errors.append(f"theta: must lie in (0, pi) radians (got {self.theta!r})")
        if isinstance(self.nakagami_m, bool) or int(self.nakagami_m) != self.nakagami_m or self.nakagami_m < 1:
            errors.append(f"nakagami_m: must be an integer >= 1 (got {self.nakagami_m!r})")
        for cls, value in self.k.items():
            if not value > 0:
                errors.append(f"k.{cls.key}: must be > 0 (got {value!r})")
        for cls, value in self.alpha.items():
            if cls.visibility is Visibility.NLOS and not value > 2.0:
                errors.append(f"alpha.{cls.key}: NLOS exponents must be > 2 (got {value!r})")
            if cls.visibility is Visibility.LOS and not value >= 2.0:
                errors.append(f"alpha.{cls.key}: LOS exponents must be >= 2 (got {value!r})")
        return errors

    def k_of(self, cls):
        return self.k[cls]

    def alpha_of(self, cls):
        return self.alpha[cls]

    def tx_power(self, cls):
        return self.p_tx_macro if cls.tier is Tier.MACRO else self.p_tx_small

    def noise(self, cls):
        return self.noise_mm if cls.is_mm_wave else self.noise_mu

    @property
    def spillover_feasible(self):
        """Whether tan(theta/2) <= 1/8, so that the spillover window has real bounds"""
        return math.tan(self.theta / 2.0) <= SPILLOVER_TAN_LIMIT

    @property
    def p_macro_los(self):
        """Probability that at least one MBS lies inside the LOS ball"""
        return -math.expm1(-math.pi * self.lambda_m * self.d_m ** 2)

    def warnings(self):
        notes = []
        if not self.spillover_feasible:
            notes.append(
                f"theta={math.degrees(self.theta):.3g} deg violates the spillover feasibility bound "
                f"tan(theta/2) <= 1/8; p_G is extrapolated"
            )
        return notes

    def replace(self, **changes):
        return replace(self, **changes)
