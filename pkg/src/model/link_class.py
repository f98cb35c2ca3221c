"""
Link classes: (tier, visibility, RAT) triples indexing every per-link constant
"""
from dataclasses import dataclass
from enum import Enum

from src.core.errors import ValidationError


class Tier(str, Enum):
    MACRO = "M"
    SMALL = "S"


class Visibility(str, Enum):
    LOS = "L"
    NLOS = "N"


class Rat(str, Enum):
    MICRO_WAVE = "mu"
    MM_WAVE = "mm"


@dataclass(frozen=True)
class LinkClass:
    tier: Tier
    visibility: Visibility
    rat: Rat = Rat.MICRO_WAVE

    def __post_init__(self):
        if self.rat is Rat.MM_WAVE and self.tier is Tier.MACRO:
            raise ValidationError(f"link class {self.tier.value}{self.visibility.value}-mm: macro cells carry no mm-wave RAT")
        if self.rat is Rat.MM_WAVE and self.visibility is Visibility.NLOS:
            raise ValidationError(f"link class {self.tier.value}{self.visibility.value}-mm: mm-wave requires a LOS link")

    @property
    def key(self):
        """Short config name: ML, MN, SL_MU, SL_MM, SN"""
        base = f"{self.tier.value}{self.visibility.value}"
        if self.tier is Tier.SMALL and self.visibility is Visibility.LOS:
            return f"{base}_{'MM' if self.rat is Rat.MM_WAVE else 'MU'}"
        return base

    @property
    def tier_visibility(self):
        """The RAT-free association class (SL for both SL_MU and SL_MM)"""
        return f"{self.tier.value}{self.visibility.value}"

    @property
    def is_mm_wave(self):
        return self.rat is Rat.MM_WAVE

    def __str__(self):
        return self.key

    @classmethod
    def from_key(cls, key):
        try:
            return CLASSES_BY_KEY[key.upper()]
        except KeyError:
            raise ValidationError(f"unknown link class '{key}' (expected one of {sorted(CLASSES_BY_KEY)})")


ML = LinkClass(Tier.MACRO, Visibility.LOS)
MN = LinkClass(Tier.MACRO, Visibility.NLOS)
SL_MU = LinkClass(Tier.SMALL, Visibility.LOS, Rat.MICRO_WAVE)
SL_MM = LinkClass(Tier.SMALL, Visibility.LOS, Rat.MM_WAVE)
SN = LinkClass(Tier.SMALL, Visibility.NLOS)

ALL_CLASSES = (ML, MN, SL_MU, SL_MM, SN)
CLASSES_BY_KEY = {c.key: c for c in ALL_CLASSES}

# association classes before the RAT split
TIER_VISIBILITY_KEYS = ("ML", "MN", "SL", "SN")
