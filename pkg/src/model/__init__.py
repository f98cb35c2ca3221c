from .link_class import ALL_CLASSES, LinkClass, ML, MN, Rat, SL_MM, SL_MU, SN, Tier, Visibility
from .params import SystemParams
from .channel import mean_rx_power, path_loss, power_equivalent_radius
