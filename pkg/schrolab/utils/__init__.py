from .base import (
    parse_value, parse_single_value, wrap_text, classproperty,
    extract_package_version, parallel_map)
from .numeric import (
    sphere_area, ball_volume, composite_gauss_nodes, leggauss, lp_norm,
    sign_changes)
