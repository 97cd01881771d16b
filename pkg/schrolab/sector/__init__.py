from .shift import (
    ShiftCheck, feasible_shift, shift_scan, dissipativity_slack,
    sector_angle, dual_angle, default_c_tilde, C_TILDE_OBJECTIVES)
from .rays import RayScan, resolvent_norm_scan, sample_vectors
from .report import SectorReport, sector_report
