from .params import OperatorParams, Coefficients, eval_coefficients
from .lyapunov import (
    LyapunovProbe, lyapunov_constant, lyapunov_ratio, apply_to_phi)
from .classification import ReverseHolderVerdict, classify_reverse_holder
