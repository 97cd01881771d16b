from .solver import (
    SpectrumResult, GroundState, AccumulationReport, solve_spectrum,
    ground_state, accumulation_check)
from .channels import (
    MultiChannelSpectrum, channel_degeneracy, solve_channels, kernel_spectra)
