from .evolution import EvolutionResult, evolve
from .probes import (
    DominationReport, DecayProfile, IrreducibilityReport, domination_check,
    decay_of_one, irreducibility_probe)
from .kernel import KernelDiagnostics, kernel_diagnostics, kernel_matrix
