from .grid import RadialGrid, build_grid, rescale_grid
from .assembly import (
    DiscreteOperator, assemble_operator, apply_operator, cell_integrals,
    face_conductances)
