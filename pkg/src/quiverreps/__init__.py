"""Exact computations around finite-dimensional representations of quantized quiver varieties."""

__version__ = "0.1.0"

from .errors import DimensionError, DomainError, QuiverRepsError, ResourceError, UnsupportedError
from .quiver import (
    Quiver,
    cb_flat,
    classify_quiver,
    cyclic,
    d4,
    is_generic,
    jordan,
    linear_a,
    load_quiver,
    named_quiver,
    root_kind,
    roots_bounded,
    single_vertex,
    tits_form,
)
from .weights import dominant_descent, freudenthal_mult, is_extremal, reflect_dim, reflect_param, rho_vector
from .hw import build_hw_module, weight_space_dim
from .fock import FockSpace, crystal_op, heis_filtration_dims
from .integral import grassmannian_singular_count, integral_roots, predicted_count
from .walls import (
    classical_walls,
    perverse_profile,
    quantum_walls,
    singular_hyperplanes,
    slice_data,
    translation_bad_hyperplanes,
)
from .partitions import mullineux, wallcross_map
