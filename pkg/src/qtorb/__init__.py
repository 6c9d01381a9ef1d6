from .blowup import (
    BlowupSpec,
    McKayReport,
    Resolution,
    blow_up,
    crepant_candidates,
    make_blowup_spec,
    resolve,
    verify_mckay,
)
from .cohomology import CRBettiTable, EulerReport, check_poincare_duality, cr_betti, euler_cr
from .exceptions import (
    BlowupError,
    InvariantViolation,
    ModelError,
    ModelMismatchError,
    PolytopeError,
    QtorbError,
    UnsupportedOperation,
)
from .extras import DotDict
from .linalg import IntMatrix, determinant, smith_normal_form, solve_rational
from .main import main
from .model import (
    BoxElement,
    CharacteristicModel,
    TwistedSector,
    box_elements,
    interior_box_elements,
    inverse_sector,
    is_manifold,
    is_quasi_sl,
    local_group_order,
    twisted_sectors,
    validate_model,
    vertex_sign,
)
from .modelfile import dumps_model, load_fixture, load_model, save_model
from .polytope import CombinatorialPolytope, Face, h_vector, truncate
from .ring import sector_product, sector_product_table
from .settings import Settings

__all__ = [
    "Settings",
    "DotDict",
    "IntMatrix",
    "determinant",
    "smith_normal_form",
    "solve_rational",
    "CombinatorialPolytope",
    "Face",
    "h_vector",
    "truncate",
    "CharacteristicModel",
    "BoxElement",
    "TwistedSector",
    "validate_model",
    "local_group_order",
    "box_elements",
    "interior_box_elements",
    "twisted_sectors",
    "inverse_sector",
    "is_quasi_sl",
    "vertex_sign",
    "is_manifold",
    "CRBettiTable",
    "EulerReport",
    "cr_betti",
    "euler_cr",
    "check_poincare_duality",
    "BlowupSpec",
    "McKayReport",
    "Resolution",
    "make_blowup_spec",
    "blow_up",
    "crepant_candidates",
    "verify_mckay",
    "resolve",
    "sector_product",
    "sector_product_table",
    "load_model",
    "load_fixture",
    "save_model",
    "dumps_model",
    "QtorbError",
    "PolytopeError",
    "ModelError",
    "BlowupError",
    "UnsupportedOperation",
    "ModelMismatchError",
    "InvariantViolation",
    "main",
]
