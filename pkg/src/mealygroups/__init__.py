"""Mealy machine algebra, machine groups, and an infinite dihedral recognizer."""

from .dihedral import (
    AFFINE_IDENTITY,
    SD_A,
    SD_IDENTITY,
    SD_X,
    AffineMap,
    SemidirectElement,
    affine_apply,
    affine_compose,
    affine_inverse,
    affine_to_semidirect,
    format_affine,
    format_semidirect,
    internal_decomposition_check,
    isometry_check,
    sd_inv,
    sd_mul,
    sd_pow,
    semidirect_to_affine,
    sign_action,
    xa_normal_form,
)
from .elements import (
    CanonicalElement,
    GrowthTable,
    element_from_word,
    elements_equal,
    enumerate_elements,
    find_relations,
    format_generator_word,
    order,
    parse_generator_word,
)
from .machine import (
    Alphabet,
    DomainError,
    MealyMachine,
    PointedMachine,
    UsageError,
    WordAction,
    compose,
    identity_machine,
    machines_equal,
    minimize,
    validate,
)
from .machinefile import (
    BUILTIN_MACHINES,
    V26_SOURCE,
    MachineParseError,
    builtin_machine,
    parse_machine_file,
    parse_machine_text,
    render_machine_text,
    to_dot,
)
from .recognizer import (
    CertifiedDihedral,
    DegenerateGenerators,
    DihedralVerdict,
    Inconclusive,
    InfinitenessCertificate,
    NotInvolutions,
    OrbitCollisionError,
    certificate_report,
    certify_infinite,
    coordinates,
    flip_witness,
    format_word,
    recognize_dihedral,
    zero_tail_bound_check,
)

__version__ = "0.1.0"
