"""RLCE over GF(2^m), a square-code distinguisher and a full key recovery."""

from .attack import (
    RecoveredKey,
    TwinPairing,
    collect_all_pairs,
    find_twin_exposed,
    full_attack,
    match_twin,
    recover_mixer,
    recover_point_and_det,
    repair_degenerate,
    verify_equivalence,
)
from .codes import LinearCode
from .distinguisher import (
    DistinguisherInterval,
    ShorteningReport,
    interval,
    is_rlce_like,
    shortened_square_dim,
    theorem_bound,
)
from .estimators import RLCEKeyRecovery, SquareCodeDistinguisher
from .gf import GF, FieldElement, gf_new
from .grs import GrsParams, grs_decode, grs_encode, grs_generator, grs_interpolate
from .rlce import (
    DESK,
    PRESETS,
    PositionClassification,
    RlceParams,
    RlcePublicKey,
    RlceSecretKey,
    TwinMixer,
    classify_positions,
    decrypt,
    encrypt,
    keygen,
)
from .sidelnikov import sidelnikov_shestakov

__version__ = "0.1.0"
