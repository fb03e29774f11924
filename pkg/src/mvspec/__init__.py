"""Finite MV-algebras: ideals, prime spectra, lattice duality, Γ-style
functors, classification, and McNaughton normal forms."""

from .classify import (
    classify,
    in_VC,
    in_VKm,
    is_local,
    is_perfect,
    is_primary,
    is_semisimple,
    is_supermaximal,
    local_spectrum_profile,
    rank,
)
from .errors import ConsistencyError, MvsError
from .lattice import (
    FiniteDistLattice,
    LatticeHom,
    closedness_verdicts,
    dual_closure_equalities,
    dual_preserves_closed,
    is_closed_epi_defn,
    is_closed_epi_downsets,
    is_closed_epi_ideals,
    stone_dual,
)
from .lgroups import (
    LexGroup,
    SymbolicMvAlgebra,
    belluce,
    chang,
    chang_op,
    delta,
    gamma,
    idc,
    komori,
    lukasiewicz,
    symbolic_spec,
    verify_lspec,
)
from .mcnaughton import NormalForm, eval_nf, is_locally_homogeneous, zeroset_1d
from .mv import FiniteMvAlgebra, MvHom, product, quotient, validate_algebra
from .spectra import O, V, enumerate_ideals, maximals, prime_ideals, radical, spec
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "belluce",
    "chang",
    "chang_op",
    "classify",
    "closedness_verdicts",
    "ConsistencyError",
    "delta",
    "dual_closure_equalities",
    "dual_preserves_closed",
    "enumerate_ideals",
    "eval_nf",
    "FiniteDistLattice",
    "FiniteMvAlgebra",
    "gamma",
    "idc",
    "in_VC",
    "in_VKm",
    "is_closed_epi_defn",
    "is_closed_epi_downsets",
    "is_closed_epi_ideals",
    "is_local",
    "is_locally_homogeneous",
    "is_perfect",
    "is_primary",
    "is_semisimple",
    "is_supermaximal",
    "komori",
    "LatticeHom",
    "LexGroup",
    "local_spectrum_profile",
    "lukasiewicz",
    "maximals",
    "MvHom",
    "MvsError",
    "NormalForm",
    "O",
    "prime_ideals",
    "product",
    "quotient",
    "radical",
    "rank",
    "run_verify",
    "spec",
    "stone_dual",
    "symbolic_spec",
    "SymbolicMvAlgebra",
    "V",
    "validate_algebra",
    "verify_lspec",
    "zeroset_1d",
]
