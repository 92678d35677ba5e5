"""Exact homology of 2-complexes, their finite abelian covers, and abelian-group gap invariants."""

from .exactla import IntegerMatrix, PrimeFieldMatrix, SmithForm, smith_normal_form, rank_mod_p, kernel_basis_mod_p
from .chain import ChainComplex, HomologyProfile, homology, betti_numbers, euler_characteristic, tensor_product, reduce_mod_p
from .grouppres import (
    FinitePresentation,
    FiniteAbelianGroup,
    Epimorphism,
    presentation_complex,
    fox_derivative,
    reidemeister_schreier,
    catalog,
    parse_word,
)
from .covers import CoverSpec, CoverComplex, build_cover, deck_action_on_h1, subnormal_series
from .modrep import ModuleDecomposition, nilpotent_block, decompose, cohomology_zp
from .abelian import FgAbelianGroup, GapReport, gap, kunneth_oracle, parse_abelian
from .roselab import RoseVerdict, rose_check, verify_theorem1, verify_carlsson, deficiency_ledger, screen_d2_conditions

__version__ = "0.1.0"
