import logging

from .seifert import SeifertMatrix, validate, alexander, arf, determinant, block_sum, mirror
from .signatures import lt_signature, sig_sum, sig_profile, sig_integral, rho_cyclic
from .concordance import fox_milnor, Metabolizer, verify_metabolizer, search_metabolizer, is_algebraically_slice
from .forge import CGBound, FamilyDescriptor, forge_family, extend_family, verify_lemma_conditions
from .certificate import Certificate, Verdict, certify_linear_combination, certify_coprime_nonconcordance, reverify

__all__ = [
    "SeifertMatrix",
    "validate",
    "alexander",
    "arf",
    "determinant",
    "block_sum",
    "mirror",
    "lt_signature",
    "sig_sum",
    "sig_profile",
    "sig_integral",
    "rho_cyclic",
    "fox_milnor",
    "Metabolizer",
    "verify_metabolizer",
    "search_metabolizer",
    "is_algebraically_slice",
    "CGBound",
    "FamilyDescriptor",
    "forge_family",
    "extend_family",
    "verify_lemma_conditions",
    "Certificate",
    "Verdict",
    "certify_linear_combination",
    "certify_coprime_nonconcordance",
    "reverify",
]

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
