"""
Certifiers Package - ein Certifier pro CLI-Verb.
"""

from typing import Dict, Type

from .base import BaseCertifier, fam_summary
from .homotopy import AdjunctionCertifier, Pi1Certifier
from .limits import ColimitCertifier, ExtensivityCertifier, LimitCertifier
from .locus import LocusFCertifier, LocusGCertifier, LocusRoundtripCertifier
from .site import AxiomsCertifier, CechCertifier, CoverCheckCertifier, CoverPullbackCertifier
from .structure import CoproductCertifier, DecomposeCertifier, Pi0Certifier, ValidateCertifier

# Registry: Verb -> Certifier, in der Reihenfolge der Hilfeausgabe
CERTIFIER_REGISTRY: Dict[str, Type[BaseCertifier]] = {
    cls.VERB: cls
    for cls in (
        ValidateCertifier,
        Pi0Certifier,
        Pi1Certifier,
        DecomposeCertifier,
        CoproductCertifier,
        ColimitCertifier,
        LimitCertifier,
        CoverCheckCertifier,
        CoverPullbackCertifier,
        CechCertifier,
        AdjunctionCertifier,
        LocusFCertifier,
        LocusGCertifier,
        LocusRoundtripCertifier,
        AxiomsCertifier,
        ExtensivityCertifier,
    )
}

__all__ = [
    "BaseCertifier",
    "fam_summary",
    "CERTIFIER_REGISTRY",
    "ValidateCertifier",
    "Pi0Certifier",
    "Pi1Certifier",
    "DecomposeCertifier",
    "CoproductCertifier",
    "ColimitCertifier",
    "LimitCertifier",
    "CoverCheckCertifier",
    "CoverPullbackCertifier",
    "CechCertifier",
    "AdjunctionCertifier",
    "LocusFCertifier",
    "LocusGCertifier",
    "LocusRoundtripCertifier",
    "AxiomsCertifier",
    "ExtensivityCertifier",
]
