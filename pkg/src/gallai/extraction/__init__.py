from .basic import extract_triple, extract_two_colored, extract_weak_general
from .family import WitnessFamily
from .general import Certificate, CertificateReport, GeneralResult, extract_general, validate_certificate
from .tight3 import Tight3Result, extract_tight3

__all__ = [
    "Certificate",
    "CertificateReport",
    "GeneralResult",
    "Tight3Result",
    "WitnessFamily",
    "extract_general",
    "extract_tight3",
    "extract_triple",
    "extract_two_colored",
    "extract_weak_general",
    "validate_certificate",
]
