__all__ = [
    "JsonSerializer",
    "ReportSerializer",
    "dumps",
    "canonical_bytes",
]

from .jsonserializer import JsonSerializer, dumps, canonical_bytes
from .reportserializer import ReportSerializer
