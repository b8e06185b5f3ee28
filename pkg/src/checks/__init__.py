from .rules import add_result, record_check
from .validator import FAST, FULL, PROFILES, IdentityValidator
