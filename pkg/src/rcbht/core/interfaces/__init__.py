"""Plugin interfaces."""

from .schema import BaseTrialSchema

__all__ = ["BaseTrialSchema"]
