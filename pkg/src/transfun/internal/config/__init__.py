"""Holds configuration schemas for the application."""

from .env import Config

__all__ = ["Config"]
