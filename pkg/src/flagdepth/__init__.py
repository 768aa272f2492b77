"""Exact halfspace depth, flag halfspaces and halfspace median sets."""
