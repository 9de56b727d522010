"""Desk-scale 2D soccer: simulator, wire codec, proxy agent, RPC bridge."""

__version__ = "0.1.0"
