"""Adapters for worker pools and sweep tables."""
