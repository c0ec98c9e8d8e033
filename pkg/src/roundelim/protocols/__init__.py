"""Runnable communication protocols with exact branch-level verification."""
