"""Integration tests for rcbht."""
