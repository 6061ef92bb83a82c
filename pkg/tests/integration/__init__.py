"""Integration tests for LTAI News."""

