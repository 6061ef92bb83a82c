"""Unit tests for LTAI News."""

