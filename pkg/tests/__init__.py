"""Test package for LTAI News."""

