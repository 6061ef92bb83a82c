"""Test fixtures for mock YouTube API responses."""

