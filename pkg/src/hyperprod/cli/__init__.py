"""Command line surface: the click application and the reduction expression parser."""
