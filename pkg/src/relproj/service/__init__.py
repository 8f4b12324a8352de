"""HTTP service wrapping the core package for interactive, multi-client use."""
