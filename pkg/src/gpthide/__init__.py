"""Data hiding in general probabilistic theories."""
