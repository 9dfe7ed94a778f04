"""Subgroup lifting through extensions."""
