"""Tests unitaires du paquet vgstein."""
