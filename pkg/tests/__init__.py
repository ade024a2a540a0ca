"""Test suite for hotaru-beam-lab."""
