"""Fixtures shared by the test modules: the three hand-drawn diagrams and a
cached pool of generated ones."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

from heegaard.hdg import parse_hdg
from heegaard.moves import connected_sum, genus_one_sphere, random_diagram

DATA = Path(__file__).parent / "data"


def load(name: str):
    return parse_hdg((DATA / name).read_text())


D1 = load("d1.hdg")
D2 = load("d2.hdg")
S3 = load("s3.hdg")

# Starting diagrams for the generator; the ones with det > 1 make J fractional.
STARTS = (genus_one_sphere(), D1, D2, connected_sum(D1, D2))


@lru_cache(maxsize=None)
def fuzzed(seed: int, steps: int = 12, genus_max: int = 3):
    """A generated diagram; the start cycles through :data:`STARTS`."""
    return random_diagram(seed, steps, genus_max, start=STARTS[seed % len(STARTS)])
