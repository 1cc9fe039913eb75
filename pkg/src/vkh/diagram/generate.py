"""Seeded random diagrams for fuzzing."""

from __future__ import annotations

import random

from vkh.diagram.codes import link_from_gauss
from vkh.diagram.core import VirtualDiagram


def random_gauss_words(n: int, components: int, rng: random.Random) -> list:
    """Random signed double-occurrence words on labels 1..n split into components."""
    tokens = [lab for lab in range(1, n + 1) for _ in range(2)]
    rng.shuffle(tokens)
    level_first = {lab: rng.choice("OU") for lab in range(1, n + 1)}
    sign = {lab: rng.choice("+-") for lab in range(1, n + 1)}
    seen = set()
    words = []
    for lab in tokens:
        if lab in seen:
            level = "U" if level_first[lab] == "O" else "O"
        else:
            level = level_first[lab]
            seen.add(lab)
        words.append(f"{level}{lab}{sign[lab]}")
    components = max(1, components)
    cuts = sorted(rng.randint(0, len(words)) for _ in range(components - 1))
    bounds = [0] + cuts + [len(words)]
    return ["".join(words[bounds[i]:bounds[i + 1]]) for i in range(components)]


def random_diagram(n: int, components_hint: int = 1, seed=None) -> VirtualDiagram:
    """A uniformly random signed Gauss diagram with n crossings.

    For ``components_hint == 1`` this is a uniform signed double-occurrence
    word of length 2n.  For more components the shuffled word is cut at
    random points, one piece per component (an empty piece is a free loop),
    so the component count is exactly ``components_hint``.
    """
    if n < 0:
        raise ValueError("crossing count must be non-negative")
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    return link_from_gauss(random_gauss_words(n, components_hint, rng))
