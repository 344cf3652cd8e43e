"""Seeded random points of the disk and deterministic point sequences.

Every random draw goes through :func:`rng_for`, so a ``(seed, index)`` pair
pins down the stream regardless of how trials are scheduled.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterator

import numpy as np

from .errors import InputError
from .jsonio import parse_complex

__all__ = ["GENERATOR_INFO", "rng_for", "draw_omegas", "omega_rule"]

# numpy's PCG64: 128-bit LCG state, XSL-RR output; streams seeded by SeedSequence
GENERATOR_INFO = {
    "bit_generator": "PCG64",
    "multiplier": "0x2360ed051fc65da44385df649fccf645",
    "seeding": "numpy.random.SeedSequence([seed, index])",
    "omega_sampler": "rejection from the square [-r, r]^2, (re, im) drawn as one uniform pair",
}


def rng_for(seed: int, index: int = 0) -> np.random.Generator:
    if not (0 <= seed < 2**64) or index < 0:
        raise InputError(f"seed must be a 64-bit unsigned integer, got {seed!r}")
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(index)])))


def draw_omegas(rng: np.random.Generator, n: int, radius: float = 0.8) -> list[complex]:
    """``n`` points uniform in the open disk of the given radius."""
    if not 0.0 < radius < 1.0:
        raise InputError(f"radius must lie in (0, 1), got {radius!r}")
    out: list[complex] = []
    while len(out) < n:
        x, y = rng.uniform(-radius, radius, size=2)
        if x * x + y * y < radius * radius:
            out.append(complex(x, y))
    return out


_RULES: dict[str, Callable[[complex], Callable[[int], complex]]] = {
    # 1 - r^k: tends to the circle, Blaschke-summable
    "geometric": lambda r: (lambda k: 1.0 - r**k),
    # r^k: tends to 0
    "power": lambda r: (lambda k: r**k),
    "constant": lambda c: (lambda k: c),
}


def omega_rule(rule: str) -> Iterator[complex]:
    """Infinite sequence ``omega_1, omega_2, ...`` from ``"name:param"``.

    ``geometric:r`` gives ``1 - r^k``, ``power:r`` gives ``r^k`` and
    ``constant:c`` repeats ``c`` (complex ``c`` allowed, e.g. ``0.3+0.2i``).
    """
    name, sep, param = rule.partition(":")
    if name not in _RULES or not sep:
        raise InputError(f"unknown omega rule {rule!r}; expected one of {sorted(_RULES)} as name:param")
    value = parse_complex(param)
    if name != "constant":
        if value.imag != 0 or not 0.0 <= value.real < 1.0:
            raise InputError(f"{name} rule needs a real parameter in [0, 1), got {param!r}")
        value = value.real
    term = _RULES[name](value)
    return (complex(term(k)) for k in itertools.count(1))
