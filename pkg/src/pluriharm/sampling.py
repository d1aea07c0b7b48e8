"""Deterministic sample points in the complex box."""

import numpy as np

from .errors import SamplerExhaustedError

DEFAULT_SAMPLES = 32
DEFAULT_SEED = 42
DEFAULT_BOX = 2.0
MAX_REJECTIONS = 10_000


def sample_points(n, count=DEFAULT_SAMPLES, seed=DEFAULT_SEED, box=DEFAULT_BOX, exclusion_radius=0.0, accept=None):
    """``count`` points of C^n, real and imaginary parts uniform on [-box, box].

    Points with norm below ``exclusion_radius`` are redrawn, as are points for
    which ``accept(z)`` is false.  Identical arguments give identical lists.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(seed)
    points = []
    rejected = 0
    while len(points) < count:
        z = rng.uniform(-box, box, n) + 1j * rng.uniform(-box, box, n)
        if np.linalg.norm(z) < exclusion_radius or (accept is not None and not accept(z)):
            rejected += 1
            if rejected > MAX_REJECTIONS:
                raise SamplerExhaustedError(
                    f"more than {MAX_REJECTIONS} consecutive rejections (n={n}, box={box}, radius={exclusion_radius})"
                )
            continue
        rejected = 0
        points.append(z)
    return points
