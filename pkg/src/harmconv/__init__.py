"""Harmonic convolution classes defined by kernel pairs.

Coefficient membership tests, extreme points, hypergeometric criteria,
integral transforms and a disk-sampling oracle for planar harmonic maps
``f = h + conj(g)`` normalized at the origin.
"""
from .series import *  # noqa: F401,F403
from .kernels import *  # noqa: F401,F403
from .membership import *  # noqa: F401,F403
from .hypergeom import *  # noqa: F401,F403
from .transforms import *  # noqa: F401,F403
from .oracle import *  # noqa: F401,F403
from . import hypergeom, kernels, membership, oracle, series, transforms

__version__ = "0.1.0"
