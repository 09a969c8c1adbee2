"""permband: permutation factorization under bounded-width transpositions.

Library layout:

- :mod:`permband.perm`       value types and permutation algebra
- :mod:`permband.codec`      rank/unrank codec and text parsing
- :mod:`permband.factorize`  constructive factorizations and verification
- :mod:`permband.cayley`     exact distances, diameters and farthest sets
- :mod:`permband.extremal`   closed forms, bounds, extremal classification
- :mod:`permband.amidakuji`  ladder lotteries
- :mod:`permband.cli`        command-line front end
"""

__version__ = "0.1.0"

from .amidakuji import Ladder, apply_ladder, synthesize, validate
from .cayley import (
    DiameterReport,
    GeneratorSet,
    MemoryCapExceeded,
    bfs_diameter,
    distance,
    distance_histogram,
    generator_set,
)
from .codec import (
    CODEC_VERSION,
    RankCodec,
    format_cycles,
    format_one_line,
    parse_permutation,
)
from .extremal import (
    DeltaBounds,
    ExtremalCase,
    ExtremalTag,
    classification_report,
    delta_bounds,
    delta_closed_form,
    enumerate_extremal,
    is_extremal,
)
from .factorize import (
    CycleClass,
    Factorization,
    TranspositionEffect,
    adjacent_sort,
    auto_factor,
    banded_factor,
    bfs_factor,
    classify_transposition,
    cycle_class,
    cycle_pair_factor,
    pair_condition,
    recursive_factor,
    single_cycle_factor,
    unrestricted_factor,
    verify,
)
from .perm import (
    CycleDecomposition,
    Permutation,
    Transposition,
    compose,
    cycle_decomposition,
    from_cycles,
    identity,
    inversion_count,
    invert,
    parity,
    transposition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
