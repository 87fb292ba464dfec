"""Named random substreams derived from one master seed.

Every random decision in the pipeline draws from a counter-based Philox
stream addressed by (master seed, stage tag, indices).  Streams are
independent of each other and of the order in which they are created, so
any part of a run can be reproduced in isolation: a stroke can be
re-rasterized from its log entry without replaying the search that found
it.
"""

import numpy as np

_MASK64 = (1 << 64) - 1

# Stage tags.  New stages must use fresh values; reusing one would alias
# streams between stages.
SCAN = 1
STROKE = 2


def substream(seed, tag, i=0, j=0):
    """Return a ``numpy.random.Generator`` for the addressed stream."""
    key = ((tag & _MASK64) << 64) | (seed & _MASK64)
    counter = ((i & _MASK64) << 192) | ((j & _MASK64) << 128)
    return np.random.Generator(np.random.Philox(counter=counter, key=key))


def scan_stream(seed, dir_index, level_index):
    """Stream driving the scan-row spacing for one (direction, level) pass."""
    return substream(seed, SCAN, dir_index, level_index)


def stroke_stream(seed, cursor):
    """Stream rasterizing the stroke with the given cursor id."""
    return substream(seed, STROKE, cursor)
