"""pencilflow: renders a photograph as a pencil drawing built from
individually synthesized strokes, and can replay the drawing process.

Typical use::

    import pencilflow as pf

    rgb = pf.imgio.read_image("photo.jpg")
    result = pf.render_image(rgb, pf.Config(seed=7))
    pf.imgio.write_gray_png("sketch.png", result.final)
"""

from . import imgio, samples, vis
from .errors import (
    ConfigError,
    InputError,
    LogError,
    OutputError,
    PencilflowError,
    ReplayError,
)
from .etf import DirectionMasks, VectorField, init_etf, quantize_directions, refine_etf
from .pipeline import Config, PipelineResult, colorize, render_image, run_pipeline
from .process import (
    LogHeader,
    StrokeLog,
    build_log,
    importance,
    read_log,
    reorder,
    replay,
    stroke_importance,
    write_log,
)
from .raster import (
    GRAY_MAX,
    GradientField,
    RotationTransform,
    clahe,
    gradient,
    quantize,
    rotate,
    rotation_transform,
    to_grayscale,
)
from .renderer import (
    PlacedStroke,
    StrokeSpec,
    aggregate,
    compose_final,
    edge_map,
    extend_strokes,
    render_stroke,
    search_strokes,
)
from .stroke import (
    DistributionMatrix,
    StrokeRaster,
    bend,
    bend_profile,
    distribution_matrix,
    generate_stroke,
    synthesize_straight,
)

__version__ = "0.1.0"
