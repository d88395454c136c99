"""slidegrid: slide-layout retrieval with occupancy-grid descriptors.

Builds a corpus of labeled slide layouts (optionally extracting slides from
presentation-video frame sequences), embeds layouts as grid descriptors,
answers top-k similar-layout queries, computes layout-density heatmaps for
shadow guidance, and serves it all over a small HTTP API.
"""

from .corpus import (
    CorpusFormatError,
    load_corpus,
    load_draft,
    load_feature_records,
    parse_draft,
    scan_corpus,
    write_corpus,
    write_feature_records,
)
from .descriptor import (
    DEFAULT_DESCRIPTOR_G,
    EmptyLayoutError,
    FeatureVector,
    embed,
    similarity,
)
from .extractor import (
    EmptyFrameSourceError,
    ExtractedSlide,
    ExtractorConfig,
    dhash,
    extract_directory,
    extract_slides,
    hamming,
    hash_to_hex,
)
from .heatmap import (
    DEFAULT_HEATMAP_G,
    EmptyCorpusError,
    HeatmapGrid,
    HeatmapMode,
    compute_heatmap,
    grid_to_record,
    layout_density,
    overlay_heatmap,
)
from .index import (
    DEFAULT_K,
    CorpusIndex,
    DuplicateIdError,
    EmptyQueryError,
    RetrievalResult,
    RetrievedSlide,
    build_index,
    build_index_from_features,
    query,
    upsert,
)
from .layout import (
    CATEGORIES,
    ElementCategory,
    LayoutElement,
    LayoutValidationError,
    Rect,
    SlideLayout,
    layout_to_record,
    rasterize,
    validate_layout,
)

__version__ = "0.1.0"

__all__ = [
    "CATEGORIES",
    "CorpusFormatError",
    "CorpusIndex",
    "DEFAULT_DESCRIPTOR_G",
    "DEFAULT_HEATMAP_G",
    "DEFAULT_K",
    "DuplicateIdError",
    "ElementCategory",
    "EmptyCorpusError",
    "EmptyFrameSourceError",
    "EmptyLayoutError",
    "EmptyQueryError",
    "ExtractedSlide",
    "ExtractorConfig",
    "FeatureVector",
    "HeatmapGrid",
    "HeatmapMode",
    "LayoutElement",
    "LayoutValidationError",
    "Rect",
    "RetrievalResult",
    "RetrievedSlide",
    "SlideLayout",
    "build_index",
    "build_index_from_features",
    "compute_heatmap",
    "dhash",
    "embed",
    "extract_directory",
    "extract_slides",
    "grid_to_record",
    "hamming",
    "hash_to_hex",
    "layout_density",
    "layout_to_record",
    "load_corpus",
    "load_draft",
    "load_feature_records",
    "overlay_heatmap",
    "parse_draft",
    "query",
    "rasterize",
    "scan_corpus",
    "similarity",
    "upsert",
    "validate_layout",
    "write_corpus",
    "write_feature_records",
]
