"""Real-time GUI design feedback: visual-complexity scores, template
recommendations and attention heatmaps for mobile layout documents."""

from .attention import (AttentionMap, AttentionUnavailableError,
                        BaselineSaliencyModel, SaliencyConfig, attention_map,
                        baseline_saliency, colormap_rgb, render_heatmap_png)
from .autoencoder import (AutoencoderWeights, TrainConfig, TrainReport,
                          embed, embed_many, forward, init_weights,
                          load_weights, load_weights_file, save_weights,
                          save_weights_file, train_autoencoder)
from .bundle import FeedbackBundle, FeedbackOptions, assemble_feedback
from .corpus import (Corpus, CorpusEntry, EmptyCorpusError, Histogram,
                     RuleSet, ingest, load_index, load_index_file, percentile,
                     save_index, save_index_file)
from .knn import cosine_distance, knn_query
from .layout import (AppMeta, Bounds, Element, LayoutDocument, LayoutError,
                     LayoutParseError, LayoutValidationError, TextStyle,
                     document_from_dict, document_from_rico, document_to_dict,
                     leaves, parse_layout, scale_to_canvas, serialize_layout)
from .metrics import (METRIC_NAMES, MetricReport, alignment, color_unity,
                      density, element_balance, element_size, evaluate,
                      font_unity, overall_rating)
from .palette import ColorSwatch, dominant_palette
from .raster import rasterize
from .recommend import Recommendation, recommend

__version__ = "0.1.0"
