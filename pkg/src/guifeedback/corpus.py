"""Template corpus: ingest, metric distributions and the GCIX index file.

A corpus is immutable once built.  Re-ingesting produces a new value that a
service can swap in atomically; concurrent readers need no locks.
"""

from __future__ import annotations

import logging
import struct
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from .layout import (AppMeta, LayoutDocument, LayoutError, element_count,
                     parse_layout, serialize_layout)
from .metrics import METRIC_NAMES, MetricReport, evaluate
from .raster import flatten_raster, rasterize

logger = logging.getLogger(__name__)

HISTOGRAM_BINS = 20

INDEX_MAGIC = b"GCIX"
INDEX_VERSION = 1

EMBEDDING_MODES = ("fallback", "trained")


class CorpusError(Exception):
    pass


class CorpusIOError(CorpusError):
    """Unreadable corpus directory or index file."""


class IndexFormatError(CorpusError):
    """Index bytes are not a readable GCIX container of a supported version."""


class IndexCorruptError(CorpusError):
    """Index bytes fail the checksum or are truncated."""


class EmptyCorpusError(CorpusError):
    """Operation undefined on an empty corpus (e.g. percentile)."""


@dataclass(frozen=True)
class Histogram:
    counts: tuple[int, ...]

    @classmethod
    def from_values(cls, values: list[float]) -> "Histogram":
        counts = [0] * HISTOGRAM_BINS
        for v in values:
            # bins are half-open [i/20, (i+1)/20); the last bin is closed
            idx = min(int(v * HISTOGRAM_BINS), HISTOGRAM_BINS - 1)
            counts[idx] += 1
        return cls(counts=tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    def to_dict(self) -> dict:
        return {"bin_count": HISTOGRAM_BINS, "range": [0.0, 1.0], "counts": list(self.counts)}


@dataclass(frozen=True)
class RuleSet:
    """Declarative ingest exclusion rules (the element counts are over the
    whole tree, not just leaves)."""
    excluded_categories: frozenset[str] = frozenset()
    min_elements: Optional[int] = None
    max_elements: Optional[int] = None

    def rejection_reason(self, doc: LayoutDocument, meta: AppMeta) -> Optional[str]:
        if meta.category in self.excluded_categories:
            return f"excluded category '{meta.category}'"
        n = element_count(doc)
        if self.min_elements is not None and n < self.min_elements:
            return f"too few elements ({n} < {self.min_elements})"
        if self.max_elements is not None and n > self.max_elements:
            return f"too many elements ({n} > {self.max_elements})"
        return None


@dataclass(frozen=True)
class SkipRecord:
    source: str
    reason: str


@dataclass(frozen=True, eq=False)
class CorpusEntry:
    id: str
    doc: LayoutDocument
    meta: AppMeta
    embedding: Optional[np.ndarray]
    report: MetricReport

    def __eq__(self, other) -> bool:
        if not isinstance(other, CorpusEntry):
            return NotImplemented
        if self.embedding is None or other.embedding is None:
            same_embedding = self.embedding is other.embedding
        else:
            same_embedding = np.array_equal(self.embedding, other.embedding)
        return (self.id == other.id and self.doc == other.doc
                and self.meta == other.meta and self.report == other.report
                and same_embedding)


@dataclass(eq=False)
class Corpus:
    entries: dict[str, CorpusEntry]
    distributions: dict[str, Histogram]
    embedding_mode: str = "fallback"
    skipped: tuple[SkipRecord, ...] = field(default=(), compare=False)
    _knn_cache: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.entries)

    def knn_index(self) -> tuple[list[str], np.ndarray, np.ndarray]:
        """(ids, embedding matrix, row norms), stacked once per corpus.

        The corpus is immutable after load, so the stacked float64 matrix and
        its norms are cached; queries then cost one matrix-vector product.
        """
        if self._knn_cache is None:
            ids = sorted(self.entries)
            missing = [i for i in ids if self.entries[i].embedding is None]
            if missing:
                raise ValueError(f"entries without embeddings: {missing[:3]}...")
            if ids:
                matrix = np.stack([np.asarray(self.entries[i].embedding, dtype=np.float64)
                                   for i in ids])
            else:
                matrix = np.zeros((0, 0), dtype=np.float64)
            self._knn_cache = (ids, matrix, np.linalg.norm(matrix, axis=1))
        return self._knn_cache

    def __eq__(self, other) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (self.embedding_mode == other.embedding_mode
                and self.distributions == other.distributions
                and list(self.entries) == list(other.entries)
                and all(self.entries[k] == other.entries[k] for k in self.entries))


def build_distributions(entries: dict[str, CorpusEntry]) -> dict[str, Histogram]:
    return {name: Histogram.from_values([e.report.score(name) for e in entries.values()])
            for name in METRIC_NAMES}


def build_corpus(docs: list[tuple[str, LayoutDocument]],
                 skipped: tuple[SkipRecord, ...] = ()) -> Corpus:
    """Assemble a fallback-mode corpus from parsed documents (id, doc)."""
    entries: dict[str, CorpusEntry] = {}
    for entry_id, doc in sorted(docs, key=lambda p: p[0]):
        meta = doc.meta or AppMeta(app_id=entry_id, category="unknown", rating=0.0)
        entries[entry_id] = CorpusEntry(
            id=entry_id,
            doc=doc,
            meta=meta,
            embedding=flatten_raster(rasterize(doc)),
            report=evaluate(doc),
        )
    return Corpus(entries=entries, distributions=build_distributions(entries),
                  embedding_mode="fallback", skipped=skipped)


def ingest(directory, rules: RuleSet = RuleSet()) -> Corpus:
    """Parse every ``*.json`` layout in a directory into a corpus.

    Files failing parse or the exclusion rules are skipped with a logged
    reason (also kept on ``corpus.skipped``).  Entry ids are the file stems;
    ordering is deterministic by id.
    """
    directory = Path(directory)
    try:
        files = sorted(p for p in directory.iterdir() if p.suffix == ".json")
    except OSError as exc:
        raise CorpusIOError(f"cannot read corpus directory {directory}: {exc}") from exc

    docs: list[tuple[str, LayoutDocument]] = []
    skipped: list[SkipRecord] = []
    for path in files:
        try:
            doc = parse_layout(path.read_text(encoding="utf-8"))
        except (LayoutError, OSError, UnicodeDecodeError) as exc:
            logger.warning("skipping %s: %s", path.name, exc)
            skipped.append(SkipRecord(source=path.name, reason=str(exc)))
            continue
        meta = doc.meta or AppMeta(app_id=path.stem, category="unknown", rating=0.0)
        reason = rules.rejection_reason(doc, meta)
        if reason is not None:
            logger.info("skipping %s: %s", path.name, reason)
            skipped.append(SkipRecord(source=path.name, reason=reason))
            continue
        docs.append((path.stem, doc))

    if not docs:
        logger.warning("ingest of %s produced an empty corpus", directory)
    return build_corpus(docs, skipped=tuple(skipped))


def percentile(corpus: Corpus, metric: str, value: float) -> float:
    """Fraction of corpus entries scoring strictly below ``value``.

    Ties fall above the bar, which keeps the result deterministic.
    """
    if metric not in METRIC_NAMES:
        raise ValueError(f"unknown metric {metric!r}")
    if not corpus.entries:
        raise EmptyCorpusError("percentile is undefined on an empty corpus")
    below = sum(1 for e in corpus.entries.values() if e.report.score(metric) < value)
    return below / len(corpus.entries)


def with_embeddings(corpus: Corpus, embeddings: dict[str, np.ndarray], mode: str) -> Corpus:
    """New corpus with replaced embeddings (used when switching to trained mode)."""
    if mode not in EMBEDDING_MODES:
        raise ValueError(f"unknown embedding mode {mode!r}")
    entries = {
        entry_id: CorpusEntry(id=e.id, doc=e.doc, meta=e.meta,
                              embedding=embeddings[entry_id], report=e.report)
        for entry_id, e in corpus.entries.items()
    }
    return Corpus(entries=entries, distributions=corpus.distributions, embedding_mode=mode)


# ---------------------------------------------------------------------------
# GCIX index container
# ---------------------------------------------------------------------------

def _pack_str(s: str) -> bytes:
    raw = s.encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


class _Reader:
    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.offset = offset

    def unpack(self, fmt: str):
        try:
            values = struct.unpack_from(fmt, self.data, self.offset)
        except struct.error as exc:
            raise IndexCorruptError(f"truncated index: {exc}") from exc
        self.offset += struct.calcsize(fmt)
        return values

    def read_str(self) -> str:
        (length,) = self.unpack("<I")
        end = self.offset + length
        if end > len(self.data):
            raise IndexCorruptError("truncated index: string runs past the end")
        raw = self.data[self.offset:end]
        self.offset = end
        return raw.decode("utf-8")

    def read_f32(self, count: int) -> np.ndarray:
        end = self.offset + count * 4
        if end > len(self.data):
            raise IndexCorruptError("truncated index: float block runs past the end")
        arr = np.frombuffer(self.data, dtype="<f4", count=count, offset=self.offset).copy()
        self.offset = end
        return arr


def save_index(corpus: Corpus) -> bytes:
    """Serialize to the versioned GCIX container (CRC32 trailer included)."""
    parts = [INDEX_MAGIC, struct.pack("<I", INDEX_VERSION),
             struct.pack("<B", EMBEDDING_MODES.index(corpus.embedding_mode)),
             struct.pack("<I", len(corpus.entries))]
    for entry in corpus.entries.values():
        parts.append(_pack_str(entry.id))
        parts.append(_pack_str(serialize_layout(entry.doc)))
        parts.append(_pack_str(entry.meta.app_id))
        parts.append(_pack_str(entry.meta.category))
        parts.append(struct.pack("<d", entry.meta.rating))
        if entry.embedding is None:
            parts.append(struct.pack("<I", 0))
        else:
            parts.append(struct.pack("<I", entry.embedding.size))
            parts.append(np.ascontiguousarray(entry.embedding, dtype="<f4").tobytes())
        parts.append(struct.pack("<7d", *(entry.report.score(m) for m in METRIC_NAMES),
                                 entry.report.overall))
    for name in METRIC_NAMES:
        parts.append(struct.pack(f"<{HISTOGRAM_BINS}I", *corpus.distributions[name].counts))
    body = b"".join(parts)
    return body + struct.pack("<I", zlib.crc32(body))


def load_index(data: bytes) -> Corpus:
    if data[:4] != INDEX_MAGIC:
        raise IndexFormatError("not a GCIX index (bad magic)")
    if len(data) < 8:
        raise IndexCorruptError("truncated index: missing checksum")
    (stored_crc,) = struct.unpack_from("<I", data, len(data) - 4)
    if zlib.crc32(data[:-4]) != stored_crc:
        raise IndexCorruptError("index checksum mismatch")

    reader = _Reader(data, offset=4)
    (version,) = reader.unpack("<I")
    if version != INDEX_VERSION:
        raise IndexFormatError(f"unsupported GCIX version {version}")
    (mode_idx,) = reader.unpack("<B")
    if mode_idx >= len(EMBEDDING_MODES):
        raise IndexFormatError(f"unknown embedding mode code {mode_idx}")
    (count,) = reader.unpack("<I")

    entries: dict[str, CorpusEntry] = {}
    for _ in range(count):
        entry_id = reader.read_str()
        doc = parse_layout(reader.read_str())
        app_id = reader.read_str()
        category = reader.read_str()
        (rating,) = reader.unpack("<d")
        (embed_len,) = reader.unpack("<I")
        embedding = reader.read_f32(embed_len) if embed_len else None
        scores = reader.unpack("<7d")
        report = MetricReport(*scores)
        entries[entry_id] = CorpusEntry(id=entry_id, doc=doc,
                                        meta=AppMeta(app_id, category, rating),
                                        embedding=embedding, report=report)
    distributions = {}
    for name in METRIC_NAMES:
        counts = reader.unpack(f"<{HISTOGRAM_BINS}I")
        distributions[name] = Histogram(counts=tuple(counts))
    return Corpus(entries=entries, distributions=distributions,
                  embedding_mode=EMBEDDING_MODES[mode_idx])


def save_index_file(corpus: Corpus, path) -> None:
    try:
        Path(path).write_bytes(save_index(corpus))
    except OSError as exc:
        raise CorpusIOError(f"cannot write index {path}: {exc}") from exc


def load_index_file(path) -> Corpus:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise CorpusIOError(f"cannot read index {path}: {exc}") from exc
    return load_index(data)
