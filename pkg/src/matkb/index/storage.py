"""Versioned binary serialization of the index.

Layout (all integers varint-encoded unless noted):

* header: magic ``MKBX`` (4 bytes), format version (u16 LE), paragraph /
  slot-key / token counts
* ordinal table: per paragraph, length-prefixed paragraph_id, article_id and
  text, the token count, and the mention triples (start, end, key id)
* slot dictionary: per key in id order, category index, value, posting length
* posting blocks: delta-encoded ordinals per slot key
* token dictionary: token and posting length per token in id order
* token postings: delta-encoded (ordinal gap, term frequency) pairs
* checksum: sha256 of everything above (32 raw bytes)

The format carries no compatibility promise beyond its version: loaders
reject unknown versions and a KB can always rebuild the index.
"""

import hashlib
import struct
from array import array
from pathlib import Path

from .build import SlotIndex

MAGIC = b"MKBX"
FORMAT_VERSION = 1


class IndexFormatError(ValueError):
    pass


def _write_varint(buf: bytearray, value: int) -> None:
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            buf.append(byte | 0x80)
        else:
            buf.append(byte)
            return


def _write_str(buf: bytearray, s: str) -> None:
    data = s.encode("utf-8")
    _write_varint(buf, len(data))
    buf.extend(data)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def varint(self) -> int:
        shift = 0
        value = 0
        while True:
            if self.pos >= len(self.data):
                raise IndexFormatError("truncated varint")
            byte = self.data[self.pos]
            self.pos += 1
            value |= (byte & 0x7F) << shift
            if not byte & 0x80:
                return value
            shift += 7

    def string(self) -> str:
        length = self.varint()
        raw = self.data[self.pos : self.pos + length]
        if len(raw) != length:
            raise IndexFormatError("truncated string")
        self.pos += length
        return raw.decode("utf-8")


def dump_index(index: SlotIndex) -> bytes:
    buf = bytearray()
    buf.extend(MAGIC)
    buf.extend(struct.pack("<H", FORMAT_VERSION))
    _write_varint(buf, index.n_paragraphs)
    _write_varint(buf, len(index.slot_postings))
    _write_varint(buf, len(index.token_postings))

    for ordinal in range(index.n_paragraphs):
        _write_str(buf, index.paragraph_ids[ordinal])
        _write_str(buf, index.article_ids[ordinal])
        _write_str(buf, index.texts[ordinal])
        _write_varint(buf, index.doc_lengths[ordinal])
        spans = index.mention_spans[ordinal]
        _write_varint(buf, len(spans) // 3)
        for v in spans:
            _write_varint(buf, v)

    ordered_keys = sorted(index.slot_keys.items(), key=lambda kv: kv[1])
    for (cat_idx, value), _kid in ordered_keys:
        _write_varint(buf, cat_idx)
        _write_str(buf, value)

    for postings in index.slot_postings:
        _write_varint(buf, len(postings))
        prev = 0
        for ordinal in postings:
            _write_varint(buf, ordinal - prev)
            prev = ordinal

    ordered_tokens = sorted(index.token_ids.items(), key=lambda kv: kv[1])
    for token, _tid in ordered_tokens:
        _write_str(buf, token)

    for flat in index.token_postings:
        _write_varint(buf, len(flat) // 2)
        prev = 0
        for k in range(0, len(flat), 2):
            _write_varint(buf, flat[k] - prev)
            _write_varint(buf, flat[k + 1])
            prev = flat[k]

    buf.extend(hashlib.sha256(bytes(buf)).digest())
    return bytes(buf)


def load_index_bytes(data: bytes) -> SlotIndex:
    if len(data) < 38 or data[:4] != MAGIC:
        raise IndexFormatError("not an index file (bad magic)")
    body, digest = data[:-32], data[-32:]
    if hashlib.sha256(body).digest() != digest:
        raise IndexFormatError("checksum mismatch; index file is corrupt")
    (version,) = struct.unpack_from("<H", data, 4)
    if version != FORMAT_VERSION:
        raise IndexFormatError(f"unsupported index format version {version}")

    r = _Reader(body)
    r.pos = 6
    n_paragraphs = r.varint()
    n_keys = r.varint()
    n_tokens = r.varint()

    paragraph_ids, article_ids, texts = [], [], []
    doc_lengths = array("I")
    mention_spans = []
    for _ in range(n_paragraphs):
        paragraph_ids.append(r.string())
        article_ids.append(r.string())
        texts.append(r.string())
        doc_lengths.append(r.varint())
        n_mentions = r.varint()
        flat = array("I")
        for _ in range(n_mentions * 3):
            flat.append(r.varint())
        mention_spans.append(flat)

    slot_keys = {}
    for kid in range(n_keys):
        cat_idx = r.varint()
        value = r.string()
        slot_keys[(cat_idx, value)] = kid

    slot_postings = []
    for _ in range(n_keys):
        length = r.varint()
        postings = array("I")
        prev = 0
        for _ in range(length):
            prev += r.varint()
            postings.append(prev)
        slot_postings.append(postings)

    token_ids = {}
    for tid in range(n_tokens):
        token_ids[r.string()] = tid

    token_postings = []
    for _ in range(n_tokens):
        length = r.varint()
        flat = array("I")
        prev = 0
        for _ in range(length):
            prev += r.varint()
            flat.append(prev)
            flat.append(r.varint())
        token_postings.append(flat)

    if r.pos != len(body):
        raise IndexFormatError("trailing bytes after index payload")

    return SlotIndex(
        paragraph_ids=paragraph_ids,
        article_ids=article_ids,
        texts=texts,
        doc_lengths=doc_lengths,
        slot_keys=slot_keys,
        slot_postings=slot_postings,
        mention_spans=mention_spans,
        token_ids=token_ids,
        token_postings=token_postings,
    )


def save_index(index: SlotIndex, path) -> None:
    Path(path).write_bytes(dump_index(index))


def load_index(path) -> SlotIndex:
    return load_index_bytes(Path(path).read_bytes())
