"""Binary and line-oriented serialization of factorizations.

Binary layout (all integers little-endian)::

    b"LZBG1" | N: u64 | n: u64 | n records
    record: 0x00 <byte>                      literal
            0x01 <length: u64> <source: u64> copy (source is 1-indexed)
"""

import struct

import numpy as np
from numba import njit

from .factorizer import Factorization

MAGIC = b"LZBG1"
_HEADER = struct.Struct("<5sQQ")
_COPY = struct.Struct("<QQ")


class DecodeError(ValueError):
    pass


class TruncatedStream(DecodeError):
    pass


class BadMagic(DecodeError):
    pass


class BadSource(DecodeError):
    pass


class LengthMismatch(DecodeError):
    pass


class BadRecord(DecodeError):
    pass


def encode(fact: Factorization, n_text=None) -> bytes:
    if n_text is None:
        n_text = fact.n_text
    lengths = np.asarray(fact.lengths, dtype=np.int64)
    refs = np.asarray(fact.refs, dtype=np.int64)
    copy = lengths > 0
    sizes = np.where(copy, 1 + _COPY.size, 2)
    offsets = _HEADER.size + np.cumsum(sizes) - sizes
    buf = np.zeros(_HEADER.size + int(sizes.sum()), dtype=np.uint8)
    buf[:_HEADER.size] = np.frombuffer(_HEADER.pack(MAGIC, n_text, len(lengths)), np.uint8)
    buf[offsets] = copy
    lit = offsets[~copy]
    buf[lit + 1] = refs[~copy]
    cop = offsets[copy]
    if len(cop):
        fields = np.stack([lengths[copy], refs[copy]], axis=1).astype("<u8")
        idx = cop[:, None] + 1 + np.arange(_COPY.size)
        buf[idx] = fields.view(np.uint8).reshape(-1, _COPY.size)
    return buf.tobytes()


# kernel status codes
_OK, _TRUNCATED, _BAD_FLAG, _ZERO_COPY, _BAD_SOURCE = 0, 1, 2, 3, 4


@njit(cache=True)
def _parse_records(buf, start, count, lengths, refs):
    pos = start
    n = len(buf)
    for k in range(count):
        if pos >= n:
            return _TRUNCATED, k
        flag = buf[pos]
        if flag == 0:
            if pos + 2 > n:
                return _TRUNCATED, k
            lengths[k] = 0
            refs[k] = buf[pos + 1]
            pos += 2
        elif flag == 1:
            if pos + 17 > n:
                return _TRUNCATED, k
            length = 0
            src = 0
            for b in range(8):
                length |= np.int64(buf[pos + 1 + b]) << (8 * b)
                src |= np.int64(buf[pos + 9 + b]) << (8 * b)
            if length == 0:
                return _ZERO_COPY, k
            lengths[k] = length
            refs[k] = src
            pos += 17
        else:
            return _BAD_FLAG, k
    return _OK, count


def parse(stream: bytes) -> Factorization:
    """Read the records of a binary stream without expanding them."""
    stream = bytes(stream)
    if stream[:len(MAGIC)] != MAGIC:
        if len(stream) < len(MAGIC) and MAGIC.startswith(stream):
            raise TruncatedStream("stream ends inside the header")
        raise BadMagic("stream does not start with LZBG1")
    if len(stream) < _HEADER.size:
        raise TruncatedStream("stream ends inside the header")
    _, n_text, count = _HEADER.unpack_from(stream, 0)
    if 2 * count > len(stream) - _HEADER.size:
        raise TruncatedStream(f"header announces {count} records, stream too short")
    lengths = np.empty(count, dtype=np.int64)
    refs = np.empty(count, dtype=np.int64)
    buf = np.frombuffer(stream, dtype=np.uint8)
    status, k = _parse_records(buf, _HEADER.size, count, lengths, refs)
    if status == _TRUNCATED:
        raise TruncatedStream(f"stream ends inside record {k}")
    if status == _BAD_FLAG:
        raise BadRecord(f"record {k} has an unknown flag byte")
    if status == _ZERO_COPY:
        raise BadRecord(f"copy record {k} has length 0")
    return Factorization(lengths, refs, n_text)


@njit(cache=True)
def _expand(lengths, refs, out):
    pos = 0
    for k in range(len(lengths)):
        length = lengths[k]
        if length == 0:
            out[pos] = refs[k]
            pos += 1
            continue
        src = refs[k] - 1
        if src < 0 or src >= pos:
            return _BAD_SOURCE, k, pos
        # left to right, so a source overlapping the copy reads fresh bytes
        for i in range(length):
            out[pos + i] = out[src + i]
        pos += length
    return _OK, len(lengths), pos


def expand(fact: Factorization, n_text=None) -> bytes:
    """Rebuild the text from its factors."""
    lengths = np.asarray(fact.lengths, dtype=np.int64)
    spans = int(np.maximum(lengths, 1).sum())
    out = np.empty(spans, dtype=np.uint8)
    status, k, pos = _expand(lengths, np.asarray(fact.refs, dtype=np.int64), out)
    if status == _BAD_SOURCE:
        raise BadSource(f"record {k}: copy source {int(fact.refs[k])} is not before position {pos + 1}")
    if n_text is not None and spans != n_text:
        raise LengthMismatch(f"decoded {spans} bytes, header says {n_text}")
    return out.tobytes()


def decode(stream: bytes) -> bytes:
    fact = parse(stream)
    return expand(fact, fact.n_text)


def to_text_format(fact: Factorization) -> str:
    lines = []
    for length, ref in zip(fact.lengths.tolist(), fact.refs.tolist()):
        lines.append(f"L {ref}" if length == 0 else f"C {length} {ref}")
    return "\n".join(lines) + ("\n" if lines else "")


def from_text_format(data: str) -> Factorization:
    pairs = []
    for lineno, line in enumerate(data.splitlines(), start=1):
        fields = line.split()
        if not fields:
            continue
        if fields[0] == "L" and len(fields) == 2:
            pairs.append((0, int(fields[1])))
        elif fields[0] == "C" and len(fields) == 3:
            pairs.append((int(fields[1]), int(fields[2])))
        else:
            raise BadRecord(f"line {lineno}: cannot parse {line!r}")
    return Factorization.from_pairs(pairs)
