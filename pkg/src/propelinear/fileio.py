"""Flat-file formats: BINCODE, QCODE, QSTRUCT, PSTRUCT.

All are ASCII, newline-terminated, with a one-line header.  Readers are
strict: any deviation raises :class:`FormatError`.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .binary import ExplicitCode, word_to_str
from .errors import RejectedInput
from .mds import QuasigroupShape, mds_contains
from .phelps import CoordPerm
from .quat import MultiPerm, QuatWord, check_perm


class FormatError(RejectedInput):
    pass


_BIN_HEADER = re.compile(r"BINCODE v1 length=(\d+) size=(\d+)")
_Q_HEADER = re.compile(r"QCODE v1 length=(\d+) size=(\d+) shape=(\d+):([0-9,]*)")
_P_HEADER = re.compile(r"PSTRUCT v1 length=(\d+)")


def _lines(text: str, kind: str) -> List[str]:
    if not text.endswith("\n"):
        raise FormatError(f"{kind}: missing final newline")
    return text[:-1].split("\n")


def _header(line: str, pattern: re.Pattern, kind: str) -> re.Match:
    m = pattern.fullmatch(line)
    if m is None:
        raise FormatError(f"{kind}: bad header {line!r}")
    return m


def dump_bincode(code: ExplicitCode) -> str:
    out = [f"BINCODE v1 length={code.length} size={len(code)}"]
    out.extend(word_to_str(w, code.length) for w in code)
    return "\n".join(out) + "\n"


def load_bincode(text: str) -> ExplicitCode:
    lines = _lines(text, "BINCODE")
    m = _header(lines[0], _BIN_HEADER, "BINCODE")
    length, size = int(m.group(1)), int(m.group(2))
    body = lines[1:]
    if len(body) != size:
        raise FormatError(f"BINCODE: header says {size} words, found {len(body)}")
    if not 0 < length <= 64:
        raise FormatError(f"BINCODE: unsupported length {length}")
    words = []
    for k, s in enumerate(body, start=2):
        if len(s) != length or s.strip("01"):
            raise FormatError(f"BINCODE line {k}: not a {length}-bit word: {s!r}")
        words.append(int(s, 2))
    if any(a >= b for a, b in zip(words, words[1:])):
        raise FormatError("BINCODE: words are not strictly sorted")
    return ExplicitCode.from_words(length, words)


def dump_qcode(shape: QuasigroupShape, words: Sequence[QuatWord]) -> str:
    cuts = ",".join(map(str, shape.cuts))
    out = [f"QCODE v1 length={shape.n} size={len(words)} shape={shape.n}:{cuts}"]
    out.extend("".join(map(str, w)) for w in words)
    return "\n".join(out) + "\n"


def load_qcode(text: str) -> Tuple[QuasigroupShape, List[QuatWord]]:
    lines = _lines(text, "QCODE")
    m = _header(lines[0], _Q_HEADER, "QCODE")
    length, size, n = int(m.group(1)), int(m.group(2)), int(m.group(3))
    if n != length:
        raise FormatError(f"QCODE: shape length {n} differs from code length {length}")
    try:
        shape = QuasigroupShape.parse(n, m.group(4) or "none")
    except RejectedInput as exc:
        raise FormatError(f"QCODE: {exc}") from None
    body = lines[1:]
    if len(body) != size:
        raise FormatError(f"QCODE: header says {size} words, found {len(body)}")
    words = []
    for k, s in enumerate(body, start=2):
        if len(s) != length or s.strip("0123"):
            raise FormatError(f"QCODE line {k}: not a quaternary word of length {length}: {s!r}")
        w = tuple(int(c) for c in s)
        if not mds_contains(shape, w):
            raise FormatError(f"QCODE line {k}: {s} is not in the code of shape {shape.label()}")
        words.append(w)
    if any(a >= b for a, b in zip(words, words[1:])):
        raise FormatError("QCODE: words are not strictly sorted")
    return shape, words


def dump_qstruct(table: Mapping[QuatWord, MultiPerm]) -> str:
    out = ["QSTRUCT v1"]
    for w in sorted(table):
        images = "".join(str(v) for p in table[w] for v in p)
        out.append(f"{''.join(map(str, w))} | {images}")
    return "\n".join(out) + "\n"


def load_qstruct(text: str) -> Dict[QuatWord, MultiPerm]:
    lines = _lines(text, "QSTRUCT")
    if lines[0] != "QSTRUCT v1":
        raise FormatError(f"QSTRUCT: bad header {lines[0]!r}")
    table: Dict[QuatWord, MultiPerm] = {}
    for k, line in enumerate(lines[1:], start=2):
        try:
            word, images = line.split(" | ")
            w = tuple(int(c) for c in word)
            if len(images) != 4 * len(w) or set(word + images) - set("0123"):
                raise ValueError
            perms = tuple(check_perm([int(c) for c in images[4 * i: 4 * i + 4]]) for i in range(len(w)))
        except (ValueError, RejectedInput):
            raise FormatError(f"QSTRUCT line {k}: malformed entry {line!r}") from None
        if w in table:
            raise FormatError(f"QSTRUCT line {k}: duplicate word")
        table[w] = perms
    return table


def dump_pstruct(length: int, entries: Iterable[Tuple[int, CoordPerm]]) -> str:
    out = [f"PSTRUCT v1 length={length}"]
    for w, p in entries:
        out.append(f"{word_to_str(w, length)} | {' '.join(str(t + 1) for t in p)}")
    return "\n".join(out) + "\n"


def load_pstruct(text: str) -> Tuple[int, Dict[int, CoordPerm]]:
    lines = _lines(text, "PSTRUCT")
    length = int(_header(lines[0], _P_HEADER, "PSTRUCT").group(1))
    table: Dict[int, CoordPerm] = {}
    for k, line in enumerate(lines[1:], start=2):
        try:
            word, images = line.split(" | ")
            if len(word) != length or word.strip("01"):
                raise ValueError
            perm = tuple(int(t) - 1 for t in images.split(" "))
            if sorted(perm) != list(range(length)):
                raise ValueError
        except ValueError:
            raise FormatError(f"PSTRUCT line {k}: malformed entry {line!r}") from None
        w = int(word, 2)
        if w in table:
            raise FormatError(f"PSTRUCT line {k}: duplicate word")
        table[w] = perm
    return length, table
