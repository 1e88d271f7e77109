"""Reading sequence databases and writing mining results."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import re
import sys
from dataclasses import dataclass
from typing import IO, Literal

from .miner import MiningResult
from .model import Alphabet, Sequence, SequenceDatabase, decimal_string, format_pattern

__all__ = [
    "InputError", "EmptyDatabaseError", "InputSpec",
    "read_database", "parse_database", "split_fixed_length",
    "result_document", "write_results", "write_plain", "CSV_HEADER",
]

CSV_HEADER = ("pattern", "length", "support", "ofs", "rate")

_FASTA_OK = re.compile(r"[A-Za-z]")


class InputError(ValueError):
    pass


class EmptyDatabaseError(InputError):
    pass


@dataclass(frozen=True)
class InputSpec:
    path: str = "-"
    format: Literal["plain", "fasta"] = "plain"
    tokenizer: Literal["char", "token"] = "char"
    case: Literal["preserve", "fold-upper"] = "preserve"
    permissive: bool = False

    def __post_init__(self):
        if self.format not in ("plain", "fasta"):
            raise ValueError(f"unknown input format {self.format!r}")
        if self.tokenizer not in ("char", "token"):
            raise ValueError(f"unknown tokenizer {self.tokenizer!r}")
        if self.case not in ("preserve", "fold-upper"):
            raise ValueError(f"unknown case policy {self.case!r}")


def _read_bytes(path: str) -> bytes:
    try:
        if path == "-":
            return sys.stdin.buffer.read()
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc


def read_database(spec: InputSpec) -> SequenceDatabase:
    """Load the database described by ``spec``.

    ``db.digest`` holds the SHA-256 of the raw input.
    """
    data = _read_bytes(spec.path)
    return parse_database(data, spec)


def parse_database(data: bytes | str, spec: InputSpec = InputSpec()) -> SequenceDatabase:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not UTF-8: {exc}") from exc
    else:
        text = data
        data = text.encode("utf-8")
    digest = hashlib.sha256(data).hexdigest()
    if spec.case == "fold-upper":
        text = text.upper()
    lines = text.splitlines()
    rows = _fasta_rows(lines, spec) if spec.format == "fasta" else _plain_rows(lines, spec)
    if not rows:
        raise EmptyDatabaseError("input holds no sequences")
    alphabet = Alphabet()
    seqs = []
    for k, row in enumerate(rows):
        try:
            seqs.append(Sequence(k, tuple(alphabet.add(tok) for tok in row)))
        except ValueError as exc:
            raise InputError(f"sequence {k + 1}: {exc}") from exc
    return SequenceDatabase(alphabet, tuple(seqs), digest)


def _tokens(line: str, tokenizer: str) -> list[str]:
    return list(line) if tokenizer == "char" else line.split()


def _plain_rows(lines: list[str], spec: InputSpec) -> list[list[str]]:
    rows = []
    for line in lines:
        if spec.tokenizer == "char":
            line = line.strip()
        toks = _tokens(line, spec.tokenizer)
        if toks:
            rows.append(toks)
    return rows


def _fasta_rows(lines: list[str], spec: InputSpec) -> list[list[str]]:
    rows: list[list[str]] = []
    current: list[str] | None = None
    bad: set[str] = set()
    for line in lines:
        if line.startswith(">"):
            if current:
                rows.append(current)
            current = []
            continue
        if current is None:
            if line.strip():
                raise InputError("FASTA input must start with a '>' header")
            continue
        if spec.tokenizer == "char":
            toks = list(line.strip())
            if not spec.permissive:
                bad.update(t for t in toks if not _FASTA_OK.fullmatch(t))
        else:
            toks = line.split()
        current.extend(toks)
    if current:
        rows.append(current)
    if bad:
        listing = " ".join(repr(b) for b in sorted(bad))
        raise InputError(f"FASTA records contain non-letter characters: {listing}")
    return rows


def split_fixed_length(db: SequenceDatabase, chunk: int) -> SequenceDatabase:
    """Cut every sequence into consecutive pieces of ``chunk`` items.

    A shorter tail piece is kept, so the total length is unchanged.
    """
    if chunk < 1:
        raise ValueError("chunk must be >= 1")
    pieces = []
    for s in db.sequences:
        for start in range(0, len(s.items), chunk):
            pieces.append(Sequence(len(pieces), s.items[start:start + chunk]))
    return SequenceDatabase(db.alphabet, tuple(pieces), db.digest)


def write_plain(db: SequenceDatabase, out: IO[str], tokenizer: str = "char") -> None:
    sep = "" if tokenizer == "char" else " "
    for s in db.sequences:
        out.write(sep.join(db.alphabet.token(i) for i in s.items))
        out.write("\n")


# --- results ----------------------------------------------------------------

def _rows(result: MiningResult, levels=None):
    alphabet, gap = result.db.alphabet, result.config.gap
    for level in result.levels if levels is None else levels:
        for entry in level.entries:
            rec = entry.record
            yield (format_pattern(entry.pattern, alphabet, gap), len(entry.pattern),
                   rec.total_sup, rec.ofs, decimal_string(rec.rate))


def result_document(result: MiningResult, tokenizer: str = "char") -> dict:
    """JSON-ready document.  Wall-clock timings are left out so the output
    is reproducible byte for byte."""
    cfg = result.config
    levels = []
    for level in result.levels:
        levels.append({
            "length": level.length,
            "patterns": [
                {"pattern": p, "length": m, "support": sup, "ofs": ofs, "rate": rate}
                for p, m, sup, ofs, rate in _rows(result, [level])
            ],
        })
    return {
        "config": {
            "rho": str(cfg.rho),
            "gap": [cfg.gap.min_gap, cfg.gap.max_gap],
            "max_len": cfg.max_len,
            "positives_only": cfg.positives_only,
            "tokenizer": tokenizer,
            "input_digest": result.db.digest,
            "sequences": len(result.db),
            "total_length": result.db.total_length,
            "alphabet": list(result.db.alphabet.symbols),
        },
        "levels": levels,
        "stats": {
            "levels": [
                {"length": s.length, "candidates": s.candidates, "frequent": s.frequent}
                for s in result.stats.levels
            ],
            "total_candidates": result.stats.total_candidates,
            "peak_kv_bytes": result.stats.peak_kv_bytes,
        },
    }


def write_results(result: MiningResult, fmt: Literal["json", "csv"], destination: IO[str] | str,
                  tokenizer: str = "char") -> None:
    if fmt not in ("json", "csv"):
        raise ValueError(f"unknown output format {fmt!r}")
    buf = io.StringIO()
    if fmt == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        w.writerows(_rows(result))
    else:
        json.dump(result_document(result, tokenizer), buf, indent=2)
        buf.write("\n")
    if isinstance(destination, str):
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        destination.write(buf.getvalue())
