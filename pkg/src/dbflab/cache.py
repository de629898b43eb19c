"""Versioned text cache.

Each file starts with ``DBFLAB v1 <kind> <params> <sha256-of-body>``.  Writes go
to a temporary file in the same directory followed by an atomic rename; reads
check the hash and refuse corrupted files instead of regenerating them.
"""
from __future__ import annotations

import hashlib
import os
import tempfile
import threading
from pathlib import Path

VERSION = "v1"
_LOCK = threading.Lock()


class CacheError(RuntimeError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def cache_dir() -> Path:
    env = os.environ.get("DBFLAB_CACHE")
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "dbflab"


def enabled() -> bool:
    return os.environ.get("DBFLAB_CACHE", "") != "off"


def file_name(kind: str, params: tuple) -> str:
    return ".".join([kind, *map(str, params), "dat"])


def _digest(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()


def write(kind: str, params: tuple, lines: list[str], directory: Path | None = None) -> Path:
    directory = Path(directory or cache_dir())
    directory.mkdir(parents=True, exist_ok=True)
    body = "".join(line + "\n" for line in lines)
    header = f"DBFLAB {VERSION} {kind} {','.join(map(str, params))} {_digest(body)}\n"
    target = directory / file_name(kind, params)
    with _LOCK:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=target.name + ".", suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(header + body)
            os.replace(tmp, target)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    return target


def read(kind: str, params: tuple, directory: Path | None = None) -> list[str] | None:
    """Lines of the body, or None when the file does not exist."""
    path = Path(directory or cache_dir()) / file_name(kind, params)
    if not path.exists():
        return None
    return read_path(path, kind, params)


def read_path(path: Path, kind: str | None = None, params: tuple | None = None) -> list[str]:
    raw = Path(path).read_bytes()
    try:
        text = raw.decode()
    except UnicodeDecodeError as exc:
        raise CacheError("E_CACHE_HASH", f"{path} is not valid text") from exc
    header, _, body = text.partition("\n")
    fields = header.split(" ")
    if len(fields) != 5 or fields[0] != "DBFLAB":
        raise CacheError("E_CACHE_FORMAT", f"{path} has no DBFLAB header")
    if fields[1] != VERSION:
        raise CacheError("E_CACHE_VERSION", f"{path} has version {fields[1]}, expected {VERSION}")
    if kind is not None and fields[2] != kind:
        raise CacheError("E_CACHE_FORMAT", f"{path} holds {fields[2]}, expected {kind}")
    if params is not None and fields[3] != ",".join(map(str, params)):
        raise CacheError("E_CACHE_FORMAT", f"{path} holds parameters {fields[3]}")
    if _digest(body) != fields[4]:
        raise CacheError("E_CACHE_HASH", f"{path} failed its content hash")
    return body.splitlines()


def list_entries(directory: Path | None = None) -> list[Path]:
    d = Path(directory or cache_dir())
    if not d.exists():
        return []
    return sorted(p for p in d.iterdir() if p.name.endswith(".dat"))


def verify_all(directory: Path | None = None) -> list[tuple[Path, str | None]]:
    out = []
    for p in list_entries(directory):
        try:
            read_path(p)
            out.append((p, None))
        except CacheError as exc:
            out.append((p, exc.code))
    return out


def clear(directory: Path | None = None) -> int:
    n = 0
    for p in list_entries(directory):
        p.unlink()
        n += 1
    return n


# -- typed payloads -------------------------------------------------------------
def save_htilde(n: int, table: dict) -> Path | None:
    """table: mu -> SymFunc in s basis."""
    from .partitions import format_partition

    if not enabled():
        return None
    lines = []
    for mu in sorted(table, key=lambda x: tuple(-y for y in x)):
        for la, c in table[mu].items():
            lines.append(f"{format_partition(mu)} {format_partition(la)} {c}")
    return write("htilde", (n,), lines)


def load_htilde_degree(n: int) -> dict | None:
    from .mpoly import parse_mpoly
    from .partitions import parse_partition
    from .symfunc import SymFunc

    if not enabled():
        return None
    lines = read("htilde", (n,))
    if lines is None:
        return None
    table: dict = {}
    for line in lines:
        a, b, poly = line.split(" ", 2)
        table.setdefault(parse_partition(a), {})[parse_partition(b)] = parse_mpoly(poly)
    return {mu: SymFunc._raw("s", terms) for mu, terms in table.items()}
