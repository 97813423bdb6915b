"""On-disk cache of enumerated Weyl groups, keyed by (family, rank).

Each entry is a JSON file with a version header and a sha256 checksum over
the payload.  Any mismatch (version, root-list fingerprint, checksum, or
plain corruption) makes the loader return None so the caller regenerates.
"""

from __future__ import annotations

import hashlib
import json
import os

from .cartan import RootSystem, WeylElement, WeylGroup

CACHE_VERSION = 1

ENV_VAR = "RODIER_CACHE_DIR"


def default_dir() -> str:
    env = os.environ.get(ENV_VAR)
    if env:
        return env
    return os.path.join(os.path.expanduser("~"), ".cache", "gpseries")


def entry_path(cache_dir: str, rs: RootSystem) -> str:
    return os.path.join(cache_dir, f"weyl_{rs.cartan_type.label}.json")


def _roots_fingerprint(rs: RootSystem) -> str:
    blob = json.dumps(
        [[str(x) for x in v] for v in rs.roots], separators=(",", ":")
    ).encode()
    return hashlib.sha256(blob).hexdigest()


def _payload_checksum(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def store(cache_dir: str, rs: RootSystem, wg: WeylGroup) -> str:
    os.makedirs(cache_dir, exist_ok=True)
    payload = {
        "family": rs.cartan_type.family,
        "rank": rs.cartan_type.rank,
        "roots_fingerprint": _roots_fingerprint(rs),
        "perms": [list(w.perm) for w in wg.elements],
        "words": [list(w.word) for w in wg.elements],
    }
    doc = {
        "version": CACHE_VERSION,
        "checksum": _payload_checksum(payload),
        "payload": payload,
    }
    path = entry_path(cache_dir, rs)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(doc, fh, separators=(",", ":"))
    os.replace(tmp, path)
    return path


def load(cache_dir: str, rs: RootSystem) -> list[WeylElement] | None:
    path = entry_path(cache_dir, rs)
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    try:
        if doc["version"] != CACHE_VERSION:
            return None
        payload = doc["payload"]
        if doc["checksum"] != _payload_checksum(payload):
            return None
        if payload["family"] != rs.cartan_type.family:
            return None
        if payload["rank"] != rs.cartan_type.rank:
            return None
        if payload["roots_fingerprint"] != _roots_fingerprint(rs):
            return None
        if len(payload["perms"]) != rs.cartan_type.weyl_order():
            return None
        return [
            WeylElement(tuple(p), tuple(w))
            for p, w in zip(payload["perms"], payload["words"])
        ]
    except (KeyError, TypeError):
        return None


def clear(cache_dir: str) -> int:
    """Remove all cache entries; returns how many files were deleted."""
    if not os.path.isdir(cache_dir):
        return 0
    n = 0
    for name in sorted(os.listdir(cache_dir)):
        if name.startswith("weyl_") and name.endswith(".json"):
            os.remove(os.path.join(cache_dir, name))
            n += 1
    return n


def stat(cache_dir: str) -> list[dict]:
    """Per-entry summaries: label, element count, file size, checksum state."""
    out = []
    if not os.path.isdir(cache_dir):
        return out
    for name in sorted(os.listdir(cache_dir)):
        if not (name.startswith("weyl_") and name.endswith(".json")):
            continue
        path = os.path.join(cache_dir, name)
        info = {"file": name, "bytes": os.path.getsize(path)}
        try:
            with open(path) as fh:
                doc = json.load(fh)
            payload = doc["payload"]
            info["label"] = f"{payload['family']}{payload['rank']}"
            info["elements"] = len(payload["perms"])
            info["checksum_ok"] = doc["checksum"] == _payload_checksum(payload)
            info["checksum"] = doc["checksum"]
        except (OSError, json.JSONDecodeError, KeyError, TypeError):
            info["checksum_ok"] = False
        out.append(info)
    return out
