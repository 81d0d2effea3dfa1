"""Versioned JSON documents for keys, ciphertexts and messages.

Every document carries ``format``, ``version`` and the full parameter set
(including the field's reduction polynomial), and is written with sorted
keys and fixed separators so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .errors import DegreeMismatch, InvalidParams, KeyFileError, ReduciblePolynomial
from .rlce import RlceParams, RlcePublicKey, RlceSecretKey, TwinMixer

VERSION = 1
PUBLIC = "rlcelab-public-key"
SECRET = "rlcelab-secret-key"
CIPHERTEXT = "rlcelab-ciphertext"
MESSAGE = "rlcelab-message"


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def params_to_dict(p: RlceParams) -> dict:
    return {"n": p.n, "k": p.k, "w": p.w, "t": p.t, "m": p.m, "reduction_poly": hex(p.reduction_poly)}


def params_from_dict(d: Any) -> RlceParams:
    try:
        poly = d["reduction_poly"]
        poly = int(poly, 16) if isinstance(poly, str) else int(poly)
        p = RlceParams(int(d["n"]), int(d["k"]), int(d["w"]), int(d["t"]), int(d["m"]), poly)
        p.field  # reject reducible polynomials at load time
        return p
    except (KeyError, TypeError, ValueError, InvalidParams, ReduciblePolynomial, DegreeMismatch) as exc:
        raise KeyFileError(f"bad parameter block: {exc}") from None


def _matrix(rows: Any, shape: tuple[int, int], order: int, name: str) -> np.ndarray:
    try:
        M = np.array(rows, dtype=np.int64)
    except (TypeError, ValueError):
        raise KeyFileError(f"{name} is not an integer matrix") from None
    if M.size == 0 and 0 in shape:
        return M.reshape(shape)
    if M.shape != shape:
        raise KeyFileError(f"{name} has shape {M.shape}, expected {shape}")
    if M.size and (M.min() < 0 or M.max() >= order):
        raise KeyFileError(f"{name} has entries outside GF({order})")
    return M


def _vector(values: Any, size: int, order: int, name: str) -> np.ndarray:
    return _matrix([values], (1, size), order, name)[0]


def _header(doc: Any, kind: str) -> RlceParams:
    if not isinstance(doc, dict):
        raise KeyFileError("document is not a JSON object")
    if doc.get("format") != kind:
        raise KeyFileError(f"expected a {kind} document, found {doc.get('format')!r}")
    if doc.get("version") != VERSION:
        raise KeyFileError(f"unsupported version {doc.get('version')!r}")
    return params_from_dict(doc.get("params"))


# public key ---------------------------------------------------------------


def public_key_to_dict(pk: RlcePublicKey) -> dict:
    return {
        "format": PUBLIC,
        "version": VERSION,
        "params": params_to_dict(pk.params),
        "matrix": pk.G.tolist(),
    }


def public_key_from_dict(doc: Any) -> RlcePublicKey:
    p = _header(doc, PUBLIC)
    G = _matrix(doc.get("matrix"), (p.k, p.length), p.field.order, "matrix")
    return RlcePublicKey(p, G)


# secret key ---------------------------------------------------------------


def secret_key_to_dict(sk: RlceSecretKey) -> dict:
    return {
        "format": SECRET,
        "version": VERSION,
        "params": params_to_dict(sk.params),
        "support": sk.x.tolist(),
        "multiplier": sk.y.tolist(),
        "mixers": [list(mx.as_tuple()) for mx in sk.mixers],
        "permutation": sk.permutation.tolist(),
        "random_columns": sk.random_columns.tolist(),
        "seed": sk.seed.hex(),
        "message_map": None if sk.message_map is None else sk.message_map.tolist(),
    }


def secret_key_from_dict(doc: Any) -> RlceSecretKey:
    p = _header(doc, SECRET)
    q = p.field.order
    n, k, w = p.n, p.k, p.w
    x = _vector(doc.get("support"), n, q, "support")
    y = _vector(doc.get("multiplier"), n, q, "multiplier")
    if np.unique(x).size != n or np.any(y == 0):
        raise KeyFileError("support must be distinct and multiplier nonzero")
    mixers = _matrix(doc.get("mixers"), (w, 4), q, "mixers")
    perm = _vector(doc.get("permutation"), p.length, p.length, "permutation")
    if np.unique(perm).size != p.length:
        raise KeyFileError("permutation is not a bijection")
    R = _matrix(doc.get("random_columns"), (k, w), q, "random_columns")
    mm = doc.get("message_map")
    message_map = None if mm is None else _matrix(mm, (k, k), q, "message_map")
    try:
        seed = bytes.fromhex(doc.get("seed", ""))
    except (TypeError, ValueError):
        raise KeyFileError("seed is not a hex string") from None
    F = p.field
    mx = tuple(TwinMixer(*(int(v) for v in row)) for row in mixers)
    if any(m.det(F) == 0 for m in mx):
        raise KeyFileError("singular mixer")
    return RlceSecretKey(p, x, y, mx, perm, R, seed, message_map)


# ciphertexts and messages -------------------------------------------------


def vector_to_dict(kind: str, params: RlceParams, v: np.ndarray) -> dict:
    return {"format": kind, "version": VERSION, "params": params_to_dict(params), "data": np.asarray(v).tolist()}


def vector_from_dict(doc: Any, kind: str) -> tuple[RlceParams, np.ndarray]:
    p = _header(doc, kind)
    size = p.length if kind == CIPHERTEXT else p.k
    return p, _vector(doc.get("data"), size, p.field.order, "data")


# files --------------------------------------------------------------------


def write_json(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc))


def read_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise KeyFileError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise KeyFileError(f"{path} is not valid JSON: {exc}") from None


def save_public_key(path, pk: RlcePublicKey) -> None:
    write_json(path, public_key_to_dict(pk))


def load_public_key(path) -> RlcePublicKey:
    return public_key_from_dict(read_json(path))


def save_secret_key(path, sk: RlceSecretKey) -> None:
    write_json(path, secret_key_to_dict(sk))


def load_secret_key(path) -> RlceSecretKey:
    return secret_key_from_dict(read_json(path))
