"""Encoder-style forward passes, fixed-length and ragged.

The fixed-length ("nominal") half is the textbook stack: sinusoidal
positional encoding, Q/K/V maps, scaled dot-product attention with an
optional additive mask, multi-head concat, residual add + normalization,
and a two-layer feed-forward.  The ragged half replaces every linear stage
with its projection-based counterpart so each sequence keeps its own
length end to end:

    zero_pad_pipeline   pad with zeros, transform, truncate (the baseline)
    proj_pad_pipeline   resample via least-distance projection instead
    dv_attention        score hypervectors with the replication-averaged
                        inner product, apply the result through diamond
    dv_multi_head       combine heads by projected addition per component
    df_add_norm         residual add across differing lengths, then norm
    df_ffn              feed-forward whose linear maps act through diamond

When every sequence already has the nominal length, each ragged operation
agrees with its fixed-length counterpart to roundoff.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import SIZE_BUDGET, as_matrix, as_vector, lcm
from .errors import ShapeError, SizeBudgetError
from .hypervector import (
    HyperVector,
    diamond,
    diamond_general,
    hyper_add_listwise,
    hyper_inner,
    hyper_inner_weighted,
    _tile_components,
)
from .projection import project
from .stochastic import softmax_rows

SCALING_MODES = ("sqrt-n", "sqrt-s", "n")
MASK_MODES = ("none", "causal", "paper-literal")
PADDING_MODES = ("zero", "projection")
NORM_MODES = ("vector-wise", "layer-wise")


def relu(x):
    return np.maximum(np.asarray(x, dtype=float), 0.0)


@dataclass
class ModelConfig:
    """Shapes and mode switches for a forward pass.

    q_dims / k_dims / v_dims are the per-sequence lengths of the three
    projections (None means: keep the input profile).  padding selects the
    Q/K/V pipeline, scaling the attention denominator, mask the additive
    pattern, norm_mode how add-norm pools statistics.
    """

    batch_size: int
    nominal_dim: int
    heads: int = 1
    q_dims: tuple | None = None
    k_dims: tuple | None = None
    v_dims: tuple | None = None
    padding: str = "projection"
    scaling: str = "sqrt-n"
    mask: str = "none"
    layers: int = 1
    norm_mode: str = "vector-wise"
    eps: float = 1e-3

    def __post_init__(self):
        if self.batch_size < 1:
            raise ShapeError(f"batch_size must be positive, got {self.batch_size}")
        if self.nominal_dim < 1:
            raise ShapeError(f"nominal_dim must be positive, got {self.nominal_dim}")
        if self.heads < 1:
            raise ShapeError(f"heads must be positive, got {self.heads}")
        if self.layers < 0:
            raise ShapeError(f"layers must be nonnegative, got {self.layers}")
        for name in ("q_dims", "k_dims", "v_dims"):
            dims = getattr(self, name)
            if dims is None:
                continue
            dims = tuple(int(d) for d in dims)
            if len(dims) != self.batch_size:
                raise ShapeError(
                    f"{name} has {len(dims)} entries for batch size {self.batch_size}"
                )
            if any(d < 1 for d in dims):
                raise ShapeError(f"{name} entries must be positive, got {dims}")
            setattr(self, name, dims)
        if self.padding not in PADDING_MODES:
            raise ValueError(f"padding must be one of {PADDING_MODES}, got {self.padding!r}")
        if self.scaling not in SCALING_MODES:
            raise ValueError(f"scaling must be one of {SCALING_MODES}, got {self.scaling!r}")
        if self.mask not in MASK_MODES:
            raise ValueError(f"mask must be one of {MASK_MODES}, got {self.mask!r}")
        if self.norm_mode not in NORM_MODES:
            raise ValueError(f"norm_mode must be one of {NORM_MODES}, got {self.norm_mode!r}")
        if self.eps <= 0:
            raise ValueError(f"eps must be positive, got {self.eps}")


@dataclass
class AttentionWeights:
    """All learnable matrices of one encoder block (forward-only).

    wq/wk/wv act on individual sequence vectors (nominal-dim square).
    head_q/head_k/head_v are optional per-head maps: feature-space maps
    (r_i x n) in the nominal multi-head, batch-mixing (s x s) maps applied
    through diamond in the ragged block.  out_map is the single linear map
    after the nominal concat; out_maps are the per-component maps after the
    ragged combine.  ffn_* and the norm parameters feed the tail of a block.
    """

    wq: np.ndarray | None = None
    wk: np.ndarray | None = None
    wv: np.ndarray | None = None
    head_q: tuple | None = None
    head_k: tuple | None = None
    head_v: tuple | None = None
    out_map: np.ndarray | None = None
    head_weights: tuple | None = None
    out_maps: tuple | None = None
    ffn_w1: np.ndarray | None = None
    ffn_w2: np.ndarray | None = None
    ffn_b1: object = None
    ffn_b2: object = None
    gamma: float = 1.0
    beta: float = 0.0
    eps: float = 1e-3

    def head_count(self) -> int:
        return 1 if self.head_q is None else len(self.head_q)


# --- fixed-length (nominal) stages -----------------------------------------


def positional_encoding(s: int, d: int) -> np.ndarray:
    """s x d sinusoidal position matrix: column pair 2i is (sin, cos) of
    pos / 10000^(2i/d).  Row for position 0 is (0, 1, 0, 1, ...)."""
    if d < 2 or d % 2 != 0:
        raise ShapeError(f"positional encoding needs an even model dim >= 2, got {d}")
    if s < 1:
        raise ShapeError(f"need at least one position, got {s}")
    pos = np.arange(s, dtype=float)[:, None]
    i = np.arange(d // 2, dtype=float)[None, :]
    angles = pos / np.power(10000.0, 2.0 * i / d)
    P = np.empty((s, d))
    P[:, 0::2] = np.sin(angles)
    P[:, 1::2] = np.cos(angles)
    return P


def pe_apply(X) -> np.ndarray:
    """Add the sinusoidal position matrix to a stacked batch."""
    X = as_matrix(X)
    return X + positional_encoding(*X.shape)


def qkv_nominal(X, w: AttentionWeights):
    """Q, K, V for a stacked batch: each row x is mapped to W x (per matrix)."""
    X = as_matrix(X, "input batch")
    d = X.shape[1]
    out = []
    for name, W in (("wq", w.wq), ("wk", w.wk), ("wv", w.wv)):
        W = as_matrix(W, name)
        if W.shape != (d, d):
            raise ShapeError(f"{name} is {W.shape[0]} x {W.shape[1]}, expected {d} x {d}")
        out.append(X @ W.T)
    return tuple(out)


def scale_value(mode: str, n: int, s: int) -> float:
    if mode == "sqrt-n":
        return math.sqrt(n)
    if mode == "sqrt-s":
        return math.sqrt(s)
    if mode == "n":
        return float(n)
    raise ValueError(f"scaling must be one of {SCALING_MODES}, got {mode!r}")


def causal_mask(s: int, mode: str = "conventional") -> np.ndarray:
    """Additive s x s mask.  conventional blocks future positions
    (-inf strictly above the diagonal); paper-literal is the mirrored
    variant (-inf on and below the diagonal), kept behind this flag because
    its last row is entirely masked."""
    if s < 1:
        raise ShapeError(f"mask size must be positive, got {s}")
    upper = np.triu(np.ones((s, s), dtype=bool), k=1)  # j > i
    M = np.zeros((s, s))
    if mode == "conventional":
        M[upper] = -np.inf
    elif mode == "paper-literal":
        M[~upper] = -np.inf
    else:
        raise ValueError(f"mask mode must be 'conventional' or 'paper-literal', got {mode!r}")
    return M


def attention_nominal(Q, K, V, scale: str | float = "sqrt-n", mask=None,
                      return_weights: bool = False):
    """softmax(Q K^T / scale + mask) @ V for stacked batches.

    scale may be a mode name ("sqrt-n", "sqrt-s", "n", resolved against the
    feature dim n and batch s) or an explicit positive number.
    """
    Q, K, V = as_matrix(Q, "Q"), as_matrix(K, "K"), as_matrix(V, "V")
    s, n = Q.shape
    if K.shape != (s, n) or V.shape[0] != s:
        raise ShapeError(
            f"Q {Q.shape}, K {K.shape}, V {V.shape} are not a conforming attention triple"
        )
    denom = scale_value(scale, n, s) if isinstance(scale, str) else float(scale)
    if denom <= 0:
        raise ValueError(f"scale must be positive, got {denom}")
    E = Q @ K.T / denom
    if mask is not None:
        mask = np.asarray(mask, dtype=float)
        if mask.shape != (s, s):
            raise ShapeError(f"mask is {mask.shape}, expected ({s}, {s})")
        E = E + mask
    A = softmax_rows(E)
    out = A @ V
    return (out, A) if return_weights else out


def multi_head_nominal(Q, K, V, w: AttentionWeights, scale: str | float = "sqrt-n",
                       mask=None) -> np.ndarray:
    """Per-head feature maps, attention per head, Kronecker concat, output map.

    Head i applies w.head_q[i] (shape r_i x n) to every row of Q (likewise
    K, V), runs attention, and contributes a row block of length r_i; the
    concat of sequence j is the Kronecker product of the heads' rows j, of
    length r = prod(r_i).  w.out_map (shape r0*s x r*s) then maps the stacked
    concat to the stacked output; None means identity.
    """
    Q, K, V = as_matrix(Q, "Q"), as_matrix(K, "K"), as_matrix(V, "V")
    s, n = Q.shape
    if w.head_q is None or w.head_k is None or w.head_v is None:
        heads = [(Q, K, V)]
    else:
        if not (len(w.head_q) == len(w.head_k) == len(w.head_v)):
            raise ShapeError(
                f"head map counts differ: {len(w.head_q)} q, {len(w.head_k)} k,"
                f" {len(w.head_v)} v"
            )
        heads = []
        for i, (Tq, Tk, Tv) in enumerate(zip(w.head_q, w.head_k, w.head_v)):
            for name, T in (("q", Tq), ("k", Tk), ("v", Tv)):
                T = as_matrix(T, f"head {i + 1} {name} map")
                if T.shape[1] != n:
                    raise ShapeError(
                        f"head {i + 1} {name} map has {T.shape[1]} columns, expected {n}"
                    )
            heads.append((Q @ np.asarray(Tq).T, K @ np.asarray(Tk).T, V @ np.asarray(Tv).T))

    outs = [attention_nominal(q, k, v, scale=scale, mask=mask) for q, k, v in heads]
    r = math.prod(o.shape[1] for o in outs)
    if r * s > SIZE_BUDGET:
        raise SizeBudgetError(f"concat size {r * s} exceeds {SIZE_BUDGET}")
    rows = []
    for j in range(s):
        c = outs[0][j]
        for o in outs[1:]:
            c = np.kron(c, o[j])
        rows.append(c)
    C = np.stack(rows)
    if w.out_map is None:
        return C
    M = as_matrix(w.out_map, "out_map")
    if M.shape[1] != r * s or M.shape[0] % s != 0:
        raise ShapeError(
            f"out_map is {M.shape[0]} x {M.shape[1]}, expected (r0*{s}) x {r * s}"
        )
    return (M @ C.reshape(-1)).reshape(s, -1)


def _normalize(v, gamma: float, beta: float, eps: float) -> np.ndarray:
    """Center, then divide by sqrt(spread + eps) where the spread is the
    root of the centered sum of squares divided by the entry count."""
    v = np.asarray(v, dtype=float)
    e = v.mean()
    spread = math.sqrt(float(((v - e) ** 2).sum())) / v.size
    return (v - e) / math.sqrt(spread + eps) * gamma + beta


def add_norm(X, F, mode: str = "vector-wise", gamma: float = 1.0, beta: float = 0.0,
             eps: float = 1e-3) -> np.ndarray:
    """relu(X + F), then normalization, for same-shape stacked batches.

    vector-wise normalizes each sequence (row) over its own entries;
    layer-wise pools every entry of the batch.
    """
    X, F = as_matrix(X, "X"), as_matrix(F, "F")
    if X.shape != F.shape:
        raise ShapeError(f"residual shapes differ: X {X.shape} vs F {F.shape}")
    Y = relu(X + F)
    if mode == "vector-wise":
        return np.stack([_normalize(row, gamma, beta, eps) for row in Y])
    if mode == "layer-wise":
        return _normalize(Y, gamma, beta, eps)
    raise ValueError(f"norm mode must be one of {NORM_MODES}, got {mode!r}")


def ffn_nominal(X, w1, w2, b1=None, b2=None) -> np.ndarray:
    """w2 @ relu(w1 @ X + b1) + b2 with biases added per column.

    w1 has as many columns as X has rows; biases of any length are projected
    to the relevant row count before the columnwise add (None means zero).
    """
    X = as_matrix(X, "ffn input")
    w1 = as_matrix(w1, "ffn w1")
    w2 = as_matrix(w2, "ffn w2")
    if w1.shape[1] != X.shape[0]:
        raise ShapeError(f"ffn w1 has {w1.shape[1]} columns for {X.shape[0]} input rows")
    if w2.shape[1] != w1.shape[0]:
        raise ShapeError(f"ffn w2 has {w2.shape[1]} columns for {w1.shape[0]} hidden rows")
    H = w1 @ X
    if b1 is not None:
        H = H + project(as_vector(b1, "ffn b1"), w1.shape[0])[:, None]
    H = relu(H)
    out = w2 @ H
    if b2 is not None:
        out = out + project(as_vector(b2, "ffn b2"), w2.shape[0])[:, None]
    return out


def assembled_attention(X, wq, wk, wv) -> np.ndarray:
    """One-shot self-attention with the softmax taken last:
    softmax_rows(X Wq^T Wk X^T X Wv^T).  Only Wq^T Wk matters, and scaling
    that product by c while scaling Wv by 1/c changes nothing."""
    X = as_matrix(X, "X")
    n = X.shape[1]
    for name, W in (("wq", wq), ("wk", wk), ("wv", wv)):
        W = as_matrix(W, name)
        if W.shape != (n, n):
            raise ShapeError(f"{name} is {W.shape[0]} x {W.shape[1]}, expected {n} x {n}")
    return assembled_attention_qk(X, np.asarray(wq, float).T @ np.asarray(wk, float), wv)


def assembled_attention_qk(X, wqk, wv) -> np.ndarray:
    """assembled_attention parameterized directly by the product Wq^T Wk."""
    X = as_matrix(X, "X")
    wqk = as_matrix(wqk, "wqk")
    wv = as_matrix(wv, "wv")
    return softmax_rows(X @ wqk @ X.T @ X @ wv.T)


# --- ragged (dimension-free) stages -----------------------------------------


def zero_pad_pipeline(X: HyperVector, W, dims_out, d: int | None = None) -> HyperVector:
    """Baseline ragged linear map: zero-pad, transform, truncate.

    Every component is padded with zeros to length d (default: the largest
    input or output length, never less than that), mapped by W (d x d), and
    the i-th result is cut back to dims_out[i].
    """
    dims_out = tuple(int(v) for v in dims_out)
    if len(dims_out) != X.batch_size:
        raise ShapeError(
            f"{len(dims_out)} output dims for a {X.batch_size}-component hypervector"
        )
    if any(v < 1 for v in dims_out):
        raise ShapeError(f"output dims must be positive, got {dims_out}")
    d_min = max(max(X.dims), max(dims_out))
    if d is None:
        d = d_min
    elif d < d_min:
        raise ShapeError(f"zero padding cannot shrink: d={d} < required {d_min}")
    W = as_matrix(W, "transform")
    if W.shape != (d, d):
        raise ShapeError(f"transform is {W.shape[0]} x {W.shape[1]}, expected {d} x {d}")
    padded = np.stack([np.pad(c, (0, d - len(c))) for c in X.components])
    mixed = padded @ W.T
    return HyperVector([mixed[i, : dims_out[i]] for i in range(X.batch_size)])


def proj_pad_pipeline(X: HyperVector, W, d: int, dims_out) -> HyperVector:
    """Projection-based ragged linear map: resample, transform, resample.

    Components are projected to the preassigned length d (which may be
    smaller than some inputs), mapped by W (d x d), and projected out to
    dims_out.  No zeros are injected and every source entry keeps weight.
    """
    dims_out = tuple(int(v) for v in dims_out)
    if len(dims_out) != X.batch_size:
        raise ShapeError(
            f"{len(dims_out)} output dims for a {X.batch_size}-component hypervector"
        )
    if any(v < 1 for v in dims_out):
        raise ShapeError(f"output dims must be positive, got {dims_out}")
    if d < 1:
        raise ShapeError(f"nominal dim must be positive, got {d}")
    W = as_matrix(W, "transform")
    if W.shape != (d, d):
        raise ShapeError(f"transform is {W.shape[0]} x {W.shape[1]}, expected {d} x {d}")
    padded = np.stack([project(c, d) for c in X.components])
    mixed = padded @ W.T
    return HyperVector([project(mixed[i], dims_out[i]) for i in range(X.batch_size)])


def _dv_scores(Q: HyperVector, K: HyperVector, scaling: str) -> np.ndarray:
    if scaling == "sqrt-n":
        return hyper_inner_weighted(Q, K)
    if scaling == "n":
        return hyper_inner(Q, K)
    if scaling == "sqrt-s":
        # Undo the lcm averaging, then apply the 1/sqrt(batch) convention;
        # for uniform lengths this is exactly Q K^T / sqrt(s).
        G = hyper_inner(Q, K)
        L = np.array([[lcm(len(q), len(k)) for k in K.components] for q in Q.components])
        return G * L / math.sqrt(Q.batch_size)
    raise ValueError(f"scaling must be one of {SCALING_MODES}, got {scaling!r}")


def dv_attention(Q: HyperVector, K: HyperVector, V: HyperVector,
                 scaling: str = "sqrt-n", mask=None, n0: int | None = None,
                 return_weights: bool = False):
    """Attention over equal-size ragged batches.

    The score matrix is the (scaled) cross-length inner-product Gram matrix
    of Q against K; its row softmax acts on V through diamond, so the output
    keeps V's dimension profile.  With every length equal this reproduces
    the fixed-length attention exactly.  Unequal batch sizes are routed to
    dv_attention_general.
    """
    if not (Q.batch_size == K.batch_size == V.batch_size):
        return dv_attention_general(Q, K, V, scaling=scaling, mask=mask, n0=n0,
                                    return_weights=return_weights)
    E = _dv_scores(Q, K, scaling)
    if mask is not None:
        mask = np.asarray(mask, dtype=float)
        if mask.shape != E.shape:
            raise ShapeError(f"mask is {mask.shape}, expected {E.shape}")
        E = E + mask
    A = softmax_rows(E)
    out = diamond(A, V, n0=n0)
    return (out, A) if return_weights else out


def dv_attention_general(Q: HyperVector, K: HyperVector, V: HyperVector,
                         scaling: str = "sqrt-n", mask=None, n0: int | None = None,
                         out_dims=None, return_weights: bool = False):
    """Attention when Q, K, V have different batch sizes p, q, r.

    The p x q score softmax is reconciled with V by replicating score
    columns t/q times and tiling V's component list t/r times, t = lcm(q, r),
    then acting through the rectangular diamond.  Output batch is p, with
    profile out_dims (default: V's profile cycled).  Reduces exactly to
    dv_attention when q == r == p.
    """
    p, q, r = Q.batch_size, K.batch_size, V.batch_size
    E = _dv_scores(Q, K, scaling)
    if mask is not None:
        mask = np.asarray(mask, dtype=float)
        if mask.shape != E.shape:
            raise ShapeError(f"mask is {mask.shape}, expected {E.shape}")
        E = E + mask
    A = softmax_rows(E)
    t = lcm(q, r)
    if t * max(V.dims) > SIZE_BUDGET:
        raise SizeBudgetError(
            f"replicated batch {t} x {max(V.dims)} exceeds {SIZE_BUDGET}"
        )
    A_rep = np.kron(A, np.ones((1, t // q)))
    V_rep = _tile_components(V, t // r)
    out = diamond_general(A_rep, V_rep, n0=n0, out_dims=out_dims)
    return (out, A) if return_weights else out


def dv_multi_head(heads, target_dims, weights=None, out_maps=None) -> HyperVector:
    """Combine head outputs by weighted projected addition per component.

    Component k of the result is sum_i weights[i] * project(head_i[k],
    target_dims[k]) (weights default to all ones), optionally followed by a
    per-component linear map out_maps[k].
    """
    heads = list(heads)
    if not heads:
        raise ShapeError("need at least one head")
    s = heads[0].batch_size
    for i, h in enumerate(heads):
        if h.batch_size != s:
            raise ShapeError(
                f"head {i + 1} has batch size {h.batch_size}, expected {s}"
            )
    target_dims = tuple(int(v) for v in target_dims)
    if len(target_dims) != s:
        raise ShapeError(f"{len(target_dims)} target dims for batch size {s}")
    if weights is None:
        weights = [1.0] * len(heads)
    weights = [float(v) for v in weights]
    if len(weights) != len(heads):
        raise ShapeError(f"{len(weights)} weights for {len(heads)} heads")
    if any(v < 0 for v in weights):
        raise ValueError("head weights must be nonnegative")
    comps = []
    for k in range(s):
        acc = np.zeros(target_dims[k])
        for wgt, h in zip(weights, heads):
            acc = acc + wgt * project(h[k], target_dims[k])
        comps.append(acc)
    if out_maps is not None:
        if len(out_maps) != s:
            raise ShapeError(f"{len(out_maps)} output maps for batch size {s}")
        mapped = []
        for k, (M, c) in enumerate(zip(out_maps, comps)):
            if M is None:
                mapped.append(c)
                continue
            M = as_matrix(M, f"output map {k + 1}")
            if M.shape[1] != len(c):
                raise ShapeError(
                    f"output map {k + 1} has {M.shape[1]} columns for a"
                    f" length-{len(c)} component"
                )
            mapped.append(M @ c)
        comps = mapped
    return HyperVector(comps)


def df_add_norm(X: HyperVector, F: HyperVector, mode: str = "vector-wise",
                gamma: float = 1.0, beta: float = 0.0, eps: float = 1e-3) -> HyperVector:
    """Ragged residual add-and-norm: the skip input is projected onto the
    branch profile, added, rectified, and normalized (per component or
    pooled over every entry)."""
    if X.batch_size != F.batch_size:
        raise ShapeError(
            f"batch sizes differ: {X.batch_size} skip vs {F.batch_size} branch"
        )
    Z = [relu(project(xc, len(fc)) + fc) for xc, fc in zip(X.components, F.components)]
    if mode == "vector-wise":
        return HyperVector([_normalize(z, gamma, beta, eps) for z in Z])
    if mode == "layer-wise":
        flat = _normalize(np.concatenate(Z), gamma, beta, eps)
        return HyperVector.from_addition_form(flat, [len(z) for z in Z])
    raise ValueError(f"norm mode must be one of {NORM_MODES}, got {mode!r}")


def df_ffn(X: HyperVector, w1, w2, b1=None, b2=None, n0: int | None = None) -> HyperVector:
    """Ragged feed-forward: w2 <> relu(w1 <> X + b1) + b2.

    w1 and w2 are batch-mixing (s x s) maps applied through diamond; the
    biases are hypervectors added componentwise with the input profile as
    the nominal targets, so the output profile equals the input profile.
    """
    s = X.batch_size
    w1 = as_matrix(w1, "ffn w1")
    w2 = as_matrix(w2, "ffn w2")
    for name, W in (("w1", w1), ("w2", w2)):
        if W.shape != (s, s):
            raise ShapeError(
                f"ffn {name} is {W.shape[0]} x {W.shape[1]}, expected {s} x {s}"
            )
    dims = X.dims
    H = diamond(w1, X, n0=n0)
    if b1 is not None:
        H = hyper_add_listwise(H, _as_hyper(b1, s), dims)
    H = H.map(relu)
    out = diamond(w2, H, n0=n0)
    if b2 is not None:
        out = hyper_add_listwise(out, _as_hyper(b2, s), dims)
    return out


def _as_hyper(b, s: int) -> HyperVector:
    if isinstance(b, HyperVector):
        if b.batch_size != s:
            raise ShapeError(f"bias has {b.batch_size} components, expected {s}")
        return b
    b = as_vector(b, "bias")
    return HyperVector([b] * s)


# --- encoder composition -----------------------------------------------------


def _qkv_hyper(X: HyperVector, w: AttentionWeights, cfg: ModelConfig):
    m = cfg.q_dims or X.dims
    a = cfg.k_dims or X.dims
    b = cfg.v_dims or X.dims
    pipeline = proj_pad_pipeline if cfg.padding == "projection" else _zero_pipeline
    Q = pipeline(X, w.wq, cfg.nominal_dim, m)
    K = pipeline(X, w.wk, cfg.nominal_dim, a)
    V = pipeline(X, w.wv, cfg.nominal_dim, b)
    return Q, K, V


def _zero_pipeline(X, W, d, dims_out):
    return zero_pad_pipeline(X, W, dims_out, d=d)


def _block_mask(cfg: ModelConfig):
    if cfg.mask == "none":
        return None
    mode = "conventional" if cfg.mask == "causal" else "paper-literal"
    return causal_mask(cfg.batch_size, mode)


def encoder_block(X: HyperVector, w: AttentionWeights, cfg: ModelConfig,
                  return_weights: bool = False):
    """One ragged encoder block: Q/K/V pipelines, (multi-head) attention,
    add-norm, feed-forward, add-norm.  The output keeps the configured
    profile, which defaults to the input profile."""
    if X.batch_size != cfg.batch_size:
        raise ShapeError(
            f"input has {X.batch_size} components, config says {cfg.batch_size}"
        )
    Q, K, V = _qkv_hyper(X, w, cfg)
    mask = _block_mask(cfg)

    if w.head_q is None:
        if cfg.heads != 1:
            raise ShapeError(
                f"config asks for {cfg.heads} heads but the weights carry no head maps"
            )
        head_inputs = [(Q, K, V)]
    else:
        if len(w.head_q) != cfg.heads:
            raise ShapeError(
                f"weights carry {len(w.head_q)} head maps, config says {cfg.heads}"
            )
        head_inputs = [
            (diamond(tq, Q), diamond(tk, K), diamond(tv, V))
            for tq, tk, tv in zip(w.head_q, w.head_k, w.head_v)
        ]
    head_outs, att_mats = [], []
    for hq, hk, hv in head_inputs:
        out, A = dv_attention(hq, hk, hv, scaling=cfg.scaling, mask=mask,
                              return_weights=True)
        head_outs.append(out)
        att_mats.append(A)
    combined = dv_multi_head(head_outs, target_dims=cfg.v_dims or X.dims,
                             weights=w.head_weights, out_maps=w.out_maps)

    Z = df_add_norm(X, combined, mode=cfg.norm_mode, gamma=w.gamma, beta=w.beta,
                    eps=w.eps)
    s = Z.batch_size
    ffn_w1 = w.ffn_w1 if w.ffn_w1 is not None else np.eye(s)
    ffn_w2 = w.ffn_w2 if w.ffn_w2 is not None else np.eye(s)
    F = df_ffn(Z, ffn_w1, ffn_w2, w.ffn_b1, w.ffn_b2)
    out = df_add_norm(Z, F, mode=cfg.norm_mode, gamma=w.gamma, beta=w.beta, eps=w.eps)
    return (out, att_mats) if return_weights else out


def encoder_stack(X: HyperVector, w_list, cfg: ModelConfig,
                  return_weights: bool = False):
    """cfg.layers encoder blocks in sequence; a single weight set is reused
    for every block, otherwise w_list must provide one per block.  Zero
    layers is the identity."""
    w_list = list(w_list)
    n = cfg.layers
    if n == 0:
        return (X, []) if return_weights else X
    if len(w_list) == 1:
        w_list = w_list * n
    if len(w_list) != n:
        raise ShapeError(f"{len(w_list)} weight sets for {n} blocks")
    atts = []
    for k, w in enumerate(w_list):
        try:
            X, A = encoder_block(X, w, cfg, return_weights=True)
        except (ShapeError, ValueError) as exc:
            raise type(exc)(f"block {k + 1}: {exc}") from exc
        atts.append(A)
    return (X, atts) if return_weights else X
