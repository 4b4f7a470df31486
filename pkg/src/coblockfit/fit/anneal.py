"""
Module with the co-blockmodel M-estimators.

For fixed labelings (S, T) both the squared error and the Bernoulli
likelihood are optimized by the block means, so the estimators search over
labelings only, with theta profiled out. The search anneals over single
relabelings and pairwise swaps of row or column labels and finishes with a
greedy polish; block sums are updated incrementally so that each proposed
move costs O(K^2) plus the length of one row or column.
"""

from __future__ import annotations

import logging

import numpy as np

from dataclasses import dataclass, field
from numpy.random import Generator
from numpy.typing import ArrayLike
from typing import List, Optional, Tuple

from .config import FitConfig
from ..coclust.labeling import Labeling, LabelingLike, as_labeling
from ..coclust.labeling import indicator_matrix
from ..coclust.summary import verify_array
from ..core.custom_typing import InitStrategy, Kind
from ..core.exceptions import DimensionError, DomainError
from ..core.params import ClassCounts, CoBlockParams
from ..global_settings import ARRAY_FLOAT, ARRAY_INT, DEFAULT_EPS
from ..kernels.sampling import LatentSample
from ..risk.objectives import objective_at, verify_kind
from ..utils import ROLE_ANNEAL, ROLE_INIT, make_rng

__all__ = ["FitResult", "block_means", "init_labels", "fit_coblockmodel"]

logger = logging.getLogger(__name__)

# Relative improvement a polish move must achieve to be taken
POLISH_TOL = 1e-12


@dataclass(frozen=True)
class FitResult:
    """The outcome of a co-blockmodel fit.

    Parameters
    ----------
    phi_hat : CoBlockParams
        The fitted proportions and clamped block means.
    s : Labeling
        The fitted row labeling.
    t : Labeling
        The fitted column labeling.
    objective : float
        The mean log-likelihood (pl) or mean squared error (ls) at the fit.
    kind : str
        "ls" or "pl".
    trace : Tuple[float, ...]
        The best objective of every restart.
    seed : int, optional
        The seed of the fit.
    initial_objectives : Tuple[float, ...]
        The objective at the initialization of every restart.
    polish_traces : Tuple[Tuple[float, ...], ...]
        The objective after every greedy polish move, per restart.
    best_restart : int
        The restart that produced the fit.
    """

    phi_hat: CoBlockParams
    s: Labeling
    t: Labeling
    objective: float
    kind: str
    trace: Tuple[float, ...] = ()
    seed: Optional[int] = None
    initial_objectives: Tuple[float, ...] = ()
    polish_traces: Tuple[Tuple[float, ...], ...] = field(default=())
    best_restart: int = 0


def block_means(
    a: ArrayLike,
    s: LabelingLike,
    t: LabelingLike,
    eps: float = DEFAULT_EPS,
    num_classes: Optional[int] = None,
) -> ARRAY_FLOAT:
    """Compute the clamped block means of an array under a co-clustering.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n array.
    s : LabelingLike
        The row labeling.
    t : LabelingLike
        The column labeling.
    eps : float, optional
        Means are clamped into [eps, 1 - eps].
    num_classes : int, optional
        The number of classes K; by default the larger of the labelings'.

    Returns
    -------
    ARRAY_FLOAT
        The K-by-K block means; empty blocks are set to 1/2.
    """
    a = verify_array(a)
    s = as_labeling(s, num_classes)
    t = as_labeling(t, num_classes)
    num_classes = max(s.num_classes, t.num_classes)
    s = as_labeling(s, num_classes)
    t = as_labeling(t, num_classes)
    if len(s) != a.shape[0] or len(t) != a.shape[1]:
        raise DimensionError(
            f"Labelings of lengths ({len(s)}, {len(t)}) do not match "
            f"an array of shape {a.shape}!"
        )
    z_s = indicator_matrix(s)
    z_t = indicator_matrix(t)
    sums = z_s.T @ a @ z_t
    sizes = np.outer(z_s.sum(axis=0), z_t.sum(axis=0))

    return _clamped_means(sums, sizes, eps)


def init_labels(
    strategy: InitStrategy,
    num_rows: int,
    num_cols: int,
    num_classes: int,
    latents: Optional[LatentSample] = None,
    provided: Optional[Tuple[LabelingLike, LabelingLike]] = None,
    seed: int = 0,
    restart: int = 0,
) -> Tuple[Labeling, Labeling]:
    """Create the initial labelings of a restart.

    Parameters
    ----------
    strategy : str
        "oracle_latent" puts node i into class 1 iff its latent position is
        below 1/2 (two classes only); "random" draws labels uniformly,
        without count constraints; "provided" uses ``provided``.
    num_rows, num_cols : int
        The array size.
    num_classes : int
        The number of classes K.
    latents : LatentSample, optional
        The latent positions (oracle_latent only).
    provided : Tuple[LabelingLike, LabelingLike], optional
        The initial labelings (provided only).
    seed : int, optional
        The seed of the random initialization.
    restart : int, optional
        The restart index; each restart draws from its own stream.

    Returns
    -------
    Tuple[Labeling, Labeling]
        The initial row and column labelings.
    """
    if strategy == "oracle_latent":
        if latents is None:
            raise DomainError("Oracle initialization requires latents!")
        if num_classes != 2:
            raise DimensionError(
                f"Oracle initialization needs two classes! Got {num_classes}."
            )
        s = np.where(np.asarray(latents.xi) < 0.5, 1, 2)
        t = np.where(np.asarray(latents.zeta) < 0.5, 1, 2)
    elif strategy == "random":
        rng = make_rng(seed, ROLE_INIT, restart)
        s = rng.integers(1, num_classes + 1, num_rows)
        t = rng.integers(1, num_classes + 1, num_cols)
    elif strategy == "provided":
        if provided is None:
            raise DomainError("Provided initialization requires labelings!")
        s, t = provided
    else:
        raise DomainError(f"Unknown initialization {strategy!r}!")

    s = as_labeling(s, num_classes)
    t = as_labeling(t, num_classes)
    if len(s) != num_rows or len(t) != num_cols:
        raise DimensionError(
            f"Initial labelings of lengths ({len(s)}, {len(t)}) do not "
            f"match an array of shape ({num_rows}, {num_cols})!"
        )

    return s, t


def fit_coblockmodel(
    a: ArrayLike,
    num_classes: int,
    kind: Kind,
    config: Optional[FitConfig] = None,
    latents: Optional[LatentSample] = None,
    initial: Optional[Tuple[LabelingLike, LabelingLike]] = None,
) -> FitResult:
    """Fit a co-blockmodel by least squares or profile likelihood.

    Parameters
    ----------
    a : ArrayLike
        The m-by-n binary array.
    num_classes : int
        The number of classes K.
    kind : str
        "ls" minimizes the squared error, "pl" maximizes the likelihood.
    config : FitConfig, optional
        The search settings; defaults are used if not given.
    latents : LatentSample, optional
        The latent positions for the oracle initialization.
    initial : Tuple[LabelingLike, LabelingLike], optional
        The initial labelings for the provided initialization.

    Returns
    -------
    FitResult
        The best fit over all restarts; deterministic given the seed.
    """
    verify_kind(kind)
    a = verify_array(a)
    if num_classes < 1:
        raise DomainError(
            f"Number of classes must be >= 1! Got {num_classes}."
        )
    if config is None:
        config = FitConfig()
    num_rows, num_cols = a.shape
    scale = float(a.size)
    sign = 1.0 if kind == "pl" else -1.0

    best_score = -np.inf
    best_labels = None
    best_restart = 0
    trace = []
    initial_objectives = []
    polish_traces = []
    for restart in range(config.restarts):
        s, t = init_labels(
            config.init,  # type: ignore
            num_rows,
            num_cols,
            num_classes,
            latents=latents,
            provided=initial,
            seed=config.seed,
            restart=restart,
        )
        state = _SearchState(
            a, s.codes, t.codes, num_classes, kind, config.eps
        )
        initial_objectives.append(sign * state.score / scale)

        if num_classes > 1:
            rng = make_rng(config.seed, ROLE_ANNEAL, restart)
            state = _anneal(state, config, rng)
        polish = [sign * score / scale for score in _polish(state)]

        trace.append(sign * state.score / scale)
        polish_traces.append(tuple(polish))
        logger.debug(
            "Restart %d: initial %.10g, final %.10g",
            restart,
            initial_objectives[-1],
            trace[-1],
        )
        if state.score > best_score:
            best_score = state.score
            best_labels = (state.row_labels.copy(), state.col_labels.copy())
            best_restart = restart

    row_codes, col_codes = best_labels  # type: ignore
    s = Labeling(row_codes + 1, num_classes)
    t = Labeling(col_codes + 1, num_classes)
    theta = block_means(a, s, t, config.eps, num_classes)
    phi_hat = CoBlockParams(
        ClassCounts(np.bincount(row_codes, minlength=num_classes)),
        ClassCounts(np.bincount(col_codes, minlength=num_classes)),
        theta,
    )
    objective = objective_at(a, s, t, theta, kind, config.eps)
    logger.info(
        "Fitted %d-class %s co-blockmodel to a %d-by-%d array: "
        "objective %.10g (restart %d of %d)",
        num_classes,
        kind,
        num_rows,
        num_cols,
        objective,
        best_restart,
        config.restarts,
    )

    return FitResult(
        phi_hat=phi_hat,
        s=s,
        t=t,
        objective=objective,
        kind=kind,
        trace=tuple(trace),
        seed=config.seed,
        initial_objectives=tuple(initial_objectives),
        polish_traces=tuple(polish_traces),
        best_restart=best_restart,
    )


def _clamped_means(
    sums: ARRAY_FLOAT, sizes: ARRAY_FLOAT, eps: float
) -> ARRAY_FLOAT:
    means = np.full(np.broadcast(sums, sizes).shape, 0.5)
    np.divide(sums, sizes, out=means, where=sizes > 0)

    return np.clip(means, eps, 1.0 - eps)


def _profile_score(
    sums: ARRAY_FLOAT,
    sizes: ARRAY_FLOAT,
    kind: str,
    eps: float,
    sum_squares: float,
) -> ARRAY_FLOAT:
    """The summed objective with plug-in block means, to be maximized.

    Works on stacks of K-by-K matrices (the last two axes).
    """
    theta = _clamped_means(sums, sizes, eps)
    if kind == "pl":
        terms = sums * np.log(theta) + (sizes - sums) * np.log(1.0 - theta)
        return np.sum(terms, axis=(-2, -1))

    terms = -2.0 * theta * sums + theta**2 * sizes
    return -(sum_squares + np.sum(terms, axis=(-2, -1)))


class _SearchState:
    """Labels and incremental block sums of an array under a co-clustering.

    ``row_sums[i, b]`` is the sum of row i over column class b,
    ``col_sums[j, a]`` the sum of column j over row class a, and
    ``block_sums[a, b]`` the sum of block (a, b).
    """

    def __init__(
        self,
        a: ARRAY_FLOAT,
        row_codes: ARRAY_INT,
        col_codes: ARRAY_INT,
        num_classes: int,
        kind: str,
        eps: float,
    ):
        self.a = a
        self.num_classes = num_classes
        self.kind = kind
        self.eps = eps
        self.sum_squares = float(np.sum(a**2))
        self.row_labels = np.array(row_codes, dtype=np.int64)
        self.col_labels = np.array(col_codes, dtype=np.int64)
        self.reset()

    def reset(self) -> None:
        """Recompute all sums from the labels."""
        z_s = self._indicators(self.row_labels)
        z_t = self._indicators(self.col_labels)
        self.row_sums = self.a @ z_t
        self.col_sums = self.a.T @ z_s
        self.block_sums = z_s.T @ self.row_sums
        self.row_counts = z_s.sum(axis=0)
        self.col_counts = z_t.sum(axis=0)
        self.score = self.evaluate(
            self.block_sums, self.row_counts, self.col_counts
        )

    def evaluate(self, sums, row_counts, col_counts) -> float:
        sizes = np.outer(row_counts, col_counts)
        return float(
            _profile_score(sums, sizes, self.kind, self.eps, self.sum_squares)
        )

    def side(self, axis: int):
        """Views of one side: labels, own sums, counts, other counts, data."""
        if axis == 0:
            return (
                self.row_labels,
                self.row_sums,
                self.col_sums,
                self.row_counts,
                self.col_counts,
                self.a,
                self.block_sums,
            )
        return (
            self.col_labels,
            self.col_sums,
            self.row_sums,
            self.col_counts,
            self.row_counts,
            self.a.T,
            self.block_sums.T,
        )

    def propose_relabel(self, axis: int, i: int, c: int):
        labels, own, _, counts, other_counts, _, sums = self.side(axis)
        a = labels[i]
        new_sums = sums.copy()
        new_sums[a] -= own[i]
        new_sums[c] += own[i]
        new_counts = counts.copy()
        new_counts[a] -= 1
        new_counts[c] += 1

        return self.evaluate(new_sums, new_counts, other_counts)

    def apply_relabel(self, axis: int, i: int, c: int, score: float) -> None:
        labels, own, other, counts, _, data, sums = self.side(axis)
        a = labels[i]
        sums[a] -= own[i]
        sums[c] += own[i]
        counts[a] -= 1
        counts[c] += 1
        other[:, a] -= data[i]
        other[:, c] += data[i]
        labels[i] = c
        self.score = score

    def propose_swap(self, axis: int, i: int, j: int):
        labels, own, _, counts, other_counts, _, sums = self.side(axis)
        a, b = labels[i], labels[j]
        new_sums = sums.copy()
        new_sums[a] += own[j] - own[i]
        new_sums[b] += own[i] - own[j]

        return self.evaluate(new_sums, counts, other_counts)

    def apply_swap(self, axis: int, i: int, j: int, score: float) -> None:
        labels, own, other, _, _, data, sums = self.side(axis)
        a, b = labels[i], labels[j]
        sums[a] += own[j] - own[i]
        sums[b] += own[i] - own[j]
        other[:, a] += data[j] - data[i]
        other[:, b] += data[i] - data[j]
        labels[i], labels[j] = b, a
        self.score = score

    def best_relabel(self, axis: int) -> Tuple[int, int, float]:
        """The single relabeling of one side with the highest score."""
        labels, own, _, counts, other_counts, _, sums = self.side(axis)
        num_nodes = len(labels)
        num_classes = self.num_classes
        nodes = np.arange(num_nodes)

        candidate_sums = np.broadcast_to(
            sums, (num_nodes, num_classes) + sums.shape
        ).copy()
        candidate_counts = np.broadcast_to(
            counts, (num_nodes, num_classes, num_classes)
        ).copy()
        for c in range(num_classes):
            candidate_sums[nodes, c, labels] -= own
            candidate_sums[nodes, c, c] += own
            candidate_counts[nodes, c, labels] -= 1
            candidate_counts[nodes, c, c] += 1
        sizes = candidate_counts[..., :, np.newaxis] * other_counts
        scores = _profile_score(
            candidate_sums, sizes, self.kind, self.eps, self.sum_squares
        )
        scores[nodes, labels] = -np.inf
        i, c = np.unravel_index(int(np.argmax(scores)), scores.shape)

        return int(i), int(c), float(scores[i, c])

    def _indicators(self, codes: ARRAY_INT) -> ARRAY_FLOAT:
        indicators = np.zeros((len(codes), self.num_classes))
        indicators[np.arange(len(codes)), codes] = 1.0
        return indicators


def _anneal(
    state: _SearchState, config: FitConfig, rng: Generator
) -> _SearchState:
    """Run one annealing chain and return the best state it visited."""
    num_rows, num_cols = state.a.shape
    num_classes = state.num_classes
    row_share = num_rows / (num_rows + num_cols)
    temperature = config.initial_temperature
    moves = config.moves

    best_score = state.score
    best_labels = (state.row_labels.copy(), state.col_labels.copy())
    for _ in range(config.steps_for(num_rows, num_cols)):
        axis = 0 if rng.random() < row_share else 1
        labels = state.row_labels if axis == 0 else state.col_labels
        move = moves[int(rng.integers(len(moves)))]
        i = int(rng.integers(len(labels)))
        if move == "single_relabel":
            shift = 1 + int(rng.integers(num_classes - 1))
            target = int((labels[i] + shift) % num_classes)
            score = state.propose_relabel(axis, i, target)
        else:
            target = int(rng.integers(len(labels)))
            if labels[target] == labels[i]:
                temperature *= config.cooling_rate
                continue
            score = state.propose_swap(axis, i, target)

        delta = score - state.score
        accept = delta >= 0 or (
            temperature > 0 and rng.random() < np.exp(delta / temperature)
        )
        if accept:
            if move == "single_relabel":
                state.apply_relabel(axis, i, target, score)
            else:
                state.apply_swap(axis, i, target, score)
            if state.score > best_score:
                best_score = state.score
                best_labels = (
                    state.row_labels.copy(),
                    state.col_labels.copy(),
                )
        temperature *= config.cooling_rate

    state.row_labels, state.col_labels = best_labels
    state.reset()

    return state


def _polish(state: _SearchState) -> List[float]:
    """Take improving single relabelings until none is left.

    Returns the summed score after every move taken.
    """
    scores: List[float] = []
    if state.num_classes == 1:
        return scores

    improved = True
    while improved:
        improved = False
        for axis in (0, 1):
            i, c, score = state.best_relabel(axis)
            tolerance = POLISH_TOL * max(1.0, abs(state.score))
            if score > state.score + tolerance:
                state.apply_relabel(axis, i, c, score)
                scores.append(score)
                improved = True

    return scores
