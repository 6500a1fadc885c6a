"""
Lower bounds for the norm of bounded Euler classes by linear programming.

The Euler cocycle c(g, h) is tabulated on a ball of group elements. The LP
minimizes t subject to |c(g, h) - (b(g) - b(gh) + b(h))| <= t on every pair in
the ball. Any bounded b also satisfies |b(g) - tau(g)| <= t, where tau is the
translation number of the canonical lift, so those rows are added too; the
optimum remains a certified lower bound.
"""

import logging
import time
from dataclasses import dataclass
from typing import Any, Optional, Sequence

import numpy as np
import pandas as pd
from scipy.optimize import linprog
from scipy.sparse import coo_matrix, vstack

from circlelab.circle_core import circle_floor
from circlelab.exceptions import (
    BallMismatchError,
    BallTooLargeError,
    CoveringRelationError,
    IdentityViolationError,
    LPFailureError,
    NonIntegerCocycleResidueError,
    NormCapError,
    PreconditionError,
)
from circlelab.group_action import ActionSpec, Word, word_translation_numbers

logger = logging.getLogger(__name__)

BALL_GRID = 64
BALL_CAP = 5000
MERGE_SCALE = 1e6
TRANSLATION_ITERATIONS = 512
LP_TOL = 1e-9
RESIDUE_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class CocycleTable:
    """
    Euler cocycle of one action on a word ball.

    `pairs` holds index triples (g, h, gh) into `words`; `values[i]` is c on pair i.
    """
    name: str
    radius: int
    words: list[Word]
    pairs: np.ndarray
    values: np.ndarray
    translation: np.ndarray
    translation_error: float
    origin_values: np.ndarray
    merge_count: int

    @property
    def ball_size(self) -> int:
        return len(self.words)

    def same_ball(self, other: "CocycleTable") -> bool:
        return (self.radius == other.radius
                and [str(w) for w in self.words] == [str(w) for w in other.words]
                and np.array_equal(self.pairs, other.pairs))

    def to_frame(self) -> pd.DataFrame:
        names = [str(w) for w in self.words]
        return pd.DataFrame({
            "g": [names[i] for i in self.pairs[:, 0]],
            "h": [names[i] for i in self.pairs[:, 1]],
            "c": self.values,
        })


def _apply_word(spec: ActionSpec, word: Word, values: np.ndarray) -> np.ndarray:
    for letter in reversed(word.letters):
        values = np.asarray(spec.homeo(letter).lift(values))
    return values


def _key(values: np.ndarray) -> bytes:
    return np.rint(values * MERGE_SCALE).astype(np.int64).tobytes()


def _enumerate_ball(specs: Sequence[ActionSpec], radius: int, grid: int, cap: int):
    """Breadth-first ball with elements identified when all actions agree on the grid."""
    x = np.arange(grid) / grid
    words = [Word()]
    values = [np.tile(x, (len(specs), 1))]
    index = {_key(values[0]): 0}
    frontier = [0]
    merges = 0
    letters = specs[0].letters
    for _ in range(radius):
        nxt = []
        for e in frontier:
            w = words[e]
            for i, letter in enumerate(letters):
                if w.letters and w.letters[0] == letter.inverse():
                    continue
                v = np.stack([np.asarray(s.homeo(i).lift(values[e][j])) for j, s in enumerate(specs)])
                v -= circle_floor(v[:, :1])
                key = _key(v)
                if key in index:
                    merges += 1
                    continue
                index[key] = len(words)
                words.append(Word((letter,) + w.letters))
                values.append(v)
                nxt.append(index[key])
                if len(words) > cap:
                    raise BallTooLargeError("ball too large", operation="build_table",
                                            evidence={"cap": cap, "radius": radius})
        frontier = nxt
    return words, np.stack(values), index, merges


def _tabulate_pairs(specs, words, values, index):
    m = len(words)
    product = np.full((m, m), -1, dtype=np.int64)
    cocycle = np.zeros((len(specs), m, m), dtype=np.int64)
    origin = values[:, :, 0]
    for g, w in enumerate(words):
        # g acts by its canonical lift, so drop the offset the generator lifts pick up
        g_shift = np.array([circle_floor(float(_apply_word(s, w, np.zeros(1))[0])) for s in specs])
        images = np.stack([_apply_word(s, w, values[:, j, :]) - g_shift[j]
                           for j, s in enumerate(specs)], axis=1)
        shift = circle_floor(images[:, :, :1])
        canonical = images - shift
        for h in range(m):
            gh = index.get(_key(canonical[h]))
            if gh is None:
                continue
            raw = images[h, :, 0] - origin[gh]
            c = np.rint(raw)
            if np.any(np.abs(raw - c) > RESIDUE_TOL):
                raise NonIntegerCocycleResidueError("non-integer cocycle residue",
                                                    operation="build_table",
                                                    evidence={"g": str(w), "h": str(words[h])})
            product[g, h] = gh
            cocycle[:, g, h] = c
    return product, cocycle


def _check_identity(product: np.ndarray, cocycle: np.ndarray, rows: Optional[int] = None):
    """c(g,h) + c(gh,k) = c(g,hk) + c(h,k) on every in-ball triple, associativity included."""
    m = product.shape[0]
    for g in range(m if rows is None else min(rows, m)):
        gh = product[g]
        ok_h = gh >= 0
        hk = product
        ghk_left = np.where(ok_h[:, None], product[np.maximum(gh, 0)], -1)
        ghk_right = np.where(hk >= 0, product[g][np.maximum(hk, 0)], -1)
        valid = ok_h[:, None] & (hk >= 0) & (ghk_left >= 0) & (ghk_right >= 0)
        if np.any(ghk_left[valid] != ghk_right[valid]):
            raise IdentityViolationError("identity violation", operation="build_table",
                                         evidence={"g": int(g), "kind": "associativity"})
        for c in cocycle:
            lhs = c[g][:, None] + c[np.maximum(gh, 0)]
            rhs = c[g][np.maximum(hk, 0)] + c
            if np.any(lhs[valid] != rhs[valid]):
                raise IdentityViolationError("identity violation", operation="build_table",
                                             evidence={"g": int(g), "kind": "cocycle"})


def build_joint_tables(specs: Sequence[ActionSpec], radius: int, grid: int = BALL_GRID,
                       cap: int = BALL_CAP, iterations: int = TRANSLATION_ITERATIONS,
                       audit_rows: Optional[int] = None) -> list[CocycleTable]:
    """
    Tables of several actions of the same group over one common ball; two words
    are merged only when they agree in every action.
    """
    if radius < 1:
        raise PreconditionError("radius must be positive", operation="build_table")
    labels = specs[0].labels
    if any(s.labels != labels for s in specs):
        raise BallMismatchError("ball mismatch: actions have different generators",
                                operation="build_table",
                                evidence={"labels": [s.labels for s in specs]})
    start = time.perf_counter()
    words, values, index, merges = _enumerate_ball(specs, radius, grid, cap)
    product, cocycle = _tabulate_pairs(specs, words, values, index)
    _check_identity(product, cocycle, audit_rows)

    g, h = np.nonzero(product >= 0)
    pairs = np.column_stack([g, h, product[g, h]])
    tables = []
    for j, spec in enumerate(specs):
        tau = word_translation_numbers(spec, words, iterations)
        tables.append(CocycleTable(spec.name, radius, words, pairs, cocycle[j, g, h], tau,
                                   1.0 / iterations, values[:, j, 0].copy(), merges))
    logger.info("Ball of radius %d: %d elements, %d pairs, %d merges (%.2fs).", radius,
                len(words), len(pairs), merges, time.perf_counter() - start)
    return tables


def build_table(spec: ActionSpec, radius: int, grid: int = BALL_GRID, cap: int = BALL_CAP,
                iterations: int = TRANSLATION_ITERATIONS) -> CocycleTable:
    return build_joint_tables([spec], radius, grid, cap, iterations)[0]


@dataclass(frozen=True, eq=False)
class NormBound:
    lower_bound: float
    b: np.ndarray
    words: list[Word]
    status: int
    runtime: float
    radius: int
    ball_size: int
    pinned: bool

    def to_dict(self) -> dict[str, Any]:
        return {"radius": self.radius, "ball_size": self.ball_size,
                "lower_bound": self.lower_bound, "runtime": self.runtime,
                "pinned": self.pinned}

    def certificate(self) -> dict[str, float]:
        return {str(w): float(v) for w, v in zip(self.words, self.b)}


def _solve(pairs, values, translation, error, m, pin):
    """Variables are [t, b_0, ..., b_{m-1}]."""
    p = len(pairs)
    rows = np.repeat(np.arange(p), 4)
    cols = np.column_stack([np.zeros(p, int), pairs[:, 0] + 1, pairs[:, 1] + 1,
                            pairs[:, 2] + 1]).ravel()
    # db(g, h) - c <= t and c - db(g, h) <= t
    sign = np.tile([-1.0, 1.0, 1.0, -1.0], p)
    upper = coo_matrix((sign, (rows, cols)), shape=(p, m + 1))
    lower = coo_matrix((np.tile([-1.0, -1.0, -1.0, 1.0], p), (rows, cols)), shape=(p, m + 1))
    blocks = [upper, lower]
    rhs = [values.astype(float), -values.astype(float)]
    if pin:
        r = np.repeat(np.arange(m), 2)
        c = np.column_stack([np.zeros(m, int), np.arange(m) + 1]).ravel()
        blocks.append(coo_matrix((np.tile([-1.0, 1.0], m), (r, c)), shape=(m, m + 1)))
        blocks.append(coo_matrix((np.tile([-1.0, -1.0], m), (r, c)), shape=(m, m + 1)))
        rhs += [translation + error, -translation + error]
    a_ub = vstack(blocks).tocsr()
    objective = np.zeros(m + 1)
    objective[0] = 1.0
    bounds = [(0, None)] + [(None, None)] * m
    return linprog(objective, A_ub=a_ub, b_ub=np.concatenate(rhs), bounds=bounds, method="highs")


def _solve_bound(table: CocycleTable, values, translation, error, cap, pin) -> NormBound:
    start = time.perf_counter()
    result = _solve(table.pairs, values, translation, error, table.ball_size, pin)
    runtime = time.perf_counter() - start
    if result.status != 0:
        raise LPFailureError("LP unbounded/infeasible", operation="solve_norm_lp",
                             evidence={"status": int(result.status), "message": result.message})
    bound = float(result.x[0])
    if bound > cap + LP_TOL:
        raise NormCapError("norm bound exceeds its cap", operation="solve_norm_lp",
                           evidence={"lower_bound": bound, "cap": cap})
    logger.debug("LP on %d elements: t* = %.9f (%.3fs).", table.ball_size, bound, runtime)
    return NormBound(bound, result.x[1:], table.words, int(result.status), runtime, table.radius,
                     table.ball_size, pin)


def solve_norm_lp(table: CocycleTable, pin_translation: bool = True) -> NormBound:
    """Certified lower bound t* for the norm of the class of one table; t* <= 1/2."""
    return _solve_bound(table, table.values, table.translation, table.translation_error, 0.5,
                        pin_translation)


def norm_of_combination(tables: Sequence[CocycleTable], coefficients: Sequence[int],
                        pin_translation: bool = True) -> NormBound:
    """Lower bound for the norm of sum_i n_i [c_i] on a common ball."""
    if len(tables) != len(coefficients) or not tables:
        raise PreconditionError("one coefficient per table", operation="norm_of_combination")
    first = tables[0]
    if any(not first.same_ball(t) for t in tables[1:]):
        raise BallMismatchError("ball mismatch", operation="norm_of_combination",
                                evidence={"ball_sizes": [t.ball_size for t in tables]})
    n = np.asarray(coefficients, dtype=float)
    values = sum(c * t.values for c, t in zip(n, tables))
    translation = sum(c * t.translation for c, t in zip(n, tables))
    error = float(sum(abs(c) * t.translation_error for c, t in zip(n, tables)))
    return _solve_bound(first, values, translation, error, float(np.abs(n).sum()) / 2,
                        pin_translation)


def radius_sweep(spec: ActionSpec, radii: Sequence[int], pin_translation: bool = True,
                 **table_kwargs) -> list[NormBound]:
    return sweep_bounds([build_table(spec, r, **table_kwargs) for r in sorted(radii)],
                        pin_translation)


def sweep_bounds(tables: Sequence[CocycleTable], pin_translation: bool = True) -> list[NormBound]:
    """Bounds of tables ordered by radius; a decrease is logged, not raised."""
    bounds = [solve_norm_lp(t, pin_translation) for t in tables]
    for lo, hi in zip(bounds, bounds[1:]):
        if lo.lower_bound > hi.lower_bound + LP_TOL:
            logger.warning("Bounds decrease from radius %d to %d: %.9f > %.9f", lo.radius,
                           hi.radius, lo.lower_bound, hi.lower_bound)
    return bounds


def cover_offsets(cover_table: CocycleTable, base_table: CocycleTable, k: int) -> np.ndarray:
    """Integer offsets a(g) = k canonical_cover(g)(0) - canonical_base(g)(0) over the ball."""
    if not cover_table.same_ball(base_table):
        raise BallMismatchError("ball mismatch", operation="cover_offsets")
    raw = k * cover_table.origin_values - base_table.origin_values
    alpha = np.rint(raw)
    if np.any(np.abs(raw - alpha) > k * RESIDUE_TOL):
        raise CoveringRelationError("covering offset is not an integer", operation="cover_offsets",
                                    evidence={"max_residue": float(np.max(np.abs(raw - alpha)))})
    return alpha.astype(np.int64)


def quantization_defects(cover_table: CocycleTable, base_table: CocycleTable, k: int) -> np.ndarray:
    """c_base - k c_cover - (a(gh) - a(g) - a(h)) per pair; identically zero for a cover."""
    alpha = cover_offsets(cover_table, base_table, k)
    g, h, gh = cover_table.pairs.T
    return base_table.values - k * cover_table.values - (alpha[gh] - alpha[g] - alpha[h])


@dataclass(frozen=True)
class QuantizationReport:
    k: int
    cover_bound: float
    base_bound: float
    max_defect: int
    scaled_ok: bool
    cap_ok: bool

    def to_dict(self) -> dict[str, Any]:
        return {"k": self.k, "cover_bound": self.cover_bound, "base_bound": self.base_bound,
                "max_defect": self.max_defect, "scaled_ok": self.scaled_ok, "cap_ok": self.cap_ok}


def quantization_check(cover_table: CocycleTable, base_table: CocycleTable, k: int,
                       tol: float = 1e-7) -> QuantizationReport:
    """
    The cover class is 1/k times the base class, so its bound is at most the base
    bound over k and at most 1/(2k).
    """
    defects = quantization_defects(cover_table, base_table, k)
    cover = solve_norm_lp(cover_table).lower_bound
    base = solve_norm_lp(base_table).lower_bound
    return QuantizationReport(k, cover, base, int(np.max(np.abs(defects))) if defects.size else 0,
                              cover <= base / k + tol, cover <= 1.0 / (2 * k) + tol)
