import logging
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np
import pandas as pd
from typing_extensions import override

from circlelab.config import build_action
from circlelab.exceptions import BallMismatchError
from circlelab.group_action import ActionSpec, random_words
from circlelab.homeo import cover_alpha, euler_cocycle, euler_cover_defect, euler_orientation_residual

from .base import BaseExperiment, RunContext

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CocycleParams:
    pairs: int = 1000
    word_length: int = 3
    # degree of the covering map when `action` covers `base_action`; 0 disables the check
    cover_degree: int = 0
    base_action: Optional[dict[str, Any]] = None

    def __post_init__(self):
        if self.pairs < 1 or self.word_length < 1:
            raise ValueError("pairs and word_length must be positive")
        if self.cover_degree < 0:
            raise ValueError("cover_degree must be non-negative")
        if (self.cover_degree > 0) != (self.base_action is not None):
            raise ValueError("cover_degree and base_action must be given together")


class CocycleExperiment(BaseExperiment):
    """
    Euler cocycle values on random word pairs: range, cocycle identity on triples,
    the identity tying it to the orientation cocycle, and optionally the
    degree-k relation with a base action.
    """
    key = "cocycle"
    params_type = CocycleParams

    def __init__(self):
        super().__init__()
        self.base: Optional[ActionSpec] = None

    @override
    def configure(self, raw_params: Optional[dict[str, Any]]) -> Any:
        params = super().configure(raw_params)
        self.base = build_action(params.base_action) if params.base_action is not None else None
        return params

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        p: CocycleParams = self.params
        rng = np.random.default_rng(ctx.rng_seed)
        f_words = random_words(action, rng, p.pairs, p.word_length)
        g_words = random_words(action, rng, p.pairs, p.word_length)
        h_words = random_words(action, rng, p.pairs, p.word_length)

        rows = []
        identity_violations = 0
        for fw, gw, hw in zip(f_words, g_words, h_words):
            f, g, h = action.evaluate(fw), action.evaluate(gw), action.evaluate(hw)
            c = euler_cocycle(f, g)
            identity = (euler_cocycle(g, h) - euler_cocycle(f.compose(g), h)
                        + euler_cocycle(f, g.compose(h)) - c)
            identity_violations += int(identity != 0)
            rows.append({"f": str(fw), "g": str(gw), "c": c,
                         "residual": euler_orientation_residual(f, g)})
        frame = pd.DataFrame(rows)

        cover = None
        if self.base is not None:
            cover = self._cover_check(action, f_words, g_words, frame)

        self.tables = {"cocycle": frame}
        self.result = {
            "action": action.name,
            "pairs": p.pairs,
            "value_counts": {str(k): int(v) for k, v in frame["c"].value_counts().sort_index().items()},
            "value_violations": int((~frame["c"].isin([0, 1])).sum()),
            "identity_violations": identity_violations,
            "orientation_residual_nonzero": int((frame["residual"] != 0).sum()),
            "cover": cover,
        }
        logger.info("Cocycle audit of %s: %s", action.name, self.result)
        return self.result

    def _cover_check(self, action: ActionSpec, f_words, g_words, frame: pd.DataFrame) -> dict[str, Any]:
        k = self.params.cover_degree
        if action.labels != self.base.labels:
            raise BallMismatchError("cover and base actions have different generators",
                                    operation="cocycle",
                                    evidence={"cover": action.labels, "base": self.base.labels})
        defects, alphas = [], []
        for fw, gw in zip(f_words, g_words):
            f1, g1 = action.evaluate(fw), action.evaluate(gw)
            f0, g0 = self.base.evaluate(fw), self.base.evaluate(gw)
            defects.append(euler_cover_defect(f1, g1, f0, g0, k))
            alphas.append(cover_alpha(f1, f0, k))
        frame["cover_defect"] = defects
        frame["alpha_f"] = alphas
        return {
            "k": k,
            "base": self.base.name,
            "nonzero_defects": int(np.count_nonzero(defects)),
            "max_abs_alpha": int(np.max(np.abs(alphas))),
            "alpha_bound": k + 1,
        }
