from dataclasses import dataclass
from typing import Any

import numpy as np
import pandas as pd
from typing_extensions import override

from circlelab.circle_core import wrap
from circlelab.exceptions import PreconditionError
from circlelab.group_action import ActionSpec, Word, enumerate_words, word_translation_numbers

from .base import BaseExperiment, RunContext


@dataclass(frozen=True)
class RotnumParams:
    # words such as "S T^-1"; empty means every reduced word up to word_radius
    words: tuple[str, ...] = ()
    word_radius: int = 2
    iterations: int = 100_000

    def __post_init__(self):
        if self.word_radius < 1 or self.iterations < 1:
            raise ValueError("word_radius and iterations must be positive")


class RotnumExperiment(BaseExperiment):
    """Rotation numbers of a word list and their additivity defects on consecutive pairs."""
    key = "rotnum"
    params_type = RotnumParams

    def _words(self, action: ActionSpec) -> list[Word]:
        p: RotnumParams = self.params
        if not p.words:
            return [w for w in enumerate_words(action, p.word_radius) if w.letters]
        words = [Word.parse(text) for text in p.words]
        for w in words:
            for letter in w.letters:
                if letter.label not in action.labels:
                    raise PreconditionError(f"word '{w}' uses an unknown generator",
                                            operation="rotnum", evidence={"labels": action.labels})
        return words

    @override
    def run(self, action: ActionSpec, ctx: RunContext) -> dict[str, Any]:
        n = self.params.iterations
        words = self._words(action)
        products = [a * b for a, b in zip(words, words[1:])]
        tau = word_translation_numbers(action, words + products, n)
        single, joint = tau[:len(words)], tau[len(words):]
        rotation = np.asarray(wrap(single), dtype=float).reshape(-1)

        defects = np.mod(joint - single[:-1] - single[1:] + 0.5, 1.0) - 0.5
        self.tables = {
            "rotation_numbers": pd.DataFrame({
                "word": [str(w) for w in words],
                "rotation_number": rotation,
                "translation": single,
                "error_bound": 1.0 / n,
            }),
        }
        self.result = {
            "action": action.name,
            "iterations": n,
            "error_bound": 1.0 / n,
            "words": [{"word": str(w), "rotation_number": float(r), "translation": float(t)}
                      for w, r, t in zip(words, rotation, single)],
            "additivity": [{"first": str(a), "second": str(b), "defect": float(d)}
                           for a, b, d in zip(words, words[1:], defects)],
        }
        return self.result
