"""
Keyed random streams for reproducible, schedule-independent simulation.

Every (master seed, run id, arm id) triple owns a Philox counter-based
generator. The k-th pull of an arm is the k-th draw of its stream, so runs
executed in any order or process produce the same rewards.
"""
from typing import Dict

import numpy as np


def keyed_generator(*key: int) -> np.random.Generator:
    """A Philox generator whose stream is determined by the integer key."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(k) for k in key])))


class ArmStreams:
    """Per-arm generators for one run"""

    def __init__(self, master_seed: int, run_id: int):
        self.master_seed = int(master_seed)
        self.run_id = int(run_id)
        self._generators: Dict[int, np.random.Generator] = {}
        self._pulls: Dict[int, int] = {}

    def generator(self, arm_id: int) -> np.random.Generator:
        gen = self._generators.get(arm_id)
        if gen is None:
            gen = keyed_generator(self.master_seed, self.run_id, arm_id)
            self._generators[arm_id] = gen
            self._pulls[arm_id] = 0
        return gen

    def next_pull(self, arm_id: int) -> np.random.Generator:
        """Generator positioned at the arm's next pull; advances the pull counter."""
        gen = self.generator(arm_id)
        self._pulls[arm_id] += 1
        return gen

    def pulls(self, arm_id: int) -> int:
        return self._pulls.get(arm_id, 0)
