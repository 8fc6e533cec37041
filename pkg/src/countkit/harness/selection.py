"""Hardness classification and stratified benchmark selection.

Instances are bucketed by the reference solver's runtime in seconds:

    very-easy      [0, 10)
    easy           [10, 60)
    medium         [60, 600)
    hard           [600, 7200)
    unsolved-hard  no answer within 7200 seconds

The intervals partition [0, infinity); a runtime at or beyond 7200 counts
as unsolved-hard.  Selection draws a fixed number of instances per bucket
(the default distribution is 20 very-easy, 20 easy, 90 medium and 70 hard,
where the hard quota covers hard and unsolved-hard together), numbers the
drawn instances 1..N by increasing hardness, and splits them by parity:
odd numbers form the private benchmark set, even numbers the public one.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass


class HardnessCategory(enum.Enum):
    VERY_EASY = "very-easy"
    EASY = "easy"
    MEDIUM = "medium"
    HARD = "hard"
    UNSOLVED_HARD = "unsolved-hard"

    def __str__(self):
        return self.value

    @property
    def label(self):
        return self.value


_BUCKET_ORDER = {
    HardnessCategory.VERY_EASY: 0,
    HardnessCategory.EASY: 1,
    HardnessCategory.MEDIUM: 2,
    HardnessCategory.HARD: 3,
    HardnessCategory.UNSOLVED_HARD: 4,
}

LABELS = {cat.value: cat for cat in HardnessCategory}

DEFAULT_DISTRIBUTION = {
    "very-easy": 20,
    "easy": 20,
    "medium": 90,
    "hard": 70,
}


class InsufficientPool(ValueError):
    def __init__(self, bucket, need, have):
        super().__init__(
            "bucket %r needs %d instances, pool offers %d" % (bucket, need, have)
        )
        self.bucket = bucket
        self.need = need
        self.have = have


def classify_hardness(runtime) -> HardnessCategory:
    """Bucket for a reference runtime in seconds; None means no answer."""
    if runtime is None:
        return HardnessCategory.UNSOLVED_HARD
    runtime = float(runtime)
    if runtime < 0:
        raise ValueError("runtime cannot be negative: %r" % runtime)
    if runtime < 10:
        return HardnessCategory.VERY_EASY
    if runtime < 60:
        return HardnessCategory.EASY
    if runtime < 600:
        return HardnessCategory.MEDIUM
    if runtime < 7200:
        return HardnessCategory.HARD
    return HardnessCategory.UNSOLVED_HARD


@dataclass(frozen=True)
class PoolEntry:
    instance: str
    runtime: float | None

    @property
    def category(self) -> HardnessCategory:
        return classify_hardness(self.runtime)


@dataclass(frozen=True)
class SelectionResult:
    """Numbered selection: numbering[i] = (number, instance id), number odd
    for private instances and even for public ones."""

    numbering: tuple[tuple[int, str], ...]
    public: tuple[str, ...]
    private: tuple[str, ...]


def _selection_bucket(category: HardnessCategory) -> str:
    # the hard quota pools solved-hard and unsolved-hard instances
    if category is HardnessCategory.UNSOLVED_HARD:
        return HardnessCategory.HARD.value
    return category.value


def select_instances(pool, distribution=None, seed=0) -> SelectionResult:
    """Draw a benchmark set from a classified pool, reproducibly.

    pool is an iterable of (instance_id, runtime_or_None) pairs or
    PoolEntry objects.  distribution maps bucket labels (very-easy, easy,
    medium, hard) to how many instances to draw; the hard bucket draws from
    hard and unsolved-hard instances together.  Draws are uniform without
    replacement, deterministic for a given seed.  Instances are then
    numbered from 1 by increasing hardness (bucket order, then reference
    runtime ascending, unsolved instances last by id) and split by parity:
    odd numbers private, even numbers public.
    """
    if distribution is None:
        distribution = DEFAULT_DISTRIBUTION
    for bucket in distribution:
        if bucket not in DEFAULT_DISTRIBUTION:
            raise ValueError("unknown selection bucket %r" % (bucket,))

    entries = []
    seen = set()
    for item in pool:
        entry = item if isinstance(item, PoolEntry) else PoolEntry(*item)
        if entry.instance in seen:
            raise ValueError("duplicate pool instance %r" % (entry.instance,))
        seen.add(entry.instance)
        entries.append(entry)

    buckets = {}
    for entry in entries:
        buckets.setdefault(_selection_bucket(entry.category), []).append(entry)

    rng = random.Random(seed)
    chosen = []
    for bucket in ("very-easy", "easy", "medium", "hard"):
        need = distribution.get(bucket, 0)
        if need == 0:
            continue
        have = sorted(buckets.get(bucket, []), key=lambda e: e.instance)
        if len(have) < need:
            raise InsufficientPool(bucket, need, len(have))
        chosen.extend(rng.sample(have, need))

    def hardness_key(entry):
        solved = entry.runtime is not None
        return (
            _BUCKET_ORDER[entry.category],
            0 if solved else 1,
            entry.runtime if solved else 0.0,
            entry.instance,
        )

    chosen.sort(key=hardness_key)
    numbering = tuple(
        (number, entry.instance) for number, entry in enumerate(chosen, start=1)
    )
    private = tuple(inst for number, inst in numbering if number % 2 == 1)
    public = tuple(inst for number, inst in numbering if number % 2 == 0)
    return SelectionResult(numbering=numbering, public=public, private=private)
