"""Reading and writing delimited time-series classification files.

The file format is one instance per line, class label first, then the M
observations, separated either by commas or by whitespace (detected from the
first data line). Lines starting with '#' are comments and blank lines are
skipped. Labels may be arbitrary integers (also integer-valued floats, which
some archives use); they are remapped to contiguous 1..C in ascending
numeric order, and the mapping is kept on the dataset so results can be
reported in the file's own label space.

Also hosts generators for two synthetic two-class problems: pure standard
normal noise (labels carry no signal) and a shifted variant whose second
class has a mean offset inside one interval and an inflated standard
deviation inside another.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .base import Dataset
from .errors import EmptyFile, InvalidLabel, LengthMismatch, NonFiniteValue, ParseError, RaggedRows

__all__ = [
    "load_ucr",
    "save_ucr",
    "SyntheticSpec",
    "scaled_spec",
    "generate_noise_dataset",
    "generate_shifted_dataset",
]


def load_ucr(path) -> Dataset:
    """Load a delimited label-first file into a Dataset.

    Raises ParseError for unparseable tokens, RaggedRows when lines disagree
    on length, EmptyFile when no data rows remain, NonFiniteValue for NaN or
    infinite observations, and InvalidLabel for non-integer labels.
    """
    path = Path(path)
    raw_labels: list[int] = []
    rows: list[np.ndarray] = []
    width = -1
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            tokens = text.split(",") if "," in text else text.split()
            tokens = [t for t in (tok.strip() for tok in tokens) if t]
            if len(tokens) < 2:
                raise ParseError(
                    f"{path}:{lineno}: need a label and at least one value"
                )
            if width == -1:
                width = len(tokens)
            elif len(tokens) != width:
                raise RaggedRows(
                    f"{path}:{lineno}: row has {len(tokens) - 1} values, "
                    f"expected {width - 1}"
                )
            try:
                label_value = float(tokens[0])
            except ValueError:
                raise ParseError(
                    f"{path}:{lineno}: bad label {tokens[0]!r}"
                ) from None
            if not float(label_value).is_integer():
                raise InvalidLabel(
                    f"{path}:{lineno}: label {tokens[0]!r} is not an integer"
                )
            try:
                values = np.array(tokens[1:], dtype=np.float64)
            except ValueError:
                bad = next(
                    (t for t in tokens[1:] if not _is_float(t)), tokens[1]
                )
                raise ParseError(
                    f"{path}:{lineno}: bad value {bad!r}"
                ) from None
            if not np.all(np.isfinite(values)):
                raise NonFiniteValue(
                    f"{path}:{lineno}: non-finite observation"
                )
            raw_labels.append(int(label_value))
            rows.append(values)
    if not rows:
        raise EmptyFile(f"{path}: no data rows")
    distinct = sorted(set(raw_labels))
    remap = {orig: i + 1 for i, orig in enumerate(distinct)}
    labels = np.array([remap[l] for l in raw_labels], dtype=np.int64)
    return Dataset(
        values=np.vstack(rows),
        labels=labels,
        num_classes=len(distinct),
        class_labels=tuple(distinct),
    )


def _is_float(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def save_ucr(data: Dataset, path, *, comment: str | None = None) -> None:
    """Write a Dataset back out, comma separated, original labels restored.

    Values are written with repr so a load round-trips them exactly. An
    optional comment becomes a leading '#' line.
    """
    originals = data.original_labels()
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        for i in range(data.n_instances):
            row = ",".join(repr(float(v)) for v in data.values[i])
            fh.write(f"{int(originals[i])},{row}\n")


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of the two synthetic two-class generators.

    The noise generator uses only series_length, per_class and seed. The
    shifted generator additionally offsets class 2 by mean_shift inside
    mean_interval and scales its noise by std_factor inside std_interval
    (scaling happens before shifting when the intervals overlap).
    """

    series_length: int = 1000
    per_class: int = 100
    seed: int = 0
    mean_interval: tuple[int, int] = (201, 250)
    mean_shift: float = 2.0
    std_interval: tuple[int, int] = (501, 550)
    std_factor: float = 3.0

    def __post_init__(self) -> None:
        if int(self.series_length) < 1:
            raise ValueError("series_length must be >= 1")
        if int(self.per_class) < 1:
            raise ValueError("per_class must be >= 1")
        for name in ("mean_interval", "std_interval"):
            t1, t2 = getattr(self, name)
            if not (1 <= int(t1) <= int(t2) <= int(self.series_length)):
                raise ValueError(
                    f"{name} ({t1}, {t2}) outside 1..{self.series_length}"
                )
        object.__setattr__(self, "series_length", int(self.series_length))
        object.__setattr__(self, "per_class", int(self.per_class))
        object.__setattr__(self, "seed", int(self.seed))


def scaled_spec(series_length: int, per_class: int = 100, seed: int = 0) -> SyntheticSpec:
    """A SyntheticSpec whose intervals scale with the series length.

    At the canonical length 1000 this reproduces the default spec exactly;
    other lengths place the mean interval at roughly 20-25 percent of the
    series and the std interval at 50-55 percent.
    """
    m = int(series_length)

    def pos(canonical: int) -> int:
        return min(m, max(1, round(canonical * m / 1000)))

    lo_m, hi_m = pos(201), pos(250)
    lo_s, hi_s = pos(501), pos(550)
    return SyntheticSpec(
        series_length=m,
        per_class=per_class,
        seed=seed,
        mean_interval=(lo_m, max(lo_m, hi_m)),
        std_interval=(lo_s, max(lo_s, hi_s)),
    )


def _spec_rng(spec: SyntheticSpec) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([spec.seed])))


def _noise_matrix(spec: SyntheticSpec) -> np.ndarray:
    rng = _spec_rng(spec)
    return rng.standard_normal((2 * spec.per_class, spec.series_length))


def _labels(spec: SyntheticSpec) -> np.ndarray:
    labels = np.ones(2 * spec.per_class, dtype=np.int64)
    labels[spec.per_class :] = 2
    return labels


def generate_noise_dataset(spec: SyntheticSpec = SyntheticSpec()) -> Dataset:
    """Two classes of pure standard normal noise; labels are uninformative.

    Class 1 occupies the first per_class rows, class 2 the rest. Everything
    is a deterministic function of the seed.
    """
    return Dataset(
        values=_noise_matrix(spec),
        labels=_labels(spec),
        num_classes=2,
        class_labels=(1, 2),
    )


def generate_shifted_dataset(spec: SyntheticSpec = SyntheticSpec()) -> Dataset:
    """Noise plus class-2 structure: a mean shift in one interval, inflated
    standard deviation in another.

    Draws the same noise matrix as :func:`generate_noise_dataset` for the
    same seed, then modifies only the class-2 rows.
    """
    values = _noise_matrix(spec)
    half = spec.per_class
    s1, s2 = spec.std_interval
    values[half:, s1 - 1 : s2] *= float(spec.std_factor)
    m1, m2 = spec.mean_interval
    values[half:, m1 - 1 : m2] += float(spec.mean_shift)
    return Dataset(
        values=values,
        labels=_labels(spec),
        num_classes=2,
        class_labels=(1, 2),
    )
