"""Construction of cone germs from derivatives, profile samples and profile CSV files."""

import csv
import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path

import numpy as np

from .exceptions import DomainError, FitError, ProfileParseError, ValidationError
from .models import ConeData, CurvatureClass, EmbeddingData, ProfileSample
from .models.cone import Real

logger = logging.getLogger(__name__)

PROFILE_HEADER = ("r", "f")
FIT_DEGREES = (2, 3)


def from_derivatives(fprime0: Real, fsecond0: Real = 0.0) -> ConeData:
    return ConeData(fprime0, fsecond0)


def orbifold_cone(n: int) -> ConeData:
    """Germ (1/n, 0) of an orbifold cone point of order n, e.g. f = sin(r)/n."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValidationError(f"orbifold order must be a positive integer, got {n!r}")
    return ConeData(Fraction(1, n), Fraction(0))


def embedding(cone: ConeData) -> EmbeddingData:
    """
    Cone angle phi = arcsin f'(0) and tip curvature kappa(0) = (f''(0)/f'(0)) tan(phi) of the profile curve,
    when the germ comes from a surface of revolution in R^3 (possible only for f'(0) <= 1).
    """
    fp = float(cone.fprime0)
    if fp > 1.0:
        return EmbeddingData(embeddable=False)
    if fp == 1.0:
        return EmbeddingData(embeddable=True, phi=0.5 * math.pi)
    # (f''/f') tan(arcsin f') = f'' / sqrt(1 - f'^2)
    return EmbeddingData(
        embeddable=True,
        phi=math.asin(fp),
        kappa0=float(cone.fsecond0) / math.sqrt((1.0 - fp) * (1.0 + fp)),
    )


def curvature_class(cone: ConeData) -> CurvatureClass:
    """Limit of the Gauss curvature K = -f''/f at the tip."""
    if cone.fsecond0 == 0:
        return CurvatureClass.FINITE
    return CurvatureClass.PLUS_INFINITY if cone.fsecond0 < 0 else CurvatureClass.MINUS_INFINITY


def from_profile_samples(samples: Sequence[ProfileSample], degree: int = 3) -> ConeData:
    """
    Least-squares fit f(r) ~ a r + b r^2/2 (+ c r^3/6) through the origin; returns the germ (a, b).

    Columns are scaled to unit maximum before the solve, so samples at small r stay well conditioned.
    """
    if degree not in FIT_DEGREES:
        raise DomainError(f"fit degree must be one of {FIT_DEGREES}, got {degree!r}")
    if len(samples) < degree + 1:
        raise FitError(f"degree {degree} fit needs at least {degree + 1} samples, got {len(samples)}")

    ordered = sorted(samples, key=lambda s: s.r)
    r = np.array([s.r for s in ordered])
    f = np.array([s.f_r for s in ordered])
    if np.any(np.diff(r) == 0):
        raise FitError("profile samples must have distinct r")

    design = np.column_stack([r**p / math.factorial(p) for p in range(1, degree + 1)])
    scale = np.abs(design).max(axis=0)
    coeffs, _, rank, _ = np.linalg.lstsq(design / scale, f, rcond=None)
    if rank < degree:
        raise FitError(f"profile samples are degenerate (rank {rank} < {degree})")
    coeffs = coeffs / scale

    logger.debug(f"profile fit degree {degree}: coefficients {coeffs.tolist()}")
    return from_derivatives(float(coeffs[0]), float(coeffs[1]))


def read_profile_csv(path: str | Path) -> list[ProfileSample]:
    """Read a profile CSV with header `r,f`; errors carry the 1-based line number."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ProfileParseError("empty profile file", line=1)
        if tuple(field.strip() for field in header) != PROFILE_HEADER:
            raise ProfileParseError(f"expected header 'r,f', got {','.join(header)!r}", line=1)

        samples = []
        for row in reader:
            line = reader.line_num
            if not row or all(not field.strip() for field in row):
                continue
            if len(row) != 2:
                raise ProfileParseError(f"expected 2 fields, got {len(row)}", line=line)
            try:
                r_value, f_value = (float(field) for field in row)
            except ValueError as e:
                raise ProfileParseError(f"not a number: {e}", line=line) from e
            try:
                samples.append(ProfileSample(r_value, f_value))
            except ValidationError as e:
                raise ProfileParseError(str(e), line=line) from e

    if not samples:
        raise ProfileParseError("profile file has no samples", line=reader.line_num)
    return samples
