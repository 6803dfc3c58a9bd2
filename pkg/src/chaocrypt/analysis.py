"""Chaos diagnostics and desk-scale experiments.

Covers the bifurcation sweeps, the two-exponent Lyapunov spectrum via the
Benettin tangent-frame method, the (a, b) fitness landscape, the
plaintext-length experiment, key sensitivity probes, and key-space size
arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

import numpy as np

from .chaos import TWO_PI, MapParams, MapState, _step_xy, generate_sequence
from .cipher import KeyRecord, build_keystream, decrypt, validate_key_record, xor_apply
from .errors import InvalidInput, NumericalError
from .ga import FitnessEvaluator, GaConfig, evolve

# Default initial point for sweeps and exponent scans.  Nothing special about
# it beyond being in the basin; it is echoed into CSV headers so runs can be
# reproduced.
DEFAULT_SWEEP_STATE = MapState(0.1, 0.1)

KEY_COMPONENTS = ("a", "b", "x0", "y0")

# (low, high, precision) per key component: a, b at 1e-15, x0, y0 at 1e-16.
DEFAULT_KEYSPACE_RANGES = (
    (1.0, 4.0, 1e-15),
    (0.1, 4.0, 1e-15),
    (0.0, 1.0, 1e-16),
    (0.0, 1.0, 1e-16),
)


@dataclass(frozen=True)
class SweepSpec:
    """One bifurcation sweep: hold one parameter, step the other."""

    swept_parameter: str  # "a" or "b"
    fixed_value: float
    range_low: float
    range_high: float
    steps: int
    iterations: int
    transient: int
    initial_state: MapState = DEFAULT_SWEEP_STATE


@dataclass(frozen=True)
class LyapunovResult:
    exponent_1: float  # per-step log divergence, natural log, sorted descending
    exponent_2: float
    iterations: int
    transient: int


@dataclass(frozen=True)
class LengthTrialResult:
    length: int
    trial: int
    generations: int
    max_fitness: float
    terminated_by: str


def _validate_sweep(spec: SweepSpec) -> None:
    if spec.swept_parameter not in ("a", "b"):
        raise InvalidInput("swept_parameter must be 'a' or 'b'")
    if not math.isfinite(spec.fixed_value):
        raise InvalidInput("fixed_value must be finite")
    if not (spec.range_low < spec.range_high):
        raise InvalidInput("range_low must be < range_high")
    if spec.steps < 2:
        raise InvalidInput("steps must be >= 2")
    if spec.transient < 0 or spec.iterations <= spec.transient:
        raise InvalidInput("need iterations > transient >= 0")


def bifurcation_sweep(spec: SweepSpec) -> np.ndarray:
    """Asymptotic x-values against the swept parameter.

    Returns a (steps * (iterations - transient)) x 2 array; column 0 is the
    parameter value, column 1 the post-transient x-value.
    """
    _validate_sweep(spec)
    values = np.linspace(spec.range_low, spec.range_high, spec.steps)
    m = spec.iterations - spec.transient
    out = np.empty((spec.steps * m, 2), dtype=np.float64)
    for i, p in enumerate(values):
        if spec.swept_parameter == "a":
            params = MapParams(a=float(p), b=spec.fixed_value)
        else:
            params = MapParams(a=spec.fixed_value, b=float(p))
        xs, _ = generate_sequence(params, spec.initial_state, m, spec.transient)
        out[i * m : (i + 1) * m, 0] = p
        out[i * m : (i + 1) * m, 1] = xs
    return out


def bin_coverage(xs, bins: int = 100) -> float:
    """Fraction of equal-width bins of [0, 1) hit by the values."""
    arr = np.asarray(xs, dtype=np.float64)
    if arr.size == 0:
        raise InvalidInput("no values")
    idx = np.minimum((arr * bins).astype(np.int64), bins - 1)
    return len(np.unique(idx)) / bins


def lyapunov_spectrum(
    params: MapParams,
    initial: MapState,
    iterations: int = 2500,
    transient: int = 500,
) -> LyapunovResult:
    """Both Lyapunov exponents by the tangent-frame (Benettin) method.

    An orthonormal frame rides the orbit under the per-step Jacobian

        J(x, y) = [[1, 2*pi*a*cos(2*pi*y)],
                   [-2*a*x, 1]]

    with Gram-Schmidt re-orthonormalization every step; the exponents are the
    per-step averages of log stretch factors over the post-transient window.
    The frame is carried through the transient too, so it is already aligned
    when measurement starts.
    """
    if transient < 0 or iterations <= transient:
        raise InvalidInput("need iterations > transient >= 0")
    a, b = params.a, params.b
    x, y = initial.x, initial.y
    v1x, v1y = 1.0, 0.0
    v2x, v2y = 0.0, 1.0
    s1 = s2 = 0.0
    for i in range(iterations):
        j12 = TWO_PI * a * math.cos(TWO_PI * y)
        j21 = -2.0 * a * x
        u1x = v1x + j12 * v1y
        u1y = j21 * v1x + v1y
        u2x = v2x + j12 * v2y
        u2y = j21 * v2x + v2y
        r1 = math.hypot(u1x, u1y)
        if not (r1 > 0.0 and math.isfinite(r1)):
            raise NumericalError("tangent frame degenerated")
        e1x, e1y = u1x / r1, u1y / r1
        d = u2x * e1x + u2y * e1y
        w2x, w2y = u2x - d * e1x, u2y - d * e1y
        r2 = math.hypot(w2x, w2y)
        if not (r2 > 0.0 and math.isfinite(r2)):
            raise NumericalError("tangent frame degenerated")
        v1x, v1y = e1x, e1y
        v2x, v2y = w2x / r2, w2y / r2
        if i >= transient:
            s1 += math.log(r1)
            s2 += math.log(r2)
        x, y = _step_xy(a, b, x, y)
        if not math.isfinite(y):
            raise NumericalError("orbit diverged to non-finite values")
    measured = iterations - transient
    l1, l2 = s1 / measured, s2 / measured
    if l2 > l1:
        l1, l2 = l2, l1
    return LyapunovResult(l1, l2, iterations, transient)


def fitness_landscape(plaintext, a_range, b_range, grid_a: int, grid_b: int) -> np.ndarray:
    """Fitness of encrypting `plaintext` at every point of an (a, b) grid.

    Returns grid_a * grid_b rows of (a, b, fitness), a-major order.
    """
    a_low, a_high = a_range
    b_low, b_high = b_range
    if not (a_low < a_high) or not (b_low < b_high):
        raise InvalidInput("ranges must satisfy low < high")
    if grid_a < 1 or grid_b < 1:
        raise InvalidInput("grid sizes must be >= 1")
    evaluator = FitnessEvaluator(plaintext)
    a_vals = np.linspace(a_low, a_high, grid_a)
    b_vals = np.linspace(b_low, b_high, grid_b)
    out = np.empty((grid_a * grid_b, 3), dtype=np.float64)
    row = 0
    for a in a_vals:
        for b in b_vals:
            out[row, 0] = a
            out[row, 1] = b
            out[row, 2] = evaluator.score(MapParams(float(a), float(b)))
            row += 1
    return out


# English letter frequencies, most common twelve letters only.  Sample texts
# keep a natural-text-sized alphabet even at a few thousand bytes, which is
# what makes the length-versus-fitness trend observable: the score compares
# value alphabets, and a plaintext alphabet near 100 symbols leaves no room
# above it.
_TEXT_LETTERS = "etaoinshrdlu"
_TEXT_WEIGHTS = (12.7, 9.1, 8.2, 7.5, 7.0, 6.7, 6.3, 6.1, 6.0, 4.3, 4.0, 2.8)


def sample_text(length: int, rng: random.Random) -> bytes:
    """Random words over common English letters, single-space separated."""
    if length < 1:
        raise InvalidInput("length must be >= 1")
    chars: list[str] = []
    while len(chars) < length:
        word = rng.choices(_TEXT_LETTERS, weights=_TEXT_WEIGHTS, k=rng.randint(2, 9))
        chars.extend(word[: length - len(chars)])
        if len(chars) < length:
            chars.append(" ")
    return "".join(chars).encode("ascii")


def _derive_seed(base: int, length: int, trial: int, salt: int) -> int:
    return (base * 1_000_003 + length * 7_919 + trial * 104_729 + salt) & 0x7FFFFFFF


def length_experiment(lengths, config: GaConfig, trials: int = 1) -> list[LengthTrialResult]:
    """Evolve a key for a fresh random text at each length, `trials` times.

    Per-run seeds derive from config.rng_seed, the length, and the trial
    index, so the whole experiment is reproducible from one seed.
    """
    if trials < 1:
        raise InvalidInput("trials must be >= 1")
    lengths = list(lengths)
    if any(n < 1 for n in lengths):
        raise InvalidInput("every length must be >= 1")
    results: list[LengthTrialResult] = []
    for length in lengths:
        for trial in range(trials):
            text_rng = random.Random(_derive_seed(config.rng_seed, length, trial, 0))
            plaintext = sample_text(length, text_rng)
            run_config = replace(config, rng_seed=_derive_seed(config.rng_seed, length, trial, 1))
            report = evolve(plaintext, run_config)
            results.append(
                LengthTrialResult(
                    length=length,
                    trial=trial,
                    generations=report.generations_run,
                    max_fitness=report.best_genome.fitness,
                    terminated_by=report.terminated_by,
                )
            )
    return results


def summarize_lengths(results) -> list[tuple[int, float, float, float]]:
    """Per-length (length, max fitness, mean fitness, mean generations)."""
    by_length: dict[int, list[LengthTrialResult]] = {}
    for r in results:
        by_length.setdefault(r.length, []).append(r)
    out = []
    for length in sorted(by_length):
        rows = by_length[length]
        out.append(
            (
                length,
                max(r.max_fitness for r in rows),
                sum(r.max_fitness for r in rows) / len(rows),
                sum(r.generations for r in rows) / len(rows),
            )
        )
    return out


def sensitivity_probe(plaintext, key: KeyRecord, component: str, epsilon: float) -> float:
    """Fraction of bytes that fail to decrypt after nudging one key component.

    Encrypts with `key` as-is, adds epsilon to the chosen component, decrypts
    with the perturbed key, and compares against the original plaintext.
    """
    if component not in KEY_COMPONENTS:
        raise InvalidInput(f"component must be one of {KEY_COMPONENTS}")
    if not (epsilon >= 0.0):
        raise InvalidInput("epsilon must be >= 0")
    data = bytes(plaintext)
    if len(data) == 0:
        raise InvalidInput("plaintext must be non-empty")
    validate_key_record(key)
    ks = build_keystream(MapParams(key.a, key.b), MapState(key.x0, key.y0), len(data))
    ciphertext = xor_apply(data, ks.key)
    perturbed = replace(key, **{component: getattr(key, component) + epsilon})
    recovered = decrypt(ciphertext, perturbed)
    original = np.frombuffer(data, dtype=np.uint8)
    return float(np.mean(np.frombuffer(recovered, dtype=np.uint8) != original))


def keyspace_size(ranges) -> float:
    """Product of (high - low) / precision over all key components."""
    total = 1.0
    for low, high, precision in ranges:
        if not (high > low):
            raise InvalidInput("each range needs high > low")
        if not (precision > 0.0):
            raise InvalidInput("each precision must be > 0")
        total *= (high - low) / precision
    return total
