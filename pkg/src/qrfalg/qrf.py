"""Frame-aware reference-frame transformations.

A word is an ordered product of factors: exponentials of quadratic generators,
one parity swap, and (for boost words) an exact dilation.  Compilation walks
the factors right to left, matching nested operator conjugation, and returns
the affine canonical map from the source chart to the target chart.

Chart bookkeeping: every frame describes the other two particles.  Within a
word the kappa pair (slot 0 of the abstract algebra) is occupied by the frame
carrier, the target particle before the parity swap and the old frame after
it; the spectator occupies the hbar pair (slot 1).  Chart-level matrices are
presented in alphabetical particle order so maps with different slot
conventions can be composed and compared; with kappa = hbar the conventions
coincide, which is exactly the regime in which transitivity and composition
hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import canon, linalg, scalar, weyl
from .canon import CanonicalMap
from .scalar import HBAR, I, KAPPA, ONE, Scalar, T, ZERO
from .weyl import WeylPoly

__all__ = [
    "QrfError",
    "NonTerminatingDuhamel",
    "Chart",
    "ExpFactor",
    "SwapFactor",
    "DilationFactor",
    "RewireFactor",
    "QrfWord",
    "CompiledMap",
    "mass",
    "make_Sx",
    "make_ST",
    "make_Sb",
    "make_SD",
    "make_SD_factorized",
    "compile_word",
    "compose_compiled",
    "chart_map_from_images",
    "transitivity_check",
    "verify_SD_factorization",
    "extended_symmetry",
    "measurement_scenario",
    "standard_words",
    "bch_order3_check",
]

PARTICLES = ("A", "B", "C")

EQUAL_CONSTANTS = {"kappa": HBAR}


class QrfError(Exception):
    pass


class NonTerminatingDuhamel(QrfError):
    pass


def mass(particle: str) -> Scalar:
    return scalar.symbol(f"m_{particle}")


def _spectator(source: str, target: str) -> str:
    (rest,) = set(PARTICLES) - {source, target}
    return rest


@dataclass(frozen=True)
class Chart:
    """Relational coordinates of two particles as seen from `frame`.

    slot_particles = (kappa-pair occupant, hbar-pair occupant); presentation
    order of coordinates is alphabetical on particle labels.
    """

    frame: str
    slot_particles: tuple

    def __post_init__(self):
        if set(self.slot_particles) | {self.frame} != set(PARTICLES):
            raise QrfError(f"invalid chart {self}")

    @property
    def particles(self) -> tuple:
        return tuple(sorted(self.slot_particles))

    def slot_of(self, particle: str) -> int:
        return self.slot_particles.index(particle)

    def coordinate_names(self) -> tuple:
        return tuple(
            f"{kind}_{p}" for p in self.particles for kind in ("x", "p")
        )

    def constant_of(self, particle: str) -> Scalar:
        return KAPPA if self.slot_of(particle) == 0 else HBAR

    def omega(self):
        """Weighted symplectic form in alphabetical coordinate order."""
        p1, p2 = self.particles
        return canon.weighted_omega(self.constant_of(p1), self.constant_of(p2))

    def perm_to_slots(self):
        """Permutation P with chart row i living at slot index sigma(i)."""
        sigma = []
        for p in self.particles:
            base = 2 * self.slot_of(p)
            sigma.extend((base, base + 1))
        sigma.append(4)
        return tuple(
            tuple(ONE if j == sigma[i] else ZERO for j in range(5)) for i in range(5)
        )

    def operator(self, kind: str, particle: str) -> WeylPoly:
        """x or p of one described particle, in slot coordinates."""
        idx = 2 * self.slot_of(particle) + (0 if kind == "x" else 1)
        return WeylPoly.variable(idx)

    def free_hamiltonian(self) -> WeylPoly:
        """Sum of kinetic terms of the described particles (slot coords)."""
        out = weyl.zero()
        for p in self.slot_particles:
            out = out + weyl.kinetic(self.slot_of(p), mass(p))
        return out


def source_chart(source: str, target: str) -> Chart:
    return Chart(source, (target, _spectator(source, target)))


def target_chart(source: str, target: str) -> Chart:
    return Chart(target, (source, _spectator(source, target)))


# ---------------------------------------------------------------------------
# word factors

@dataclass(frozen=True)
class ExpFactor:
    """exp(i * prefactor * generator) with the generator in slot coordinates."""

    prefactor: Scalar
    generator: WeylPoly
    label: str = ""


@dataclass(frozen=True)
class SwapFactor:
    """Parity swap: old frame becomes the kappa particle with flipped sign."""

    new_frame: str
    old_frame: str


@dataclass(frozen=True)
class DilationFactor:
    """Exact dilation x -> ratio * x, p -> p / ratio on one slot."""

    slot: int
    ratio: Scalar


@dataclass(frozen=True)
class RewireFactor:
    """Exchange slot conventions between consecutive elementary words."""


@dataclass(frozen=True)
class QrfWord:
    source: str
    target: str
    factors: tuple
    name: str = ""
    # slot occupants of the starting chart; None means (target, spectator),
    # the convention of every elementary word
    start_slots: tuple = None

    def initial_chart(self) -> "Chart":
        slots = self.start_slots or (self.target, _spectator(self.source, self.target))
        return Chart(self.source, slots)

    def substitute_prefactors(self, bindings: dict) -> "QrfWord":
        out = []
        for f in self.factors:
            if isinstance(f, ExpFactor):
                out.append(
                    ExpFactor(
                        f.prefactor.substitute(bindings),
                        f.generator.substitute(bindings),
                        f.label,
                    )
                )
            elif isinstance(f, DilationFactor):
                out.append(DilationFactor(f.slot, f.ratio.substitute(bindings)))
            else:
                out.append(f)
        return QrfWord(self.source, self.target, tuple(out), self.name, self.start_slots)


# ---------------------------------------------------------------------------
# constructors for the elementary words

def make_Sx(source: str = "C", target: str = "A") -> QrfWord:
    """Relative-position change of frame: parity swap after a translation."""
    if source == target:
        raise QrfError("source and target frames must differ")
    factors = (
        SwapFactor(target, source),
        ExpFactor(ONE / HBAR, weyl.pair_translation(), "P"),
    )
    return QrfWord(source, target, factors, f"S_x({source}->{target})")


def make_ST(source: str = "C", target: str = "A") -> QrfWord:
    """Superposed translation: extended symmetry word with time factors."""
    if source == target:
        raise QrfError("source and target frames must differ")
    factors = (
        ExpFactor(-T / KAPPA, weyl.kinetic(0, mass(source)), "Q_old_frame"),
        SwapFactor(target, source),
        ExpFactor(ONE / HBAR, weyl.pair_translation(), "P"),
        ExpFactor(T / KAPPA, weyl.kinetic(0, mass(target)), "Q_new_frame"),
    )
    return QrfWord(source, target, factors, f"S_T({source}->{target})")


def make_Sb(source: str = "C", target: str = "A") -> QrfWord:
    """Superposed boost: includes the velocity-rescaling dilation."""
    if source == target:
        raise QrfError("source and target frames must differ")
    spect = _spectator(source, target)
    factors = (
        ExpFactor(-T / KAPPA, weyl.kinetic(0, mass(source)), "Q_old_frame"),
        SwapFactor(target, source),
        DilationFactor(0, mass(source) / mass(target)),
        ExpFactor(ONE / HBAR, weyl.pair_boost(mass(target), mass(spect), T), "K"),
        ExpFactor(T / KAPPA, weyl.kinetic(0, mass(target)), "Q_new_frame"),
    )
    return QrfWord(source, target, factors, f"S_b({source}->{target})")


def make_SD(source: str = "C", target: str = "A") -> QrfWord:
    """Composition boost(mid->target) * translation(source->mid).

    Only meaningful at kappa = hbar (the two subwords assign the constants to
    different particles); callers substitute EQUAL_CONSTANTS on results.
    """
    mid = _spectator(source, target)
    boost = make_Sb(mid, target)
    translation = make_ST(source, mid)
    factors = boost.factors + (RewireFactor(),) + translation.factors
    return QrfWord(
        source,
        target,
        factors,
        f"S_D({source}->{target})",
        start_slots=translation.initial_chart().slot_particles,
    )


def make_SD_factorized(source: str = "C", target: str = "A") -> QrfWord:
    """Single-swap factorized form of the composed transformation.

    Eight exponential-type factors at kappa = hbar: two time evolutions, two
    dilations, a boost sandwiched between opposite translations, and a final
    time evolution, all in the source chart, with the parity swap leftmost.
    """
    spect = _spectator(source, target)
    mt, ms, mf = mass(target), mass(spect), mass(source)
    factors = (
        SwapFactor(target, source),
        ExpFactor(-(mt / mf) * T / HBAR, weyl.kinetic(0, mt), "Q_new_frame"),
        ExpFactor(-(ONE - mf**2 / ms**2) * T / HBAR, weyl.kinetic(1, ms), "Q_spectator"),
        DilationFactor(0, mf / mt),
        DilationFactor(1, ms / mf),
        ExpFactor(-((mt / mf) ** 2) / HBAR, weyl.pair_translation(), "P"),
        ExpFactor((mf / ms) / HBAR, weyl.pair_boost(mt, ms, T), "K"),
        ExpFactor((mt / mf) / HBAR, weyl.pair_translation(), "P"),
        ExpFactor(T / HBAR, weyl.kinetic(0, mt), "Q_new_frame"),
    )
    return QrfWord(source, target, factors, f"S_D_factorized({source}->{target})")


# ---------------------------------------------------------------------------
# compilation

_SWAP_ROWS = (
    (-ONE, ZERO, ZERO, ZERO, ZERO),
    (ZERO, -ONE, ZERO, ZERO, ZERO),
    (ZERO, ZERO, ONE, ZERO, ZERO),
    (ZERO, ZERO, ZERO, ONE, ZERO),
    (ZERO, ZERO, ZERO, ZERO, ONE),
)

_REWIRE_ROWS = (
    (ZERO, ZERO, ONE, ZERO, ZERO),
    (ZERO, ZERO, ZERO, ONE, ZERO),
    (ONE, ZERO, ZERO, ZERO, ZERO),
    (ZERO, ONE, ZERO, ZERO, ZERO),
    (ZERO, ZERO, ZERO, ZERO, ONE),
)


def _dilation_rows(slot: int, ratio: Scalar):
    d = [ONE] * 5
    d[2 * slot] = ratio
    d[2 * slot + 1] = ratio.inv()
    return tuple(
        tuple(d[i] if i == j else ZERO for j in range(5)) for i in range(5)
    )


def _factor_matrix_and_chart(factor, chart: Chart):
    """Matrix of one factor in slot coordinates plus the chart after it."""
    if isinstance(factor, ExpFactor):
        return canon.exp_adjoint(factor.generator, factor.prefactor), chart
    if isinstance(factor, DilationFactor):
        return CanonicalMap(_dilation_rows(factor.slot, factor.ratio)), chart
    if isinstance(factor, SwapFactor):
        if factor.old_frame != chart.frame:
            raise QrfError(
                f"swap expects frame {factor.old_frame}, chart is {chart.frame}"
            )
        if chart.slot_particles[0] != factor.new_frame:
            raise QrfError("swap must act on the kappa-pair occupant")
        new_chart = Chart(
            factor.new_frame, (factor.old_frame, chart.slot_particles[1])
        )
        return CanonicalMap(_SWAP_ROWS), new_chart
    if isinstance(factor, RewireFactor):
        new_chart = Chart(
            chart.frame, (chart.slot_particles[1], chart.slot_particles[0])
        )
        return CanonicalMap(_REWIRE_ROWS), new_chart
    raise QrfError(f"unknown factor {factor!r}")


@dataclass(frozen=True)
class CompiledMap:
    """Canonical map of a word, with chart metadata.

    `slot_map` is expressed in slot coordinates of the source and target
    charts; `chart_rows` presents it in alphabetical particle order.
    """

    source: Chart
    target: Chart
    slot_map: CanonicalMap

    @property
    def chart_rows(self) -> CanonicalMap:
        p_src = self.source.perm_to_slots()
        p_tgt = self.target.perm_to_slots()
        return CanonicalMap(
            linalg.mat_mul(linalg.mat_mul(p_src, self.slot_map.rows), linalg.transpose(p_tgt))
        )

    def substitute(self, bindings: dict) -> "CompiledMap":
        return CompiledMap(self.source, self.target, self.slot_map.substitute(bindings))

    def symplectic_residual(self, bindings: dict = None):
        """M Omega_tgt M^T - Omega_src over alphabetical chart coordinates.

        Optional bindings (e.g. EQUAL_CONSTANTS) are applied to the map and
        to both chart forms before the comparison.
        """
        rows = self.chart_rows
        omega_src = self.source.omega()
        omega_tgt = self.target.omega()
        if bindings:
            rows = rows.substitute(bindings)
            omega_src = tuple(
                tuple(e.substitute(bindings) for e in r) for r in omega_src
            )
            omega_tgt = tuple(
                tuple(e.substitute(bindings) for e in r) for r in omega_tgt
            )
        return canon.check_symplectic(rows, omega_src=omega_src, omega_tgt=omega_tgt)

    def is_symplectic(self, bindings: dict = None) -> bool:
        return linalg.is_zero_matrix(self.symplectic_residual(bindings))


def compile_word(word: QrfWord) -> CompiledMap:
    """Right-to-left conjugation walk over the factors of a word."""
    chart = word.initial_chart()
    start = chart
    rows = linalg.identity(5)
    for factor in reversed(word.factors):
        m, chart = _factor_matrix_and_chart(factor, chart)
        rows = linalg.mat_mul(rows, m.rows)
    if chart.frame != word.target:
        raise QrfError(
            f"word {word.name!r} compiled into frame {chart.frame}, "
            f"expected {word.target}"
        )
    return CompiledMap(start, chart, CanonicalMap(rows))


def compose_compiled(first: CompiledMap, second: CompiledMap) -> CompiledMap:
    """Apply `first`, then `second`; charts must share frame and particles."""
    if first.target.frame != second.source.frame or set(
        first.target.particles
    ) != set(second.source.particles):
        raise QrfError("charts do not line up for composition")
    rows = linalg.mat_mul(first.chart_rows.rows, second.chart_rows.rows)
    # present the result back in slot coordinates of the outer charts
    p_src = linalg.transpose(first.source.perm_to_slots())
    p_tgt = second.target.perm_to_slots()
    slot_rows = linalg.mat_mul(linalg.mat_mul(p_src, rows), p_tgt)
    return CompiledMap(first.source, second.target, CanonicalMap(slot_rows))


def chart_map_from_images(source: Chart, target: Chart, images: dict) -> CanonicalMap:
    """Build a chart-level map from {source coord name: {target name: Scalar}}.

    The affine part uses the pseudo-coordinate name "1".
    """
    src_names = source.coordinate_names()
    tgt_names = target.coordinate_names() + ("1",)
    rows = []
    for name in src_names:
        spec_row = images[name]
        rows.append(tuple(spec_row.get(t, ZERO) for t in tgt_names))
    rows.append((ZERO, ZERO, ZERO, ZERO, ONE))
    return CanonicalMap(rows)


# ---------------------------------------------------------------------------
# verification operations

@dataclass(frozen=True)
class TransitivityResult:
    kind: str
    matches: bool
    residual: tuple


def transitivity_check(kind: str, equal_constants: bool = True) -> TransitivityResult:
    """Compare the direct C->A word against the B-leg composition.

    With kappa = hbar the two maps agree; with the constants kept distinct the
    residual entries all carry a (kappa - hbar) factor.
    """
    make = {"T": make_ST, "b": make_Sb}[kind]
    direct = compile_word(make("C", "A"))
    first = compile_word(make("C", "B"))
    second = compile_word(make("B", "A"))
    composed = compose_compiled(first, second)
    lhs = composed.chart_rows
    rhs = direct.chart_rows
    if equal_constants:
        lhs = lhs.substitute(EQUAL_CONSTANTS)
        rhs = rhs.substitute(EQUAL_CONSTANTS)
    residual = linalg.mat_sub(lhs.rows, rhs.rows)
    return TransitivityResult(kind, linalg.is_zero_matrix(residual), residual)


def residual_is_multiple_of_constant_gap(residual) -> bool:
    """True when every residual entry vanishes at kappa = hbar."""
    return all(
        e.substitute(EQUAL_CONSTANTS).is_zero() for row in residual for e in row
    )


@dataclass(frozen=True)
class FactorizationResult:
    matches_symbolically: bool
    numeric_deviations: tuple


def verify_SD_factorization(seed: int = 20240901, trials: int = 3) -> FactorizationResult:
    """Composed word versus the eight-factor word, symbolically and numerically."""
    import random

    composed = compile_word(make_SD()).substitute(EQUAL_CONSTANTS)
    factorized = compile_word(make_SD_factorized()).substitute(EQUAL_CONSTANTS)
    symbolic = composed.chart_rows == factorized.chart_rows
    rng = random.Random(seed)
    deviations = []
    for _ in range(trials):
        bindings = {
            "hbar": 1.0,
            "kappa": 1.0,
            "m_A": rng.uniform(0.5, 3.0),
            "m_B": rng.uniform(0.5, 3.0),
            "m_C": rng.uniform(0.5, 3.0),
            "t": rng.uniform(-2.0, 2.0),
        }
        dev = 0.0
        for ra, rb in zip(composed.chart_rows.rows, factorized.chart_rows.rows):
            for ea, eb in zip(ra, rb):
                dev = max(dev, abs(ea.evaluate(bindings) - eb.evaluate(bindings)))
        deviations.append(dev)
    return FactorizationResult(symbolic, tuple(deviations))


def _duhamel(factor: ExpFactor, max_depth: int = 8) -> WeylPoly:
    """(d/dt exp(Y)) exp(-Y) = sum_n ad_Y^n(Ydot) / (n+1)! for Y = i c X."""
    from math import factorial

    y = factor.generator.scale(I * factor.prefactor)
    ydot = factor.generator.scale(I * factor.prefactor.derivative("t")) + factor.generator.derivative("t").scale(I * factor.prefactor)
    total = weyl.zero()
    term = ydot
    for n in range(max_depth):
        if term.is_zero():
            return total
        total = total + term.scale(scalar.rational(1, factorial(n + 1)))
        term = weyl.commutator(y, term)
    raise NonTerminatingDuhamel(
        f"adjoint series of factor {factor.label!r} did not terminate"
    )


def _walk_with_duhamels(word: QrfWord):
    """Factor matrices (application order) with their Duhamel contributions."""
    chart = word.initial_chart()
    mats = []
    duhamels = []
    for factor in reversed(word.factors):
        m, chart = _factor_matrix_and_chart(factor, chart)
        mats.append(m)
        duhamels.append(_duhamel(factor) if isinstance(factor, ExpFactor) else None)
    total_rows = linalg.identity(5)
    rests = [None] * len(mats)
    for i in range(len(mats) - 1, -1, -1):
        rests[i] = CanonicalMap(total_rows)
        total_rows = linalg.mat_mul(mats[i].rows, total_rows)
    return CanonicalMap(total_rows), mats, duhamels, rests


def derivative_term(word: QrfWord) -> WeylPoly:
    """(dS/dt) S^dagger in target slot coordinates.

    Assembled factorwise: each time-dependent exponential contributes its
    terminating derivative-of-the-exponential series, conjugated by the
    factors standing to its left in the word.
    """
    _, _, duhamels, rests = _walk_with_duhamels(word)
    out = weyl.zero()
    for rest, duh in zip(rests, duhamels):
        if duh is not None and not duh.is_zero():
            out = out + rest.apply(duh)
    return out


def extended_symmetry(word: QrfWord, hamiltonian: WeylPoly) -> WeylPoly:
    """S H S^dagger + i hbar (dS/dt) S^dagger in target slot coordinates."""
    total, _, duhamels, rests = _walk_with_duhamels(word)
    out = total.apply(hamiltonian)
    for rest, duh in zip(rests, duhamels):
        if duh is not None and not duh.is_zero():
            out = out + rest.apply(duh).scale(I * HBAR)
    return out


@dataclass(frozen=True)
class MeasurementResult:
    relative_position_image: WeylPoly
    relative_position_value: Scalar
    plain_position_image: WeylPoly
    plain_position_value: Scalar


def measurement_scenario(a: Scalar, b: Scalar) -> MeasurementResult:
    """Position measurement seen from both frames for the state data (a, b).

    In the source chart the particles sit at positions a and b with vanishing
    momenta.  The relative-position observable keeps the value b; the
    observable comparing to the old frame carrier reads b - a.
    """
    word = make_Sx("C", "A")
    compiled = compile_word(word)
    src, tgt = compiled.source, compiled.target
    obs_plain = src.operator("x", "B")
    obs_relative = obs_plain - src.operator("x", "A")
    image_plain = compiled.slot_map.apply(obs_plain)
    image_relative = compiled.slot_map.apply(obs_relative)
    # transformed state means mu' solve M [mu'; 1] = [mu; 1]
    mu = [ZERO] * 5
    mu[2 * src.slot_of("A")] = a
    mu[2 * src.slot_of("B")] = b
    mu[4] = ONE
    inv = compiled.slot_map.inverse()
    mu_t = linalg.mat_vec(inv.rows, mu)

    def mean_of(p: WeylPoly) -> Scalar:
        if p.degree() > 1:
            raise QrfError("mean evaluation expects an affine observable")
        out = p.coefficient((0, 0, 0, 0))
        for idx in range(4):
            mono = [0, 0, 0, 0]
            mono[idx] = 1
            out = out + p.coefficient(tuple(mono)) * mu_t[idx]
        return out

    return MeasurementResult(
        relative_position_image=image_plain,
        relative_position_value=mean_of(image_plain),
        plain_position_image=image_relative,
        plain_position_value=mean_of(image_relative),
    )


def standard_words():
    """The four transformations exercised by the numerical oracle."""
    return (
        make_Sx("C", "A"),
        make_ST("C", "A"),
        make_Sb("C", "A"),
        make_SD("C", "A"),
    )


# ---------------------------------------------------------------------------
# order-3 consistency of the group composition series

def _drop_high_powers(s: Scalar, name: str, max_degree: int) -> Scalar:
    idx = scalar.register_symbol(name)
    num = scalar.Poly(
        {
            m: c
            for m, c in s.num.terms.items()
            if (m[idx] if idx < len(m) else 0) <= max_degree
        }
    )
    if any((m[idx] if idx < len(m) else 0) for m in s.den.terms):
        raise QrfError("cannot truncate a denominator-dependent parameter")
    return scalar.Scalar(num, s.den)


def bch_order3_check(x: WeylPoly, y: WeylPoly, basis=None):
    """Check exp(i eps x) exp(i eps y) against the series exponent to order 3.

    Both sides are expanded in the formal order-counting parameter eps and
    compared entrywise modulo eps^4; the nested commutators are also required
    to decompose over the supplied basis (closure of the composition law).
    """
    from . import lie

    eps = scalar.symbol("eps")
    # operator product exp(i eps x) exp(i eps y): the y factor conjugates first
    lhs = canon.compose(canon.exp_adjoint(y, eps), canon.exp_adjoint(x, eps))
    xy = weyl.commutator(x, y)
    exponent = (
        (x + y).scale(eps)
        + xy.scale(I * eps**2 * scalar.rational(1, 2))
        - (weyl.commutator(x, xy) - weyl.commutator(y, xy)).scale(
            eps**3 * scalar.rational(1, 12)
        )
    )
    n = canon.adjoint_matrix(exponent, ONE)
    series = linalg.identity(5)
    power = linalg.identity(5)
    fact = 1
    for k in range(1, 4):
        power = linalg.mat_mul(power, n)
        fact *= k
        series = tuple(
            tuple(s + p * scalar.rational(1, fact) for s, p in zip(sr, pr))
            for sr, pr in zip(series, power)
        )
    ok = True
    for lr, rr in zip(lhs.rows, series):
        for le, re_ in zip(lr, rr):
            la = _drop_high_powers(le, "eps", 3)
            ra = _drop_high_powers(re_, "eps", 3)
            if la != ra:
                ok = False
    in_span = True
    if basis is not None:
        try:
            for w in (xy, weyl.commutator(x, xy), weyl.commutator(y, xy)):
                lie.decompose(w, basis)
        except lie.NotInSpan:
            in_span = False
    return ok, in_span
