//! Vertical tangencies of profile curves and the family classification.
//!
//! A profile point is a vertical tangency when `ċ₊(s) = (0, b)` with `b ≠ 0`.
//! Away from the axis this forces `U²(s) = U̇²(s)`, which the closed forms
//! turn into a quadratic in `s²`, `cosh 2αs` or `sin 2αs`. Not every root of
//! that quadratic is a tangency: the reduction squares away the sign of
//! `λ̇`, so each root is re-tested against `tanh ρ λ̇ + sech²ρ ρ̇ = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{lambda_between, FamilyParams, Regime};
use crate::quad::Quadrature;

/// Roots closer than this are reported once.
pub const ROOT_MERGE_TOL: f64 = 1e-9;
/// Maximum `|tanh ρ λ̇ + sech²ρ ρ̇|` for an admissible tangency.
pub const TANGENCY_RESIDUAL: f64 = 1e-8;
/// Algebraic roots with a larger residual are not polished.
const POLISH_RESIDUAL: f64 = 1e-5;
/// Maximum residual accepted by [`direction_of`].
pub const DIRECTION_RESIDUAL: f64 = 1e-6;

/// A closed interval of the natural parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::InvalidParameter(format!("empty window [{lo}, {hi}]")));
        }
        Ok(Window { lo, hi })
    }

    pub fn all() -> Self {
        Window { lo: f64::NEG_INFINITY, hi: f64::INFINITY }
    }

    pub fn contains(&self, s: f64) -> bool {
        self.lo - ROOT_MERGE_TOL <= s && s <= self.hi + ROOT_MERGE_TOL
    }

    fn shifted(&self, d: f64) -> Self {
        Window { lo: self.lo + d, hi: self.hi + d }
    }
}

/// Which closed-form expression produced a root.
///
/// `Plus`/`Minus` select the sign in front of the square root of the
/// discriminant; for `H > 1`, `Principal` roots satisfy `|2αs mod 2π| < π/2`
/// and `Reflected` ones lie on the `π − arcsin` branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootBranch {
    PlusPositive,
    PlusNegative,
    MinusPositive,
    MinusNegative,
    PlusPrincipal,
    PlusReflected,
    MinusPrincipal,
    MinusReflected,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabeledRoot {
    pub s: f64,
    pub branch: RootBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangencyPoint {
    pub s: f64,
    /// Model height `z` of `c₊(s)`.
    pub height: f64,
    /// Model abscissa `x` of `c₊(s)` (radius of the contact circle).
    pub x: f64,
    pub direction: Direction,
    pub branch: RootBranch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OtherCase {
    /// `H = 1`, `a > 0`.
    H1Positive,
    /// `0 ≤ H < 1`, `a > 0`.
    SubOnePositive,
    /// `0 < H < 1`, `a < −1/(4H)`: no tangencies.
    SubOneBelowThreshold,
    /// `H > 1`, `a < −1/(4H)`: no tangencies.
    SuperOneBelowThreshold,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    CatenoidCousin,
    UmbilicalH1,
    EquidistantType,
    UmbilicalSubOne,
    TotallyGeodesic,
    OnduloidType,
    UmbilicalSuperOne,
    Nodoid,
    Other(OtherCase),
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::CatenoidCousin => "catenoid-cousin",
            FamilyKind::UmbilicalH1 => "umbilical-h1",
            FamilyKind::EquidistantType => "equidistant",
            FamilyKind::UmbilicalSubOne => "umbilical-sub-one",
            FamilyKind::TotallyGeodesic => "totally-geodesic",
            FamilyKind::OnduloidType => "onduloid",
            FamilyKind::UmbilicalSuperOne => "umbilical-super-one",
            FamilyKind::Nodoid => "nodoid",
            FamilyKind::Other(OtherCase::H1Positive) => "other-h1-positive",
            FamilyKind::Other(OtherCase::SubOnePositive) => "other-sub-one-positive",
            FamilyKind::Other(OtherCase::SubOneBelowThreshold) => "other-sub-one-below-threshold",
            FamilyKind::Other(OtherCase::SuperOneBelowThreshold) => "other-super-one-below-threshold",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RejectReason {
    /// The profile never meets a horizontal horosphere perpendicularly.
    NoTangency,
    /// Only one perpendicular contact: the surface cannot span a slab.
    SingleTangency,
    /// Contacts point in opposite directions, so the surface leaves the slab.
    MixedDirections,
    /// Non-embedded profiles.
    NotEmbedded,
    TotallyGeodesic,
    /// The arc between two contacts reaches the rotation axis.
    AxisContact,
}

impl RejectReason {
    pub fn code(&self) -> &'static str {
        match self {
            RejectReason::NoTangency => "no-tangency",
            RejectReason::SingleTangency => "single-tangency",
            RejectReason::MixedDirections => "mixed-directions",
            RejectReason::NotEmbedded => "not-embedded",
            RejectReason::TotallyGeodesic => "totally-geodesic",
            RejectReason::AxisContact => "axis-contact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Admissibility {
    Admissible,
    Rejected(RejectReason),
}

/// Discriminant of the quadratic obtained from `U² = U̇²`.
pub fn discriminant(fp: &FamilyParams) -> f64 {
    let d = fp.disc_factor();
    match fp.regime() {
        Regime::EqualOne => (1.0 + 2.0 * fp.a()).powi(6) * d,
        Regime::SubOne | Regime::SuperOne => {
            let b = fp.big_b();
            let w = 1.0 - fp.h() * fp.h();
            4.0 * b * b * w * w * d
        }
    }
}

fn merge_sorted(mut roots: Vec<LabeledRoot>) -> Vec<LabeledRoot> {
    roots.sort_by(|p, q| p.s.total_cmp(&q.s));
    let mut out: Vec<LabeledRoot> = Vec::with_capacity(roots.len());
    for r in roots {
        match out.last() {
            Some(last) if (r.s - last.s).abs() <= ROOT_MERGE_TOL => {}
            _ => out.push(r),
        }
    }
    out
}

/// All real solutions of `U²(s) = U̇²(s)` in `window`, tagged with the
/// expression that produced them.
pub fn labeled_roots(fp: &FamilyParams, window: Window) -> Vec<LabeledRoot> {
    use RootBranch::*;
    let d = fp.disc_factor();
    let (h, a) = (fp.h(), fp.a());
    let mut raw = Vec::new();
    match fp.regime() {
        Regime::EqualOne => {
            if d < 0.0 {
                return Vec::new();
            }
            let k = 1.0 + 2.0 * a;
            let sq = d.sqrt();
            let s1 = (k + sq) / (2.0 * k);
            // (k − √(1+4a)) / (2k) without cancellation
            let s3 = 2.0 * a * a / (k * (k + sq));
            raw.extend([
                LabeledRoot { s: s1, branch: PlusPositive },
                LabeledRoot { s: -s1, branch: PlusNegative },
                LabeledRoot { s: s3, branch: MinusPositive },
                LabeledRoot { s: -s3, branch: MinusNegative },
            ]);
        }
        Regime::SubOne => {
            let (al, b, big_a) = (fp.alpha(), fp.big_b(), fp.big_a());
            let cs: Vec<(f64, bool)> = if h == 0.0 {
                vec![((b * b + 1.0) / (2.0 * b), true)]
            } else {
                if d < 0.0 {
                    return Vec::new();
                }
                let w = al * al * d.sqrt();
                vec![((big_a + w) / (b * h * h), true), ((big_a - w) / (b * h * h), false)]
            };
            for (c, plus) in cs {
                if c < 1.0 - 1e-12 {
                    continue;
                }
                let s = c.max(1.0).acosh() / (2.0 * al);
                let (p, m) = if plus { (PlusPositive, PlusNegative) } else { (MinusPositive, MinusNegative) };
                raw.push(LabeledRoot { s, branch: p });
                raw.push(LabeledRoot { s: -s, branch: m });
            }
        }
        Regime::SuperOne => {
            if d < 0.0 {
                return Vec::new();
            }
            let (al, b, big_a) = (fp.alpha(), fp.big_b(), fp.big_a());
            let w = al * al * d.sqrt();
            let period = PI / al;
            for (sigma, plus) in [((-big_a + w) / (b * h * h), true), ((-big_a - w) / (b * h * h), false)] {
                if sigma.abs() > 1.0 + 1e-12 {
                    continue;
                }
                let base = sigma.clamp(-1.0, 1.0).asin();
                let mut bases = if plus {
                    vec![(base, PlusPrincipal), (PI - base, PlusReflected)]
                } else {
                    vec![(base, MinusPrincipal), (PI - base, MinusReflected)]
                };
                // at |σ| = 1 both branches are the same double root
                if sigma.abs() >= 1.0 - 1e-12 {
                    bases.truncate(1);
                    bases[0].0 = sigma.signum() * PI / 2.0;
                }
                for (theta, branch) in bases {
                    let s0 = theta / (2.0 * al);
                    // one period of margin on both sides of the window
                    let k_lo = ((window.lo - s0) / period).floor() as i64 - 1;
                    let k_hi = ((window.hi - s0) / period).ceil() as i64 + 1;
                    for k in k_lo..=k_hi {
                        raw.push(LabeledRoot { s: s0 + k as f64 * period, branch });
                    }
                }
            }
        }
    }
    raw.retain(|r| window.contains(r.s));
    merge_sorted(raw)
}

/// Real solutions of `U² = U̇²` in `window`, ascending, merged within `1e-9`.
pub fn algebraic_roots(fp: &FamilyParams, window: Window) -> Vec<f64> {
    labeled_roots(fp, window).into_iter().map(|r| r.s).collect()
}

/// `tanh ρ λ̇ + sech²ρ ρ̇` at `s`.
pub fn tangency_residual(fp: &FamilyParams, s: f64) -> f64 {
    fp.jet(s).horizontal_rate()
}

/// Up iff `b = e^λ sech ρ (λ̇ − tanh ρ ρ̇) > 0`.
pub fn direction_of(fp: &FamilyParams, s: f64) -> Result<Direction> {
    let jet = fp.jet(s);
    let residual = jet.horizontal_rate().abs();
    if !(residual <= DIRECTION_RESIDUAL) {
        return Err(Error::NotATangency { s, residual });
    }
    Ok(if jet.vertical_rate() > 0.0 { Direction::Up } else { Direction::Down })
}

/// Algebraic roots that are genuine vertical tangencies, with height and
/// direction. Heights use the default quadrature tolerance.
pub fn admissible_tangencies(fp: &FamilyParams, window: Window) -> Result<Vec<TangencyPoint>> {
    admissible_tangencies_with(fp, window, &Quadrature::default())
}

pub fn admissible_tangencies_with(fp: &FamilyParams, window: Window, q: &Quadrature) -> Result<Vec<TangencyPoint>> {
    let mut out = Vec::new();
    let mut lambda = 0.0;
    let mut last_s = 0.0;
    for root in labeled_roots(fp, window) {
        let Some(s) = polish(fp, root.s) else {
            continue;
        };
        let root = LabeledRoot { s, ..root };
        if out.last().is_some_and(|t: &TangencyPoint| (t.s - s).abs() <= ROOT_MERGE_TOL) {
            continue;
        }
        let jet = fp.jet(s);
        if !(jet.u > 1e-12) || jet.horizontal_rate().abs() > TANGENCY_RESIDUAL {
            continue;
        }
        // λ is accumulated from the previous tangency to keep quadratures short.
        lambda += lambda_between(fp, last_s, root.s, q)?;
        last_s = root.s;
        let scale = lambda.exp();
        out.push(TangencyPoint {
            s: root.s,
            height: scale * jet.sech_rho,
            x: scale * jet.tanh_rho,
            direction: if jet.vertical_rate() > 0.0 { Direction::Up } else { Direction::Down },
            branch: root.branch,
        });
    }
    Ok(out)
}

/// Moves an algebraic root onto the nearby zero of the tangency residual.
///
/// Near the necks of `H > 1` profiles the closed-form roots lose a few
/// digits, enough to push the residual past [`TANGENCY_RESIDUAL`]. A sign
/// change of the residual inside a tiny bracket is itself a vertical
/// tangency, so bisecting it does not admit spurious roots.
fn polish(fp: &FamilyParams, s: f64) -> Option<f64> {
    let res = |t: f64| fp.jet(t).horizontal_rate();
    let r0 = res(s);
    if r0.abs() <= TANGENCY_RESIDUAL {
        return Some(s);
    }
    if r0.abs() > POLISH_RESIDUAL {
        return None;
    }
    let mut delta = 1e-10 * s.abs().max(1.0);
    while delta <= 1e-7 * s.abs().max(1.0) {
        for (lo, hi) in [(s - delta, s), (s, s + delta)] {
            let (rl, rh) = (res(lo), res(hi));
            if rl.is_finite() && rh.is_finite() && (rl < 0.0) != (rh < 0.0) {
                return crate::bracket::bisect(|t| Ok(res(t)), lo, hi, 0.0).ok();
            }
        }
        delta *= 4.0;
    }
    None
}

pub fn classify_family(fp: &FamilyParams) -> FamilyKind {
    let (h, a) = (fp.h(), fp.a());
    match fp.regime() {
        Regime::EqualOne => match a {
            a if a < 0.0 => FamilyKind::CatenoidCousin,
            0.0 => FamilyKind::UmbilicalH1,
            _ => FamilyKind::Other(OtherCase::H1Positive),
        },
        Regime::SubOne => {
            if a > 0.0 {
                FamilyKind::Other(OtherCase::SubOnePositive)
            } else if a == 0.0 {
                if h == 0.0 {
                    FamilyKind::TotallyGeodesic
                } else {
                    FamilyKind::UmbilicalSubOne
                }
            } else if fp.disc_factor() < 0.0 {
                FamilyKind::Other(OtherCase::SubOneBelowThreshold)
            } else {
                FamilyKind::EquidistantType
            }
        }
        Regime::SuperOne => {
            if a > 0.0 {
                FamilyKind::Nodoid
            } else if a == 0.0 {
                FamilyKind::UmbilicalSuperOne
            } else if fp.disc_factor() < 0.0 {
                FamilyKind::Other(OtherCase::SuperOneBelowThreshold)
            } else {
                FamilyKind::OnduloidType
            }
        }
    }
}

/// Window holding every tangency (finite regimes) or two full periods
/// starting at `s = 0` (periodic regime).
pub fn canonical_window(fp: &FamilyParams) -> Window {
    match fp.period() {
        Some(p) => Window { lo: 0.0, hi: 2.0 * p },
        None => Window::all(),
    }
}

/// Smallest `U²` over `[lo, hi]`.
fn min_u_squared(fp: &FamilyParams, lo: f64, hi: f64) -> f64 {
    let ends = fp.u_squared(lo).min(fp.u_squared(hi));
    match fp.regime() {
        Regime::EqualOne | Regime::SubOne => {
            if lo <= 0.0 && 0.0 <= hi {
                fp.u_squared(0.0)
            } else {
                ends
            }
        }
        Regime::SuperOne => {
            // minima where sin(αs + π/4) = 0
            let al = fp.alpha();
            let m = ((lo * al + PI / 4.0) / PI).ceil();
            let s_min = (m * PI - PI / 4.0) / al;
            if s_min <= hi {
                fp.u_squared(s_min).min(ends)
            } else {
                ends
            }
        }
    }
}

/// A profile arc between two consecutive upward tangencies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubeSpan {
    pub lower: TangencyPoint,
    pub upper: TangencyPoint,
    pub kind: SpanKind,
}

impl TubeSpan {
    /// `z_hi / z_lo`, invariant under homothety.
    pub fn ratio(&self) -> f64 {
        self.upper.height / self.lower.height
    }
}

/// Distinguishes the two half-period spans of a periodic profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpanKind {
    /// The only span of a non-periodic family.
    Single,
    /// Lower contact on the `+√Δ` branch.
    FromOuter,
    /// Lower contact on the `−√Δ` branch; a full period when `Δ = 0`.
    FromInner,
}

fn span_kind(fp: &FamilyParams, lower: &TangencyPoint, merged: bool) -> SpanKind {
    if fp.regime() != Regime::SuperOne {
        return SpanKind::Single;
    }
    if merged {
        return SpanKind::FromInner;
    }
    match lower.branch {
        RootBranch::PlusPrincipal | RootBranch::PlusReflected => SpanKind::FromOuter,
        _ => SpanKind::FromInner,
    }
}

/// Whether the family can bound a tube meeting two horospheres
/// perpendicularly, i.e. has two upward tangencies at distinct `s` joined by
/// an arc that stays off the axis.
pub fn slab_admissibility(fp: &FamilyParams) -> Admissibility {
    match classify_family(fp) {
        FamilyKind::TotallyGeodesic => return Admissibility::Rejected(RejectReason::TotallyGeodesic),
        FamilyKind::Nodoid => return Admissibility::Rejected(RejectReason::NotEmbedded),
        _ => {}
    }
    match tube_spans(fp, &Quadrature::default()) {
        Ok(_) => Admissibility::Admissible,
        Err(reason) => Admissibility::Rejected(reason),
    }
}

/// Consecutive upward tangency pairs of the family, one per span kind.
///
/// Rejections are reported as the reason; quadrature failures while computing
/// heights are folded into `NoTangency` only when no tangency could be
/// located at all.
pub fn tube_spans(fp: &FamilyParams, q: &Quadrature) -> std::result::Result<Vec<TubeSpan>, RejectReason> {
    let window = canonical_window(fp);
    let tangencies = admissible_tangencies_with(fp, window, q).map_err(|_| RejectReason::NoTangency)?;
    let per_window = match fp.period() {
        Some(_) => tangencies.len() / 2,
        None => tangencies.len(),
    };
    if tangencies.is_empty() {
        return Err(RejectReason::NoTangency);
    }
    if per_window < 2 && fp.period().is_none() {
        return Err(RejectReason::SingleTangency);
    }
    if tangencies.iter().any(|t| t.direction != tangencies[0].direction) {
        return Err(RejectReason::MixedDirections);
    }
    if tangencies[0].direction == Direction::Down || tangencies.len() < 2 {
        return Err(RejectReason::SingleTangency);
    }
    let merged = fp.regime() == Regime::SuperOne && fp.disc_factor() <= 1e-12;
    let mut spans: Vec<TubeSpan> = Vec::new();
    for pair in tangencies.windows(2) {
        let (lower, upper) = (pair[0], pair[1]);
        let kind = span_kind(fp, &lower, merged);
        if spans.iter().any(|sp| sp.kind == kind) {
            continue;
        }
        if min_u_squared(fp, lower.s, upper.s) <= 1e-24 {
            return Err(RejectReason::AxisContact);
        }
        spans.push(TubeSpan { lower, upper, kind });
    }
    Ok(spans)
}

/// Tangencies in `window` shifted by one period coincide with those in the
/// shifted window, so a single-period search is enough for `H > 1`.
pub fn shift_by_period(fp: &FamilyParams, window: Window) -> Option<Window> {
    fp.period().map(|p| window.shifted(p))
}
