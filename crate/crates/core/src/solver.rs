//! Candidate regions in a slab between two horospheres and the search for
//! the least free-boundary area at fixed volume.
//!
//! Three kinds of region are enumerated, all rotationally symmetric:
//!
//! - tubes bounded by a profile arc joining two upward vertical tangencies,
//!   rescaled by a homothety so the tangencies land on the two horospheres;
//! - domes, half Euclidean spheres centred on one horosphere;
//! - geodesic spheres floating inside the slab.
//!
//! Homotheties centred on the boundary plane are isometries preserving the
//! slab family, so a tube only needs its height ratio to match `c2/c1`.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bracket::{bisect, sign_changes};
use crate::error::{invalid, Error, Result};
use crate::geometry::SlabSpec;
use crate::measure::{area_natural, volume_contour, MeridianContour};
use crate::profile::{lambda_between, FamilyParams, Regime};
use crate::quad::Quadrature;
use crate::tangency::{classify_family, tube_spans, FamilyKind, SpanKind, TubeSpan};

/// Number of `a` values scanned for height-ratio matches.
pub const A_SCAN: usize = 512;
/// Default number of `H` values per regime.
pub const H_GRID: usize = 64;
/// Default number of dome radii and sphere radii.
pub const RADIUS_GRID: usize = 256;
/// Runners-up are candidates within this relative area of the winner.
pub const RUNNER_UP_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DomeSide {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CandidateKind {
    Tube {
        family: FamilyKind,
        params: FamilyParams,
        span: SpanKind,
        /// Tangency heights after the homothety.
        heights: (f64, f64),
    },
    Dome {
        side: DomeSide,
        /// Euclidean radius over the height of the horosphere it sits on.
        radius_ratio: f64,
        umbilical: FamilyKind,
    },
    FloatingSphere {
        rho: f64,
        center_height: f64,
    },
}

/// The surface types allowed as free boundaries of a minimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremClass {
    CatenoidCousinTube,
    EquidistantTube,
    OnduloidTube,
    UmbilicalH1,
    UmbilicalSubOne,
    UmbilicalSuperOne,
}

impl TheoremClass {
    pub fn label(&self) -> &'static str {
        match self {
            TheoremClass::CatenoidCousinTube => "catenoid-cousin-tube",
            TheoremClass::EquidistantTube => "equidistant-tube",
            TheoremClass::OnduloidTube => "onduloid-tube",
            TheoremClass::UmbilicalH1 => "umbilical-h1",
            TheoremClass::UmbilicalSubOne => "umbilical-sub-one",
            TheoremClass::UmbilicalSuperOne => "umbilical-super-one",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub kind: CandidateKind,
    /// Homothety factor applied to the normalized surface.
    pub homothety: f64,
    /// Natural-parameter range for tubes, angle range for domes and spheres.
    pub range: (f64, f64),
    pub mean_curvature: f64,
    pub free_area: f64,
    pub volume: f64,
}

impl Candidate {
    pub fn theorem_class(&self) -> Option<TheoremClass> {
        match self.kind {
            CandidateKind::Tube { family, .. } => match family {
                FamilyKind::CatenoidCousin => Some(TheoremClass::CatenoidCousinTube),
                FamilyKind::EquidistantType => Some(TheoremClass::EquidistantTube),
                FamilyKind::OnduloidType => Some(TheoremClass::OnduloidTube),
                _ => None,
            },
            CandidateKind::Dome { umbilical, .. } => match umbilical {
                FamilyKind::UmbilicalH1 => Some(TheoremClass::UmbilicalH1),
                FamilyKind::UmbilicalSubOne => Some(TheoremClass::UmbilicalSubOne),
                FamilyKind::UmbilicalSuperOne => Some(TheoremClass::UmbilicalSuperOne),
                _ => None,
            },
            CandidateKind::FloatingSphere { .. } => Some(TheoremClass::UmbilicalSuperOne),
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match self.kind {
            CandidateKind::Tube { .. } => "tube",
            CandidateKind::Dome { side: DomeSide::Lower, .. } => "lower-dome",
            CandidateKind::Dome { side: DomeSide::Upper, .. } => "upper-dome",
            CandidateKind::FloatingSphere { .. } => "floating-sphere",
        }
    }

    fn rank(&self) -> u8 {
        match self.kind {
            CandidateKind::Tube { .. } => 0,
            CandidateKind::Dome { .. } => 1,
            CandidateKind::FloatingSphere { .. } => 2,
        }
    }

    /// Area first; near-ties go to tubes, then domes, then spheres, then
    /// smaller mean curvature.
    fn preference(&self, other: &Candidate) -> Ordering {
        let scale = self.free_area.abs().max(other.free_area.abs()).max(1e-300);
        if (self.free_area - other.free_area).abs() > 1e-12 * scale {
            return self.free_area.total_cmp(&other.free_area);
        }
        self.rank().cmp(&other.rank()).then(self.mean_curvature.total_cmp(&other.mean_curvature))
    }
}

/// The best region found for one volume.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsoPoint {
    pub volume: f64,
    pub min_area: f64,
    pub winner: Candidate,
    pub runners_up: Vec<Candidate>,
}

/// Admissible `a` interval for tubes at curvature `h`, or `None` when the
/// regime has no tubes at this `h`.
pub fn tube_a_interval(regime: Regime, h: f64) -> Option<(f64, f64)> {
    match regime {
        Regime::EqualOne => Some((-0.25, 0.0)),
        Regime::SubOne | Regime::SuperOne if h > 0.0 => Some((-0.25 / h, 0.0)),
        _ => None,
    }
}

fn span_kinds(regime: Regime) -> &'static [SpanKind] {
    match regime {
        Regime::SuperOne => &[SpanKind::FromOuter, SpanKind::FromInner],
        _ => &[SpanKind::Single],
    }
}

/// `λ(s_lo)`, `λ(s_hi)` of a span measured from `s = 0`.
fn span_lambdas(fp: &FamilyParams, span: &TubeSpan, q: &Quadrature) -> Result<(f64, f64)> {
    let lo = lambda_between(fp, 0.0, span.lower.s, q)?;
    let hi = lo + lambda_between(fp, span.lower.s, span.upper.s, q)?;
    Ok((lo, hi))
}

fn find_span(fp: &FamilyParams, kind: SpanKind, q: &Quadrature) -> Option<TubeSpan> {
    tube_spans(fp, q).ok()?.into_iter().find(|sp| sp.kind == kind)
}

/// `ln(z_hi / z_lo) − ln(c2 / c1)`, or `None` if the span does not exist.
fn log_ratio_gap(regime: Regime, h: f64, a: f64, kind: SpanKind, target: f64, q: &Quadrature) -> Option<f64> {
    let fp = FamilyParams::new(regime, h, a).ok()?;
    let span = find_span(&fp, kind, q)?;
    Some(span.ratio().ln() - target)
}

/// Builds the tube candidate for `(regime, h, a)` scaled into `slab`.
pub fn tube_candidate(regime: Regime, h: f64, a: f64, kind: SpanKind, slab: &SlabSpec, tol: f64) -> Result<Candidate> {
    let q = Quadrature::new(tol)?;
    let fp = FamilyParams::new(regime, h, a)?;
    let span =
        find_span(&fp, kind, &q).ok_or_else(|| invalid(format!("no {kind:?} tube span for H = {h}, a = {a}")))?;
    let (lam_lo, _) = span_lambdas(&fp, &span, &q)?;
    let z_lo = lam_lo.exp() * fp.jet(span.lower.s).sech_rho;
    let r = slab.c1 / z_lo;
    let contour = MeridianContour::tube(fp, span.lower.s, span.upper.s, lam_lo + r.ln(), &q)?;
    let volume = volume_contour(&contour, tol)?;
    let free_area = area_natural(&fp, span.lower.s, span.upper.s, tol)?;
    Ok(Candidate {
        kind: CandidateKind::Tube {
            family: classify_family(&fp),
            params: fp,
            span: kind,
            heights: (slab.c1, slab.c1 * span.ratio()),
        },
        homothety: r,
        range: (span.lower.s, span.upper.s),
        mean_curvature: fp.h(),
        free_area,
        volume,
    })
}

/// Values of `a` at which the span of `kind` has height ratio `c2/c1`,
/// found by scanning `n` points of `[a_lo, a_hi]` and bisecting every sign
/// change. Ascending.
fn matching_a(
    regime: Regime,
    h: f64,
    kind: SpanKind,
    slab: &SlabSpec,
    (a_lo, a_hi): (f64, f64),
    n: usize,
    q: &Quadrature,
) -> Vec<f64> {
    let target = slab.ratio().ln();
    let gap = |a: f64| log_ratio_gap(regime, h, a, kind, target, q);
    let mut out = Vec::new();
    for (lo, hi) in sign_changes(gap, a_lo, a_hi, n) {
        let root = bisect(|a| gap(a).ok_or(Error::NoCandidate { volume: f64::NAN }), lo, hi, 0.0);
        // a sign change across a jump (a span appearing or vanishing) is not a match
        if let Ok(a) = root {
            if gap(a).is_some_and(|g| g.abs() <= 1e-9) {
                out.push(a);
            }
        }
    }
    out
}

/// Tubes of curvature `h` whose two upward tangencies can be placed on the
/// horospheres of `slab`. Every match of the height ratio is returned.
pub fn tube_for_slab(regime: Regime, h: f64, slab: &SlabSpec, tol: f64) -> Vec<Candidate> {
    let Some(interval) = tube_a_interval(regime, h) else {
        return Vec::new();
    };
    if FamilyParams::new(regime, h, -1e-3 * interval.0.abs()).is_err() {
        return Vec::new();
    }
    let Ok(q) = Quadrature::new(tol) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &kind in span_kinds(regime) {
        for a in matching_a(regime, h, kind, slab, interval, A_SCAN, &q) {
            if let Ok(c) = tube_candidate(regime, h, a, kind, slab, tol) {
                out.push(c);
            }
        }
    }
    out
}

fn dome(side: DomeSide, slab: &SlabSpec, radius: f64, tol: f64) -> Result<Candidate> {
    let (c, contour, range) = match side {
        DomeSide::Lower => (slab.c1, MeridianContour::lower_dome(slab.c1, radius), (0.0, std::f64::consts::FRAC_PI_2)),
        DomeSide::Upper => (slab.c2, MeridianContour::upper_dome(slab.c2, radius), (-std::f64::consts::FRAC_PI_2, 0.0)),
    };
    let ratio = radius / c;
    let umbilical = if (ratio - 1.0).abs() <= 1e-12 {
        FamilyKind::UmbilicalH1
    } else if ratio < 1.0 {
        FamilyKind::UmbilicalSuperOne
    } else {
        FamilyKind::UmbilicalSubOne
    };
    Ok(Candidate {
        kind: CandidateKind::Dome { side, radius_ratio: ratio, umbilical },
        homothety: 1.0,
        range,
        mean_curvature: c / radius,
        free_area: contour.free_area(tol)?,
        volume: volume_contour(&contour, tol)?,
    })
}

fn dome_radius_max(slab: &SlabSpec) -> f64 {
    slab.c2 - slab.c1
}

/// Half spheres centred on either horosphere with radii `(c2 − c1)·i/n`,
/// `i = 1..=n`, so that they stay inside the slab.
pub fn dome_candidates(slab: &SlabSpec, n_grid: usize) -> Vec<Candidate> {
    dome_candidates_with(slab, n_grid, crate::quad::DEFAULT_TOL)
}

pub fn dome_candidates_with(slab: &SlabSpec, n_grid: usize, tol: f64) -> Vec<Candidate> {
    let n = n_grid.max(1);
    let r_max = dome_radius_max(slab);
    [DomeSide::Lower, DomeSide::Upper]
        .iter()
        .flat_map(|&side| (1..=n).filter_map(move |i| dome(side, slab, r_max * i as f64 / n as f64, tol).ok()))
        .collect()
}

fn sphere(slab: &SlabSpec, rho: f64, tol: f64) -> Result<Candidate> {
    // hyperbolic centre on the axis, equidistant from both horospheres
    let zc = (slab.c1 * slab.c2).sqrt();
    let (h, r) = (zc * rho.cosh(), zc * rho.sinh());
    let contour = MeridianContour::sphere(h, r);
    Ok(Candidate {
        kind: CandidateKind::FloatingSphere { rho, center_height: zc },
        homothety: 1.0,
        range: (-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2),
        mean_curvature: 1.0 / rho.tanh(),
        free_area: contour.free_area(tol)?,
        volume: volume_contour(&contour, tol)?,
    })
}

fn sphere_rho_max(slab: &SlabSpec) -> f64 {
    0.5 * slab.width()
}

/// Geodesic spheres of radius `ρ_max·i/(n+1)`, `i = 1..=n`, where `2ρ_max`
/// is the slab width; the touching sphere itself is excluded.
pub fn floating_spheres(slab: &SlabSpec, n_grid: usize) -> Vec<Candidate> {
    floating_spheres_with(slab, n_grid, crate::quad::DEFAULT_TOL)
}

pub fn floating_spheres_with(slab: &SlabSpec, n_grid: usize, tol: f64) -> Vec<Candidate> {
    let n = n_grid.max(1);
    let rho_max = sphere_rho_max(slab);
    (1..=n).filter_map(|i| sphere(slab, rho_max * i as f64 / (n + 1) as f64, tol).ok()).collect()
}

/// Settings for [`sweep_profiles_with`].
#[derive(Debug, Clone, PartialEq)]
pub struct SweepOptions {
    /// Volume match tolerance, relative to `max(1, V)`.
    pub tol: f64,
    pub dome_grid: usize,
    pub sphere_grid: usize,
    /// Maximum worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions { tol: 1e-8, dome_grid: RADIUS_GRID, sphere_grid: RADIUS_GRID, threads: None }
    }
}

impl SweepOptions {
    fn quad_tol(&self) -> f64 {
        (1e-2 * self.tol).clamp(1e-13, 1e-8)
    }
}

/// Default `H` values: logit-spaced in `(0, 1)`, `1` itself, and
/// `1 + e^u` with `u` uniform in `[ln 0.02, ln 20]`.
pub fn default_h_grid() -> Vec<f64> {
    let n = H_GRID;
    let mut out = Vec::with_capacity(2 * n + 1);
    let (lo, hi) = ((0.02f64 / 0.98).ln(), (0.98f64 / 0.02).ln());
    for i in 0..n {
        let t = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        out.push(1.0 / (1.0 + (-t).exp()));
    }
    out.push(1.0);
    let (lo, hi) = (0.02f64.ln(), 20f64.ln());
    for i in 0..n {
        let u = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        out.push(1.0 + u.exp());
    }
    out
}

fn regime_of(h: f64) -> Regime {
    if (h - 1.0).abs() <= crate::profile::REGIME_GUARD {
        Regime::EqualOne
    } else if h < 1.0 {
        Regime::SubOne
    } else {
        Regime::SuperOne
    }
}

/// One continuous tube family: a fixed regime and span kind, and the `j`-th
/// ratio match counted in increasing `a`, sampled along the `H` grid.
#[derive(Debug, Clone)]
struct TubeBranch {
    regime: Regime,
    kind: SpanKind,
    samples: Vec<(f64, Option<Candidate>)>,
}

fn tube_a(c: &Candidate) -> f64 {
    match c.kind {
        CandidateKind::Tube { params, .. } => params.a(),
        _ => f64::NAN,
    }
}

fn tube_branches(slab: &SlabSpec, h_grid: &[f64], quad_tol: f64) -> Vec<TubeBranch> {
    let mut hs: Vec<f64> = h_grid.iter().copied().filter(|h| h.is_finite() && *h >= 0.0).collect();
    hs.sort_by(f64::total_cmp);
    hs.dedup();
    let scans: Vec<(f64, Vec<Candidate>)> =
        hs.par_iter().map(|&h| (h, tube_for_slab(regime_of(h), h, slab, quad_tol))).collect();
    let mut branches = Vec::new();
    for regime in [Regime::SubOne, Regime::EqualOne, Regime::SuperOne] {
        let line: Vec<&(f64, Vec<Candidate>)> = scans.iter().filter(|(h, _)| regime_of(*h) == regime).collect();
        for &kind in span_kinds(regime) {
            let per_h: Vec<(f64, Vec<Candidate>)> = line
                .iter()
                .map(|(h, cs)| {
                    let mut v: Vec<Candidate> = cs
                        .iter()
                        .filter(|c| matches!(c.kind, CandidateKind::Tube { span, .. } if span == kind))
                        .copied()
                        .collect();
                    v.sort_by(|p, q| tube_a(p).total_cmp(&tube_a(q)));
                    (*h, v)
                })
                .collect();
            let depth = per_h.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
            for j in 0..depth {
                branches.push(TubeBranch {
                    regime,
                    kind,
                    samples: per_h.iter().map(|(h, v)| (*h, v.get(j).copied())).collect(),
                });
            }
        }
    }
    branches
}

/// Tube of the branch at curvature `h`, searching for the ratio match near
/// the `a` values of the neighbouring samples.
fn tube_near(branch: &TubeBranch, h: f64, a_guess: (f64, f64), slab: &SlabSpec, tol: f64) -> Result<Candidate> {
    let (a_min, a_max) = tube_a_interval(branch.regime, h).ok_or_else(|| invalid("no tubes at this H"))?;
    let q = Quadrature::new(tol)?;
    let (g0, g1) = (a_guess.0.min(a_guess.1), a_guess.0.max(a_guess.1));
    let guess = 0.5 * (g0 + g1);
    let mut pad = (g1 - g0).max(1e-6 * (a_max - a_min));
    for _ in 0..4 {
        let lo = (g0 - pad).max(a_min);
        let hi = (g1 + pad).min(a_max);
        let roots = matching_a(branch.regime, h, branch.kind, slab, (lo, hi), 24, &q);
        if let Some(&a) = roots.iter().min_by(|p, r| (*p - guess).abs().total_cmp(&(*r - guess).abs())) {
            return tube_candidate(branch.regime, h, a, branch.kind, slab, tol);
        }
        pad *= 4.0;
    }
    let full: Vec<Candidate> = tube_for_slab(branch.regime, h, slab, tol)
        .into_iter()
        .filter(|c| matches!(c.kind, CandidateKind::Tube { span, .. } if span == branch.kind))
        .collect();
    full.into_iter()
        .min_by(|p, r| (tube_a(p) - guess).abs().total_cmp(&(tube_a(r) - guess).abs()))
        .ok_or(Error::NoCandidate { volume: f64::NAN })
}

fn volume_matches(c: &Candidate, target: f64, tol: f64) -> bool {
    (c.volume - target).abs() <= tol * target.max(1.0)
}

/// Bisection on a scalar family parameter until the volume matches.
fn invert_volume<F>(
    mut make: F,
    mut lo: (f64, Candidate),
    mut hi: (f64, Candidate),
    target: f64,
    tol: f64,
) -> Option<Candidate>
where
    F: FnMut(f64) -> Result<Candidate>,
{
    for c in [lo.1, hi.1] {
        if volume_matches(&c, target, tol) {
            return Some(c);
        }
    }
    let rising = hi.1.volume > lo.1.volume;
    for _ in 0..200 {
        let mid = 0.5 * (lo.0 + hi.0);
        if mid <= lo.0.min(hi.0) || mid >= lo.0.max(hi.0) {
            break;
        }
        let c = make(mid).ok()?;
        if volume_matches(&c, target, tol) {
            return Some(c);
        }
        if (c.volume < target) == rising {
            lo = (mid, c);
        } else {
            hi = (mid, c);
        }
    }
    [lo.1, hi.1].into_iter().find(|c| volume_matches(c, target, tol))
}

/// Every grid interval of a sampled family where the volume crosses
/// `target`, refined by bisection.
fn crossings<F>(samples: &[(f64, Candidate)], target: f64, tol: f64, make: F) -> Vec<Candidate>
where
    F: Fn(f64, &Candidate, &Candidate) -> Result<Candidate>,
{
    let mut out = Vec::new();
    for w in samples.windows(2) {
        let ((p0, c0), (p1, c1)) = (w[0], w[1]);
        let (d0, d1) = (c0.volume - target, c1.volume - target);
        if d0 == 0.0 || (d0 < 0.0) != (d1 < 0.0) {
            if let Some(c) = invert_volume(|p| make(p, &c0, &c1), (p0, c0), (p1, c1), target, tol) {
                out.push(c);
            }
        }
    }
    if let Some(&(_, last)) = samples.last() {
        if volume_matches(&last, target, tol) && !out.iter().any(|c| c == &last) {
            out.push(last);
        }
    }
    out
}

fn candidates_for_volume(
    slab: &SlabSpec,
    branches: &[TubeBranch],
    domes: &[(DomeSide, Vec<(f64, Candidate)>)],
    spheres: &[(f64, Candidate)],
    target: f64,
    opts: &SweepOptions,
) -> Vec<Candidate> {
    let qt = opts.quad_tol();
    let mut out = Vec::new();
    for branch in branches {
        // contiguous runs where the branch exists
        let mut run: Vec<(f64, Candidate)> = Vec::new();
        let flush = |run: &mut Vec<(f64, Candidate)>, out: &mut Vec<Candidate>| {
            if run.len() == 1 {
                if volume_matches(&run[0].1, target, opts.tol) {
                    out.push(run[0].1);
                }
            } else if run.len() > 1 {
                out.extend(crossings(run, target, opts.tol, |h, c0, c1| {
                    tube_near(branch, h, (tube_a(c0), tube_a(c1)), slab, qt)
                }));
            }
            run.clear();
        };
        for (h, c) in &branch.samples {
            match c {
                Some(c) => run.push((*h, *c)),
                None => flush(&mut run, &mut out),
            }
        }
        flush(&mut run, &mut out);
    }
    for (side, samples) in domes {
        out.extend(crossings(samples, target, opts.tol, |r, _, _| dome(*side, slab, r, qt)));
    }
    // spheres: prepend the degenerate ρ = 0 end so tiny volumes bracket
    if let Some(&(_, first)) = spheres.first() {
        let zero = Candidate { free_area: 0.0, volume: 0.0, mean_curvature: f64::INFINITY, ..first };
        let mut s = vec![(0.0, zero)];
        s.extend_from_slice(spheres);
        out.extend(
            crossings(&s, target, opts.tol, |rho, _, _| sphere(slab, rho, qt)).into_iter().filter(|c| c.volume > 0.0),
        );
    }
    out
}

/// Least-area region for every volume in `v_grid`.
pub fn sweep_profiles(slab: &SlabSpec, h_grid: &[f64], v_grid: &[f64], tol: f64) -> Result<Vec<IsoPoint>> {
    sweep_profiles_with(slab, h_grid, v_grid, &SweepOptions { tol, ..SweepOptions::default() })
}

pub fn sweep_profiles_with(
    slab: &SlabSpec,
    h_grid: &[f64],
    v_grid: &[f64],
    opts: &SweepOptions,
) -> Result<Vec<IsoPoint>> {
    sweep_candidates(slab, h_grid, v_grid, opts)?
        .into_iter()
        .map(|(v, cands)| {
            let (&winner, rest) = cands.split_first().ok_or(Error::NoCandidate { volume: v })?;
            let runners_up =
                rest.iter().filter(|c| c.free_area <= winner.free_area * (1.0 + RUNNER_UP_MARGIN)).copied().collect();
            Ok(IsoPoint { volume: v, min_area: winner.free_area, winner, runners_up })
        })
        .collect()
}

/// Every candidate matching each volume of `v_grid`, best first. Volumes
/// that no family reaches get an empty list.
pub fn sweep_candidates(
    slab: &SlabSpec,
    h_grid: &[f64],
    v_grid: &[f64],
    opts: &SweepOptions,
) -> Result<Vec<(f64, Vec<Candidate>)>> {
    if h_grid.is_empty() || v_grid.is_empty() {
        return Err(invalid("sweep needs nonempty H and volume grids"));
    }
    if let Some(v) = v_grid.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        return Err(invalid(format!("volumes must be positive, got {v}")));
    }
    if !(opts.tol > 0.0) {
        return Err(invalid(format!("tolerance must be positive, got {}", opts.tol)));
    }
    match opts.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| invalid(format!("thread pool: {e}")))?;
            Ok(pool.install(|| sweep_inner(slab, h_grid, v_grid, opts)))
        }
        None => Ok(sweep_inner(slab, h_grid, v_grid, opts)),
    }
}

fn sweep_inner(slab: &SlabSpec, h_grid: &[f64], v_grid: &[f64], opts: &SweepOptions) -> Vec<(f64, Vec<Candidate>)> {
    let qt = opts.quad_tol();
    let branches = tube_branches(slab, h_grid, qt);
    let r_max = dome_radius_max(slab);
    let domes: Vec<(DomeSide, Vec<(f64, Candidate)>)> = [DomeSide::Lower, DomeSide::Upper]
        .into_iter()
        .map(|side| {
            let n = opts.dome_grid.max(1);
            let samples = (1..=n)
                .into_par_iter()
                .filter_map(|i| {
                    let r = r_max * i as f64 / n as f64;
                    dome(side, slab, r, qt).ok().map(|c| (r, c))
                })
                .collect();
            (side, samples)
        })
        .collect();
    let rho_max = sphere_rho_max(slab);
    let n = opts.sphere_grid.max(1);
    let spheres: Vec<(f64, Candidate)> = (1..=n)
        .into_par_iter()
        .filter_map(|i| {
            let rho = rho_max * i as f64 / (n + 1) as f64;
            sphere(slab, rho, qt).ok().map(|c| (rho, c))
        })
        .collect();
    v_grid
        .par_iter()
        .map(|&v| {
            let mut cands = candidates_for_volume(slab, &branches, &domes, &spheres, v, opts);
            cands.sort_by(Candidate::preference);
            (v, cands)
        })
        .collect()
}
