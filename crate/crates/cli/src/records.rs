//! Serializable output documents and CSV rendering.

use horoslab::solver::{Candidate, CandidateKind, DomeSide};
use horoslab::tangency::{Admissibility, TangencyPoint};
use horoslab::{Direction, FamilyParams, ProfileSample};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "1.0";

/// Shortest representation that parses back to the same `f64`.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRecord {
    pub regime: &'static str,
    #[serde(rename = "H")]
    pub h: f64,
    pub a: f64,
}

impl From<&FamilyParams> for FamilyRecord {
    fn from(fp: &FamilyParams) -> Self {
        FamilyRecord { regime: fp.regime().label(), h: fp.h(), a: fp.a() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TangencyRecord {
    pub s: f64,
    pub height: f64,
    pub x: f64,
    pub direction: &'static str,
}

pub fn direction_label(d: Direction) -> &'static str {
    match d {
        Direction::Up => "up",
        Direction::Down => "down",
    }
}

impl From<&TangencyPoint> for TangencyRecord {
    fn from(t: &TangencyPoint) -> Self {
        TangencyRecord { s: t.s, height: t.height, x: t.x, direction: direction_label(t.direction) }
    }
}

pub fn admissibility_label(a: &Admissibility) -> String {
    match a {
        Admissibility::Admissible => "admissible".into(),
        Admissibility::Rejected(r) => format!("rejected:{}", r.code()),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CandidateRecord {
    pub kind: &'static str,
    pub class: Option<&'static str>,
    pub family: &'static str,
    #[serde(rename = "H")]
    pub h: f64,
    pub a: Option<f64>,
    pub r: f64,
    pub area: f64,
    pub volume: f64,
    pub range: [f64; 2],
    pub heights: Option<[f64; 2]>,
    pub radius_ratio: Option<f64>,
    pub rho: Option<f64>,
}

impl From<&Candidate> for CandidateRecord {
    fn from(c: &Candidate) -> Self {
        let (family, a, heights, radius_ratio, rho) = match c.kind {
            CandidateKind::Tube { family, params, heights, .. } => {
                (family.label(), Some(params.a()), Some([heights.0, heights.1]), None, None)
            }
            CandidateKind::Dome { umbilical, radius_ratio, .. } => {
                (umbilical.label(), None, None, Some(radius_ratio), None)
            }
            CandidateKind::FloatingSphere { rho, .. } => ("geodesic-sphere", None, None, None, Some(rho)),
        };
        CandidateRecord {
            kind: c.kind_label(),
            class: c.theorem_class().map(|t| t.label()),
            family,
            h: c.mean_curvature,
            a,
            r: c.homothety,
            area: c.free_area,
            volume: c.volume,
            range: [c.range.0, c.range.1],
            heights,
            radius_ratio,
            rho,
        }
    }
}

pub fn dome_side(c: &Candidate) -> Option<DomeSide> {
    match c.kind {
        CandidateKind::Dome { side, .. } => Some(side),
        _ => None,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub s: f64,
    pub rho: f64,
    pub lambda: f64,
    pub x: f64,
    pub z: f64,
    pub dx_ds: f64,
    pub dz_ds: f64,
}

impl From<&ProfileSample> for SampleRecord {
    fn from(p: &ProfileSample) -> Self {
        SampleRecord { s: p.s, rho: p.rho, lambda: p.lambda, x: p.x, z: p.z, dx_ds: p.dx_ds, dz_ds: p.dz_ds }
    }
}

pub fn profile_csv(samples: &[ProfileSample]) -> String {
    let mut out = String::from("s,rho,lambda,x,z,dx_ds,dz_ds\n");
    for p in samples {
        let row = [p.s, p.rho, p.lambda, p.x, p.z, p.dx_ds, p.dz_ds].map(num).join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

pub fn tangency_csv(ts: &[TangencyPoint]) -> String {
    let mut out = String::from("s,height,x,direction\n");
    for t in ts {
        out.push_str(&format!("{},{},{},{}\n", num(t.s), num(t.height), num(t.x), direction_label(t.direction)));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct SlabRecord {
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoPointRecord {
    pub volume: f64,
    pub min_area: f64,
    pub winner: CandidateRecord,
    pub candidates: Vec<CandidateRecord>,
}

pub fn sweep_csv(points: &[IsoPointRecord]) -> String {
    let mut out = String::from("volume,min_area,winner_kind,winner_class,winner_H,winner_volume\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            num(p.volume),
            num(p.min_area),
            p.winner.kind,
            p.winner.class.unwrap_or(""),
            num(p.winner.h),
            num(p.winner.volume)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip() {
        for x in [0.1, 1.0 / 3.0, -2.5e-12, 1e300, 0.0, 123456789.125] {
            assert_eq!(num(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(num(0.5), "0.5");
    }
}
