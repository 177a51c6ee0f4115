use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::region::{maculate_region, MaculateRegion};
use crate::error::{Error, Result};
use crate::fan::{Fan, RaySet};
use crate::homology::{Field, HomologyProfile};
use crate::polyhedra::LinearProgram;

/// Which test settled a subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    /// A nonzero character is nonnegative off `R` and nonpositive on `R`.
    #[serde(rename = "criterion-1")]
    Criterion1,
    /// `R` or its complement is the ray set of a cone.
    #[serde(rename = "criterion-2")]
    Criterion2,
    /// `R` is empty, everything, a primitive collection or the complement of one.
    #[serde(rename = "criterion-3")]
    Criterion3,
    Homology,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetStatus {
    pub tempting: bool,
    pub decided_by: Decision,
    /// Reduced homology of `V^>(R)` when it was computed for this subset.
    pub homology: Option<HomologyProfile>,
}

/// Classification of every subset of rays, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemptingReport {
    n_rays: usize,
    field: Field,
    statuses: Vec<SubsetStatus>,
}

impl TemptingReport {
    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn status(&self, r: RaySet) -> &SubsetStatus {
        &self.statuses[r as usize]
    }

    pub fn is_tempting(&self, r: RaySet) -> bool {
        self.statuses[r as usize].tempting
    }

    /// Tempting subsets in ascending bitmask order.
    pub fn tempting(&self) -> Vec<RaySet> {
        (0..self.statuses.len() as RaySet)
            .filter(|&r| self.is_tempting(r))
            .collect()
    }

    pub fn count_decided_by(&self, d: Decision) -> usize {
        self.statuses.iter().filter(|s| s.decided_by == d).count()
    }
}

/// The report together with the maculate regions of the tempting subsets.
#[derive(Debug)]
pub struct TemptingData {
    pub report: TemptingReport,
    pub regions: Vec<MaculateRegion>,
}

const MAX_RAYS: usize = 24;

fn check_fan(fan: &Fan) -> Result<()> {
    if !fan.is_complete() {
        return Err(Error::NotComplete);
    }
    if fan.n_rays() > MAX_RAYS {
        return Err(Error::InvalidParameters(format!(
            "subset enumeration needs at most {MAX_RAYS} rays"
        )));
    }
    Ok(())
}

pub fn tempting_subsets(fan: &Fan) -> Result<Arc<TemptingData>> {
    tempting_subsets_over(fan, Field::Rational)
}

/// Cached per field.
pub fn tempting_subsets_over(fan: &Fan, field: Field) -> Result<Arc<TemptingData>> {
    if let Some(d) = fan.tempting_cache().lock().expect("cache lock").get(&field) {
        return Ok(d.clone());
    }
    check_fan(fan)?;
    let report = classify(fan, field);
    let regions = report
        .tempting()
        .into_iter()
        .map(|r| maculate_region(fan, r))
        .collect::<Result<Vec<_>>>()?;
    let data = Arc::new(TemptingData { report, regions });
    fan.tempting_cache()
        .lock()
        .expect("cache lock")
        .insert(field, data.clone());
    Ok(data)
}

fn classify(fan: &Fan, field: Field) -> TemptingReport {
    let n = fan.n_rays();
    let all = fan.all_rays_mask();
    // One representative per complementary pair: the one without the top ray.
    let reps: Vec<RaySet> = (0..1u64 << (n - 1)).collect();
    let decided: Vec<SubsetStatus> = reps
        .par_iter()
        .map(|&r| decide(fan, r, all ^ r, field))
        .collect();
    let mut statuses: Vec<Option<SubsetStatus>> = vec![None; 1 << n];
    for (&r, status) in reps.iter().zip(decided) {
        let twin = SubsetStatus {
            homology: None,
            ..status.clone()
        };
        statuses[(all ^ r) as usize] = Some(twin);
        statuses[r as usize] = Some(status);
    }
    TemptingReport {
        n_rays: n,
        field,
        statuses: statuses
            .into_iter()
            .map(|s| s.expect("every subset decided"))
            .collect(),
    }
}

fn decide(fan: &Fan, r: RaySet, rc: RaySet, field: Field) -> SubsetStatus {
    let status = |tempting, decided_by| SubsetStatus {
        tempting,
        decided_by,
        homology: None,
    };
    if fan.is_simplicial() && satisfies_criterion3(fan, r, rc) {
        return status(true, Decision::Criterion3);
    }
    if fan.is_face(r) || fan.is_face(rc) {
        return status(false, Decision::Criterion2);
    }
    if character_in_orthant(fan, r) {
        return status(false, Decision::Criterion1);
    }
    let h = fan.induced_homology(r, field);
    SubsetStatus {
        tempting: !h.is_acyclic(),
        decided_by: Decision::Homology,
        homology: Some(h),
    }
}

fn satisfies_criterion3(fan: &Fan, r: RaySet, rc: RaySet) -> bool {
    r == 0
        || rc == 0
        || fan
            .primitive_collections()
            .iter()
            .any(|&p| p == r || p == rc)
}

/// Is there `m != 0` with `⟨ρ, m⟩ <= 0` on `R` and `>= 0` off `R`?
fn character_in_orthant(fan: &Fan, r: RaySet) -> bool {
    let d = fan.dim();
    let zero = BigInt::from(0);
    let mut lp = LinearProgram::new(d);
    let mut total = vec![zero.clone(); d];
    for (i, ray) in fan.rays().iter().enumerate() {
        let signed: Vec<BigInt> = if r >> i & 1 == 1 {
            ray.iter().map(|x| -x).collect()
        } else {
            ray.clone()
        };
        for (t, x) in total.iter_mut().zip(&signed) {
            *t += x;
        }
        lp.add_ge(signed, zero.clone());
    }
    // The rays span N, so some signed value is positive for m != 0.
    lp.add_ge(total, BigInt::from(1));
    lp.is_feasible()
}

/// Direct homology for every subset with no shortcuts and no duality.
pub fn tempting_subsets_direct(fan: &Fan, field: Field) -> Result<TemptingReport> {
    check_fan(fan)?;
    let n = fan.n_rays();
    let statuses = (0..1u64 << n)
        .into_par_iter()
        .map(|r| {
            let h = fan.induced_homology(r, field);
            SubsetStatus {
                tempting: !h.is_acyclic(),
                decided_by: Decision::Homology,
                homology: Some(h),
            }
        })
        .collect();
    Ok(TemptingReport {
        n_rays: n,
        field,
        statuses,
    })
}
