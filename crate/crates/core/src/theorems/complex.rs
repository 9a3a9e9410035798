//! Every complex root other than the dominant positive root lies strictly
//! inside the disk of radius equal to that root, checked in double
//! precision against a Sturm-certified dominant root.

use rayon::prelude::*;
use serde_json::json;

use super::{Member, Status, VerificationReport, VerifyOptions};
use crate::complexroots::{
    all_roots_seeded, check_modulus_bound_with, vieta_residuals, ComplexRootSet, DEFAULT_MAX_ITER,
    DEFAULT_RESIDUAL_TOL,
};
use crate::error::{Error, Result};
use crate::families::FamilySpec;

/// Largest tolerated relative Vieta residual.
pub const VIETA_TOL: f64 = 1e-6;
/// Largest imaginary part of the root outside the unit disk for `F_k`.
pub const REAL_ROOT_IM_TOL: f64 = 1e-8;

pub(crate) struct Instance {
    pub spec: FamilySpec,
    pub outcome: std::result::Result<(ComplexRootSet, f64, f64), String>,
    pub status: Status,
}

/// Runs the modulus and Vieta checks for one member.
pub(crate) fn check_instance(spec: FamilySpec, opts: &VerifyOptions) -> Result<Instance> {
    let p = spec.build()?;
    let m = Member::analyze(spec.k, &p, &opts.tol)?;
    let Some(dominant) = m.only_positive() else {
        return Ok(Instance { spec, outcome: Err("no unique positive root".into()), status: Status::Fail });
    };
    let set = all_roots_seeded(&p, DEFAULT_MAX_ITER, DEFAULT_RESIDUAL_TOL, opts.seed)?;
    match check_modulus_bound_with(&set, dominant) {
        Ok(b) => {
            let (s, q) = vieta_residuals(&p, &set)?;
            let ok = b.holds && s < VIETA_TOL && q < VIETA_TOL;
            let ratio = if b.degree > 1 { b.max_other_modulus / b.dominant } else { 0.0 };
            Ok(Instance { spec, outcome: Ok((set, ratio, s.max(q))), status: Status::from_bool(ok) })
        }
        Err(e @ (Error::NotConverged(_) | Error::AmbiguousMatch(_))) => {
            Ok(Instance { spec, outcome: Err(e.to_string()), status: Status::Partial })
        }
        Err(e) => Err(e),
    }
}

pub(crate) fn record_instances(report: &mut VerificationReport, instances: &[Instance]) {
    let mut worst_ratio = 0.0f64;
    let mut worst_vieta = 0.0f64;
    for inst in instances {
        match &inst.outcome {
            Ok((_, ratio, vieta)) => {
                worst_ratio = worst_ratio.max(*ratio);
                worst_vieta = worst_vieta.max(*vieta);
                if inst.status != Status::Pass {
                    report.check(false, inst.spec.to_string(), format!("max |z|/dominant = {ratio:.6}, vieta = {vieta:.2e}"));
                }
            }
            Err(msg) => {
                report.status = report.status.and(inst.status);
                report.witness(format!("{:?} {}", inst.status, inst.spec), msg);
            }
        }
    }
    report.witness("max non-dominant |z| / dominant", format!("{worst_ratio:.6}"));
    report.witness("max Vieta residual", format!("{worst_vieta:.2e}"));
}

fn run(specs: Vec<FamilySpec>, opts: &VerifyOptions) -> Result<Vec<Instance>> {
    specs.into_par_iter().map(|s| check_instance(s, opts)).collect()
}

/// Modulus bound for `F_k`, `D` (`l <= 3`), `I_k` and `H` (`l <= 2`) up to
/// `degree_cap`, plus the unit-disk property of `F_k`.
pub fn verify_complex_bounds(degree_cap: u32, opts: &VerifyOptions) -> Result<VerificationReport> {
    super::require(degree_cap >= 2, "degree cap must be >= 2")?;
    let params = json!({ "degree_cap": degree_cap, "seed": opts.seed });
    let mut report = VerificationReport::new("complex", "non-dominant roots lie inside the dominant-root disk", params.clone());

    let mut f = VerificationReport::new("complex.F", "F_k: all other roots have modulus below the positive root", params.clone());
    let f_inst = run((1..=degree_cap).map(FamilySpec::f).collect(), opts)?;
    record_instances(&mut f, &f_inst);
    let mut max_inner = 0.0f64;
    for inst in f_inst.iter().filter(|i| i.spec.k >= 2) {
        if let Ok((set, _, _)) = &inst.outcome {
            let outside: Vec<_> = set.roots.iter().filter(|z| z.norm() > 1.0).collect();
            let ok = outside.len() == 1 && outside[0].im.abs() < REAL_ROOT_IM_TOL;
            f.check(ok, format!("unit disk {}", inst.spec), format!("{} roots outside", outside.len()));
            let inner = set.roots.iter().filter(|z| z.norm() <= 1.0).map(|z| z.norm()).fold(0.0, f64::max);
            max_inner = max_inner.max(inner);
        }
    }
    f.witness("max modulus inside the unit disk", format!("{max_inner:.6}"));
    report.push(f);

    let mut d = VerificationReport::new("complex.D", "D_j: all other roots have modulus below u_j", params.clone());
    let specs = (1..=3).flat_map(|l| (1..=degree_cap).map(move |j| FamilySpec::d(j, l))).collect();
    record_instances(&mut d, &run(specs, opts)?);
    report.push(d);

    let mut i = VerificationReport::new("complex.I", "I_k: all other roots have modulus below phi_k", params.clone());
    record_instances(&mut i, &run((1..=degree_cap).map(FamilySpec::i).collect(), opts)?);
    report.push(i);

    let mut h = VerificationReport::new("complex.H", "H_k: all other roots have modulus below alpha_k", params);
    let specs = (0..=2)
        .flat_map(|l: i32| ((l as u32 + 2)..degree_cap).map(move |k| FamilySpec::h(k, l)))
        .collect();
    record_instances(&mut h, &run(specs, opts)?);
    report.push(h);
    Ok(report)
}

/// Modulus check for the `H_k` of one sweep, capped at `degree_cap`.
pub(crate) fn check_h_sweep(l: i32, k_max: u32, degree_cap: u32, opts: &VerifyOptions) -> Result<Vec<Instance>> {
    let specs = ((l as u32 + 2)..=k_max.min(degree_cap - 1)).map(|k| FamilySpec::h(k, l)).collect();
    run(specs, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cap_passes() {
        let r = verify_complex_bounds(12, &VerifyOptions::default()).unwrap();
        assert!(r.passed(), "{r:#?}");
    }

    #[test]
    fn linear_member() {
        let inst = check_instance(FamilySpec::d(1, 2), &VerifyOptions::default()).unwrap();
        assert_eq!(inst.status, Status::Pass);
    }
}
