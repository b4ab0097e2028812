use dball_core::approximant::{dist_sq_opt, rate_fit, Approximant, BasisSpec, DistanceRow, DistanceTable, RateFamily};
use dball_core::boundary::{annihilation_check, cauchy_norm_sq, diag_circle_quadrature, Measure};
use dball_core::capacity::{
    energy_discrete, energy_series, minimize_energy, sample_zero_set, EnergyOptions, EnergyReport, MinimizeOptions,
    MinimizedEnergy, ZeroSetFamily,
};
use dball_core::maps::compose_unitary;
use dball_core::series::norm_sq_2d;
use dball_core::{Alpha, BivarPoly};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::*;
use crate::error::CliError;
use crate::input::{parse_measure_arg, parse_poly_arg, parse_unitary_arg, MeasureSpec, PolySpec};
use crate::output::{num, Artifact, Body};

fn alpha(x: f64) -> Result<Alpha, CliError> {
    Alpha::new(x).map_err(|e| CliError::Input(e.to_string()))
}

fn poly_inputs(f: &BivarPoly) -> Value {
    json!({ "text": f.to_string(), "terms": PolySpec::from_poly(f).terms })
}

pub fn run(cmd: &Command) -> Result<Artifact, CliError> {
    match cmd {
        Command::Norm(a) => norm(a),
        Command::Dist(a) => dist(a),
        Command::Rate(a) => rate(a),
        Command::Cauchy(a) => cauchy(a),
        Command::Energy(a) => energy(a),
        Command::Capacity(a) => capacity(a),
        Command::Evidence(a) => evidence(a),
    }
}

fn norm(a: &NormArgs) -> Result<Artifact, CliError> {
    let mut f = parse_poly_arg(&a.poly.f)?;
    let al = alpha(a.alpha)?;
    let mut inputs = json!({ "f": poly_inputs(&f), "alpha": a.alpha });
    if let Some(u) = &a.unitary {
        let u = parse_unitary_arg(u)?;
        let m = u.entries();
        inputs["unitary"] = json!(m.iter().map(|row| row.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>()).collect::<Vec<_>>());
        f = compose_unitary(&f, &u);
    }
    let n = norm_sq_2d(&f, al);
    Ok(Artifact::json(
        inputs,
        json!({
            "norm_sq": n,
            "norm": n.sqrt(),
            "degree": f.degree(),
            "terms": f.len(),
            "composed": f.to_string(),
        }),
    ))
}

fn family(f: &BivarPoly, arg: Option<FamilyArg>) -> Option<RateFamily> {
    match arg {
        Some(FamilyArg::Axis) => Some(RateFamily::Axis),
        Some(FamilyArg::Diagonal) => Some(RateFamily::Diagonal),
        None => RateFamily::classify(f),
    }
}

fn family_name(fam: Option<RateFamily>) -> Value {
    match fam {
        Some(RateFamily::Axis) => json!("axis"),
        Some(RateFamily::Diagonal) => json!("diagonal"),
        None => Value::Null,
    }
}

/// Independent solves for each degree; rayon keeps the output order.
fn sweep(f: &BivarPoly, al: Alpha, degrees: &[u32]) -> Result<Vec<Approximant>, CliError> {
    degrees
        .par_iter()
        .map(|&d| dist_sq_opt(f, al, BasisSpec::new(d)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Numerical(e.to_string()))
}

fn dist(a: &DistArgs) -> Result<Artifact, CliError> {
    let f = parse_poly_arg(&a.poly.f)?;
    let al = alpha(a.alpha)?;
    if a.dstep == 0 || a.dmin > a.dmax {
        return Err(CliError::Input("need dmin <= dmax and dstep >= 1".into()));
    }
    let degrees: Vec<u32> = (a.dmin..=a.dmax).step_by(a.dstep as usize).collect();
    let fam = family(&f, a.family);
    let results = sweep(&f, al, &degrees)?;
    let rows = results
        .iter()
        .map(|r| {
            let prediction = fam.and_then(|fm| fm.prediction(al, r.max_degree).ok()).unwrap_or(f64::NAN);
            vec![
                r.max_degree.to_string(),
                (r.max_degree / 2).to_string(),
                num(r.dist_sq),
                num(r.dist_sq.sqrt()),
                num(prediction),
                num(r.cond_estimate),
            ]
        })
        .collect();
    let inputs = json!({
        "f": poly_inputs(&f), "alpha": a.alpha, "dmin": a.dmin, "dmax": a.dmax, "dstep": a.dstep,
        "family": family_name(fam),
    });
    Ok(Artifact {
        inputs,
        body: Body::Csv { columns: vec!["D", "n", "dist_sq", "sqrt_dist_sq", "phi_prediction", "cond_estimate"], rows },
        failure: None,
        warnings: Vec::new(),
    })
}

fn rate(a: &RateArgs) -> Result<Artifact, CliError> {
    let f = parse_poly_arg(&a.poly.f)?;
    let al = alpha(a.alpha)?;
    if a.dmin > a.dmax {
        return Err(CliError::Input("need dmin <= dmax".into()));
    }
    let degrees: Vec<u32> = (a.dmin..=a.dmax).collect();
    let results = sweep(&f, al, &degrees)?;
    let table = DistanceTable::new(
        results
            .into_iter()
            .map(|r| DistanceRow { max_degree: r.max_degree, dist_sq: r.dist_sq, cond_estimate: r.cond_estimate, p_star: r.p_star })
            .collect(),
    );
    let fit = rate_fit(&table, (a.dmin, a.dmax)).map_err(|e| CliError::Numerical(e.to_string()))?;
    let fam = family(&f, a.family);
    // phi_beta(n) = n^{1-beta} predicts slope beta - 1; beta = 1 is logarithmic.
    let predicted = fam.map(|fm| fm.exponent(al)).filter(|b| (0.0..1.0).contains(b)).map(|b| b - 1.0);
    let inputs = json!({ "f": poly_inputs(&f), "alpha": a.alpha, "dmin": a.dmin, "dmax": a.dmax, "family": family_name(fam) });
    Ok(Artifact::json(
        inputs,
        json!({
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r2": fit.r2,
            "points": fit.points,
            "predicted_slope": predicted,
            "max_increase": table.max_increase(),
            "dist_sq_at_dmax": table.rows.last().map(|r| r.dist_sq),
        }),
    ))
}

fn cauchy(a: &CauchyArgs) -> Result<Artifact, CliError> {
    let (spec, mu) = parse_measure_arg(&a.measure)?;
    let al = alpha(a.alpha)?;
    let n = cauchy_norm_sq(&mu, al, a.k);
    let mut inputs = json!({ "measure": spec, "alpha": a.alpha, "K": a.k });
    let mut result = json!({
        "K": a.k,
        "exact_trunc": n.exact_trunc,
        "lemma_form_trunc": n.lemma_form_trunc,
        "last_term_exact": n.last_term_exact,
        "last_term_lemma": n.last_term_lemma,
        "ratio": n.exact_trunc / n.lemma_form_trunc,
    });
    if let Some(ftext) = &a.f {
        let f = parse_poly_arg(ftext)?;
        let r = annihilation_check(&f, &mu, a.m);
        inputs["f"] = poly_inputs(&f);
        inputs["M"] = json!(a.m);
        result["annihilation"] = json!({
            "M": a.m,
            "transform_degree": r.k_max,
            "max_pairing": r.max_pairing,
            "worst_multiplier": [r.worst.k, r.worst.l],
        });
    }
    Ok(Artifact::json(inputs, result))
}

fn report_json(r: &EnergyReport) -> Value {
    json!({
        "method": r.method.as_str(),
        "alpha": r.alpha,
        "value": r.value,
        "partial_sum": r.partial_sum,
        "tail_estimate": r.tail_estimate,
        "last_term": r.last_term,
        "decay_exponent": r.decay_exponent,
        "K": r.truncation,
        "iterations": r.iterations,
        "comparable_form": r.comparable_form,
        "diverged": r.diverged,
        "converged": r.converged,
        "coincident_pairs": r.coincident_pairs,
    })
}

fn energy(a: &EnergyArgs) -> Result<Artifact, CliError> {
    let (spec, mu) = parse_measure_arg(&a.measure)?;
    let inputs = json!({ "measure": spec, "alpha": a.alpha, "K": a.k, "method": format!("{:?}", a.method).to_lowercase(), "N": a.n });
    let report = match a.method {
        EnergyMethodArg::Series => {
            let opts = match a.k {
                Some(k) => EnergyOptions { ceiling: a.ceiling, ..EnergyOptions::fixed(k) },
                None => EnergyOptions { ceiling: a.ceiling, ..EnergyOptions::default() },
            };
            energy_series(&mu, a.alpha, &opts).map_err(|e| CliError::Input(e.to_string()))?
        }
        EnergyMethodArg::Discrete => {
            let cloud = match &mu {
                Measure::PointCloud(c) => c.clone(),
                Measure::DiagCircle => diag_circle_quadrature(a.n).map_err(|e| CliError::Input(e.to_string()))?,
                other => {
                    return Err(CliError::Input(format!(
                        "discrete energy needs a cloud or diag_circle measure, got {}",
                        other.name()
                    )))
                }
            };
            energy_discrete(&cloud, a.alpha).map_err(|e| CliError::Input(e.to_string()))?
        }
    };
    let mut out = Artifact::json(inputs, report_json(&report));
    if report.diverged {
        out.failure = Some(format!("energy series diverges (partial sum {})", report.partial_sum));
    } else if report.coincident_pairs > 0 {
        out.failure = Some(format!("{} coincident point pairs make the energy infinite", report.coincident_pairs));
    }
    if report.comparable_form {
        out.warnings.push("alpha < 2: the series is only comparable to the energy".into());
    }
    Ok(out)
}

fn zero_set(name: &str, n: usize) -> Result<Vec<dball_core::boundary::SpherePoint>, CliError> {
    let fam = ZeroSetFamily::from_name(name).ok_or_else(|| {
        CliError::Input(format!("unknown set {name:?}: expected point_10, point_diag, diag_circle or flat_curve"))
    })?;
    Ok(sample_zero_set(fam, n))
}

fn minimized_json(n: usize, r: &MinimizedEnergy, with_weights: bool) -> Value {
    let max = r.weights.iter().cloned().fold(f64::MIN, f64::max);
    let min = r.weights.iter().cloned().fold(f64::MAX, f64::min);
    let mut v = json!({
        "N": n,
        "energy": r.report.value,
        "off_diagonal_energy": r.off_diagonal,
        "cap_estimate": r.cap_estimate,
        "iterations": r.report.iterations,
        "final_gap": r.final_gap,
        "converged": r.report.converged,
        "weight_max_over_min": max / min,
    });
    if with_weights {
        v["weights"] = json!(r.weights);
    }
    v
}

fn capacity(a: &CapacityArgs) -> Result<Artifact, CliError> {
    let (points, inputs) = match &a.measure {
        Some(m) => {
            let (spec, mu) = parse_measure_arg(m)?;
            let Measure::PointCloud(c) = mu else {
                return Err(CliError::Input("capacity --measure must be a cloud".into()));
            };
            (c.points().to_vec(), json!({ "measure": MeasureSpec::from_cloud(&c), "spec_type": spec_type(&spec) }))
        }
        None => (zero_set(&a.set, a.n)?, json!({ "set": a.set, "N": a.n })),
    };
    let mut inputs = inputs;
    inputs["alpha"] = json!(a.alpha);
    inputs["iters"] = json!(a.iters);
    inputs["cutoff"] = json!(a.cutoff);
    let opts = MinimizeOptions { max_iters: a.iters, cutoff: a.cutoff, ..MinimizeOptions::default() };
    let r = minimize_energy(&points, a.alpha, &opts).map_err(|e| CliError::Input(e.to_string()))?;
    let mut out = Artifact::json(inputs, minimized_json(points.len(), &r, true));
    if let Some(w) = r.warning {
        out.warnings.push(w.to_string());
    }
    Ok(out)
}

fn spec_type(spec: &MeasureSpec) -> &'static str {
    match spec {
        MeasureSpec::Point { .. } => "point",
        MeasureSpec::DiagCircle => "diag_circle",
        MeasureSpec::Sphere => "sphere",
        MeasureSpec::Cloud { .. } => "cloud",
    }
}

fn evidence(a: &EvidenceArgs) -> Result<Artifact, CliError> {
    let f = parse_poly_arg(&a.f)?;
    let al = alpha(a.alpha)?;
    let degrees: Vec<u32> = (0..=a.dmax).step_by(2).collect();
    let dists = sweep(&f, al, &degrees)?;
    let mut warnings = Vec::new();
    let energies = a
        .n
        .iter()
        .map(|&n| {
            let pts = zero_set(&a.set, n)?;
            let opts = MinimizeOptions { max_iters: a.iters, ..MinimizeOptions::default() };
            let r = minimize_energy(&pts, a.alpha.min(2.0), &opts).map_err(|e| CliError::Input(e.to_string()))?;
            if let Some(w) = r.warning {
                warnings.push(format!("N = {n}: {w}"));
            }
            Ok(minimized_json(n, &r, false))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let last = dists.last().map(|r| r.dist_sq);
    let half = dists.get(dists.len() / 2).map(|r| r.dist_sq);
    let inputs = json!({ "f": poly_inputs(&f), "alpha": a.alpha, "dmax": a.dmax, "set": a.set, "N": a.n, "iters": a.iters });
    let mut out = Artifact::json(
        inputs,
        json!({
            "distances": dists.iter().map(|r| json!({ "D": r.max_degree, "dist_sq": r.dist_sq })).collect::<Vec<_>>(),
            "dist_sq_ratio_last_over_middle": match (last, half) { (Some(l), Some(h)) => json!(l / h), _ => Value::Null },
            "upper_bound_2_pow_alpha": 2f64.powf(a.alpha),
            "energies": energies,
        }),
    );
    out.warnings = warnings;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dist_rows_have_expected_shape() {
        let args = DistArgs {
            poly: PolyArg { f: "1 - z1".into() },
            alpha: 1.0,
            dmax: 4,
            dmin: 0,
            dstep: 2,
            family: None,
        };
        let a = dist(&args).unwrap();
        let Body::Csv { columns, rows } = a.body else { panic!() };
        assert_eq!(columns.len(), 6);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2][0], "4");
        assert_eq!(rows[2][1], "2");
    }

    #[test]
    fn point_mass_energy_is_a_numerical_failure() {
        let args = EnergyArgs { measure: "point_10".into(), alpha: 2.0, k: Some(4096), method: EnergyMethodArg::Series, n: 512, ceiling: 1e12 };
        let a = energy(&args).unwrap();
        assert!(a.failure.is_some());
    }

    #[test]
    fn cloud_capacity_requires_cloud() {
        let args = CapacityArgs { set: "diag_circle".into(), measure: Some("sphere".into()), n: 8, alpha: 2.0, iters: 10, cutoff: 1e-6 };
        assert!(matches!(capacity(&args), Err(CliError::Input(_))));
    }

    #[test]
    fn cloud_spec_roundtrip() {
        use dball_core::boundary::PointCloud;
        use num_complex::Complex64;
        let c = PointCloud::uniform(vec![[Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]]).unwrap();
        let spec = MeasureSpec::from_cloud(&c);
        assert_eq!(spec.build().unwrap(), Measure::PointCloud(c));
    }
}
