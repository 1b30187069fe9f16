use std::fmt::Write as _;
use std::path::Path;

use convexgraph::convexity::{
    brute_force_hull_oracle, convex_hull, is_convex_fn_at, is_convex_set, set_convexity_witness,
};
use convexgraph::group_lattice::{has_nearest_neighbor_property, is_midpoint_convex_at, point_id};
use convexgraph::subharmonic::{mean_comparison, MeanComparison, Weighting};
use convexgraph::{Check, Scalar, VertexFunction, VertexSet};
use serde::Serialize;

use crate::input::{Instance, InstanceArgs, Sources};
use crate::{emit, CheckKind, Failure, Format};

#[derive(Debug, Serialize)]
pub struct Finding {
    pub subject: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interior: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub results: Vec<Finding>,
}

impl CheckReport {
    fn new(kind: CheckKind, instance: String, results: Vec<Finding>) -> Self {
        let failed = results.iter().filter(|r| !r.pass).count();
        Self {
            check: kind_name(kind).to_owned(),
            instance,
            passed: failed == 0,
            checked: results.len(),
            failed,
            results,
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let verdict = if r.pass { "pass" } else { "FAIL" };
            let tag = match r.interior {
                Some(false) => " [boundary]",
                _ => "",
            };
            writeln!(out, "{} {}{}: {}", verdict, r.subject, tag, r.detail).unwrap();
        }
        writeln!(
            out,
            "{}: {} on {} ({} checked, {} failed)",
            self.check,
            if self.passed { "pass" } else { "fail" },
            self.instance,
            self.checked,
            self.failed
        )
        .unwrap();
        out
    }
}

fn kind_name(kind: CheckKind) -> &'static str {
    match kind {
        CheckKind::SetConvex => "set-convex",
        CheckKind::FnConvex => "fn-convex",
        CheckKind::Subharmonic => "subharmonic",
        CheckKind::Harmonic => "harmonic",
        CheckKind::Midpoint => "midpoint",
        CheckKind::NnProperty => "nn-property",
    }
}

fn names<S: Scalar>(inst: &Instance<S>, set: &VertexSet) -> String {
    let ids: Vec<&str> = set.iter().map(|v| inst.graph().name(v)).collect();
    format!("{{{}}}", ids.join(", "))
}

fn mean_detail<S: Scalar>(cmp: &MeanComparison<S>) -> String {
    let mean = cmp.mean().map_or_else(|| cmp.mean_f64().to_string(), |m| m.to_string());
    format!("f = {}, neighborhood mean = {} (M = {})", cmp.f_value, mean, cmp.total_weight)
}

fn need<T>(value: Option<T>, flag: &str, kind: CheckKind) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("{} needs {flag}", kind_name(kind))))
}

fn set_convex<S: Scalar>(inst: &Instance<S>, set: &VertexSet) -> Vec<Finding> {
    let g = inst.graph();
    let witness = inst.with_metric(|m| set_convexity_witness(m, set));
    let detail = match witness {
        None => "convex".to_owned(),
        Some((z, x, y)) => format!(
            "{} lies between {} and {} but is not in the set",
            g.name(z),
            g.name(x),
            g.name(y)
        ),
    };
    vec![Finding {
        subject: names(inst, set),
        pass: witness.is_none(),
        interior: None,
        detail,
    }]
}

fn fn_convex<S: Scalar>(inst: &Instance<S>, f: &VertexFunction<S>) -> Vec<Finding> {
    let g = inst.graph();
    inst.with_metric(|m| {
        g.vertices()
            .map(|z| {
                let check = is_convex_fn_at(m, f, z);
                let detail = match &check {
                    Check::Pass => "convex".to_owned(),
                    Check::Fail(w) => format!(
                        "pair ({}, {}) with d = {}: d·f = {} > {}",
                        g.name(w.x),
                        g.name(w.y),
                        w.span,
                        w.scaled_lhs,
                        w.scaled_rhs
                    ),
                };
                Finding {
                    subject: g.name(z).to_owned(),
                    pass: check.passed(),
                    interior: interior_flag(inst, z),
                    detail,
                }
            })
            .collect()
    })
}

fn interior_flag<S: Scalar>(inst: &Instance<S>, v: convexgraph::Vertex) -> Option<bool> {
    match inst {
        Instance::Lattice(l) => Some(l.is_interior(v)),
        Instance::Graph(_) => None,
    }
}

fn mean_check<S: Scalar>(
    inst: &Instance<S>,
    f: &VertexFunction<S>,
    harmonic: bool,
    weighting: Weighting,
) -> Result<Vec<Finding>, Failure> {
    let g = inst.graph();
    g.vertices()
        .map(|x| {
            let cmp = mean_comparison(g, f, x, weighting)?;
            let pass = if harmonic { cmp.is_harmonic() } else { cmp.is_subharmonic() };
            Ok(Finding {
                subject: g.name(x).to_owned(),
                pass,
                interior: interior_flag(inst, x),
                detail: mean_detail(&cmp),
            })
        })
        .collect()
}

fn midpoint<S: Scalar>(inst: &Instance<S>, f: &VertexFunction<S>) -> Result<Vec<Finding>, Failure> {
    let lat = inst.lattice()?;
    let g = lat.graph();
    Ok(g.vertices()
        .map(|x| {
            let check = is_midpoint_convex_at(lat, f, x);
            let detail = match &check {
                Check::Pass => "midpoint convex".to_owned(),
                Check::Fail(w) => format!("z = {}: 2f(x) = {} > {} = f(x+z) + f(x-z)", point_id(&w.z), w.lhs, w.rhs),
            };
            Finding {
                subject: g.name(x).to_owned(),
                pass: check.passed(),
                interior: Some(lat.is_interior(x)),
                detail,
            }
        })
        .collect())
}

fn nn_property<S: Scalar>(inst: &Instance<S>, set: &VertexSet) -> Result<Vec<Finding>, Failure> {
    let lat = inst.lattice()?;
    let g = lat.graph();
    let check = has_nearest_neighbor_property(lat, set);
    let detail = match &check {
        Check::Pass => "nearest-neighbor property holds".to_owned(),
        Check::Fail(w) => format!(
            "y1 = {}, y2 = {}, z = {}: no y in F with 2|y - z| <= |y1 + y2 - 2z|",
            g.name(w.y1),
            g.name(w.y2),
            g.name(w.z)
        ),
    };
    Ok(vec![Finding {
        subject: names(inst, set),
        pass: check.passed(),
        interior: None,
        detail,
    }])
}

fn run_typed<S: Scalar>(
    src: &Sources,
    format: Format,
    tolerance: Option<f64>,
    kind: CheckKind,
    weighting: Weighting,
) -> Result<(), Failure> {
    let inst = src.instance::<S>(tolerance)?;
    let set = src.set_for(&inst)?;
    let f = src.function_for(&inst)?;
    let results = match kind {
        CheckKind::SetConvex => set_convex(&inst, &need(set, "--set", kind)?),
        CheckKind::FnConvex => fn_convex(&inst, &need(f, "--fn", kind)?),
        CheckKind::Subharmonic => mean_check(&inst, &need(f, "--fn", kind)?, false, weighting)?,
        CheckKind::Harmonic => mean_check(&inst, &need(f, "--fn", kind)?, true, weighting)?,
        CheckKind::Midpoint => midpoint(&inst, &need(f, "--fn", kind)?)?,
        CheckKind::NnProperty => nn_property(&inst, &need(set, "--set", kind)?)?,
    };
    let report = CheckReport::new(kind, inst.describe(), results);
    emit(format, &report, || report.text());
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Negative)
    }
}

pub fn run(
    format: Format,
    tolerance: Option<f64>,
    kind: CheckKind,
    instance: &InstanceArgs,
    set: Option<&Path>,
    function: Option<&Path>,
    unweighted: bool,
) -> Result<(), Failure> {
    let src = Sources::load(instance, set, function, tolerance)?;
    let weighting = if unweighted { Weighting::Unit } else { Weighting::Edge };
    if src.needs_float() {
        run_typed::<f64>(&src, format, tolerance, kind, weighting)
    } else {
        run_typed::<i64>(&src, format, tolerance, kind, weighting)
    }
}

#[derive(Debug, Serialize)]
struct HullReport {
    instance: String,
    input: Vec<String>,
    hull: Vec<String>,
    input_convex: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_agrees: Option<bool>,
}

fn hull_typed<S: Scalar>(src: &Sources, format: Format, tolerance: Option<f64>, oracle: bool) -> Result<(), Failure> {
    let inst = src.instance::<S>(tolerance)?;
    let set = src.set_for(&inst)?.expect("--set is required");
    let g = inst.graph();
    let (hull, convex, oracle_hull) = inst.with_metric(|m| {
        let hull = convex_hull(m, &set);
        let oracle_hull = oracle.then(|| brute_force_hull_oracle(m, &set)).transpose();
        (hull, is_convex_set(m, &set), oracle_hull)
    });
    let oracle_agrees = oracle_hull?.map(|o| o == hull);
    let ids = |s: &VertexSet| s.iter().map(|v| g.name(v).to_owned()).collect::<Vec<_>>();
    let report = HullReport {
        instance: inst.describe(),
        input: ids(&set),
        hull: ids(&hull),
        input_convex: convex,
        oracle_agrees,
    };
    emit(format, &report, || {
        let mut out = convexgraph::io::write_set(g, &hull);
        if oracle_agrees == Some(false) {
            out.push_str("# brute-force hull differs\n");
        }
        out
    });
    if oracle_agrees == Some(false) {
        return Err(Failure::Negative);
    }
    Ok(())
}

pub fn hull(
    format: Format,
    tolerance: Option<f64>,
    instance: &InstanceArgs,
    set: &Path,
    oracle: bool,
) -> Result<(), Failure> {
    let src = Sources::load(instance, Some(set), None, tolerance)?;
    if src.needs_float() {
        hull_typed::<f64>(&src, format, tolerance, oracle)
    } else {
        hull_typed::<i64>(&src, format, tolerance, oracle)
    }
}
