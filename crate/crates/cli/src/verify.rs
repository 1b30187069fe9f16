use std::path::PathBuf;

use clap::Args;
use convexgraph::group_lattice::parse_point_id;
use convexgraph::theorems::{
    all_functions, degree_two_suite, dist_to_point_suite, exhaustive_pointwise_suite, midpoint_subharmonic_suite,
    set_sweep_suite, verify_degree_two_equivalence, verify_dist_convex_implies_set_convex,
    verify_dist_to_point_midpoint_convex, verify_nn_implies_dist_midpoint_convex, verify_pointwise_implication,
    ClaimId, ClaimReport, ClaimVerdict, GraphClaims, Hypothesis,
};
use convexgraph::{Graph, Scalar, VertexFunction, VertexSet};

use crate::input::{Instance, InstanceArgs, Sources};
use crate::{emit, parse_claim, Failure, Format};

const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// thm1, thm2, thm3, thm4-cvx-sub, lem-deg2, lem-dist-pt, prop-dist-cvx or prop-nn.
    #[arg(value_parser = parse_claim)]
    claim: ClaimId,
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    set: Option<PathBuf>,
    #[arg(long = "fn", value_name = "FILE")]
    function: Option<PathBuf>,
    /// Base point `a` for lem-dist-pt, as `(c1,...,cn)`.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Sampled functions (thm4-cvx-sub, default 200) or base points (lem-dist-pt, default 20).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest graph (thm1, thm2, default 6) or cycle (lem-deg2, default 8) in exhaustive suites.
    #[arg(long)]
    max_n: Option<usize>,
    /// Function values for exhaustive suites.
    #[arg(long, value_delimiter = ',', default_value = "0,1,2", allow_hyphen_values = true)]
    values: Vec<i64>,
}

fn hypothesis(claim: ClaimId) -> Hypothesis {
    match claim {
        ClaimId::Thm1 => Hypothesis::TriangleFree,
        _ => Hypothesis::Pairing,
    }
}

fn every_function<S: Scalar>(
    g: &Graph<S>,
    values: &[i64],
    mut one: impl FnMut(&VertexFunction<S>) -> convexgraph::Result<ClaimReport>,
) -> Result<ClaimReport, Failure> {
    if g.len() > EXHAUSTIVE_LIMIT {
        return Err(Failure::Usage(format!(
            "exhaustive function sweeps are limited to {EXHAUSTIVE_LIMIT} vertices; pass --fn"
        )));
    }
    let mut total: Option<ClaimReport> = None;
    for f in all_functions(g.len(), values) {
        let r = one(&f)?;
        match &mut total {
            Some(t) => t.merge(r),
            None => total = Some(r),
        }
    }
    total.ok_or_else(|| Failure::Usage("no functions to check".into()))
}

fn nonempty_subsets<S: Scalar>(
    inst: &Instance<S>,
    mut one: impl FnMut(&VertexSet) -> convexgraph::Result<ClaimReport>,
) -> Result<ClaimReport, Failure> {
    let n = inst.graph().len();
    if n > 16 {
        return Err(Failure::Usage("set sweeps are limited to 16 vertices; pass --set".into()));
    }
    let mut total: Option<ClaimReport> = None;
    for mask in 1..1u64 << n {
        let r = one(&VertexSet::from_mask(n, mask))?;
        match &mut total {
            Some(t) => t.merge(r),
            None => total = Some(r),
        }
    }
    total.ok_or_else(|| Failure::Usage("empty instance".into()))
}

fn instance_report<S: Scalar>(args: &VerifyArgs, src: &Sources, tolerance: Option<f64>) -> Result<ClaimReport, Failure> {
    let inst = src.instance::<S>(tolerance)?;
    let set = src.set_for(&inst)?;
    let f = src.function_for(&inst)?;
    let claim = args.claim;
    let report = match claim {
        ClaimId::Thm1 | ClaimId::Thm2 => {
            let claims = GraphClaims::new(inst.graph())?;
            let hyp = hypothesis(claim);
            match f {
                Some(f) => claims.check(&f, hyp)?,
                None => every_function(inst.graph(), &args.values, |f| claims.check(f, hyp))?,
            }
        }
        ClaimId::Thm3 => {
            let graph = convexgraph::theorems::Instance::Graph(inst.graph());
            match set {
                Some(set) => verify_dist_convex_implies_set_convex(graph, &set)?,
                None => match &inst {
                    Instance::Lattice(lat) => set_sweep_suite(claim, lat)?,
                    Instance::Graph(_) => {
                        nonempty_subsets(&inst, |s| verify_dist_convex_implies_set_convex(graph, s))?
                    }
                },
            }
        }
        ClaimId::Thm4CvxSub => {
            let lat = inst.lattice()?;
            match f {
                Some(f) => verify_pointwise_implication(inst.as_core(), &f, Hypothesis::Midpoint)?,
                None => midpoint_subharmonic_suite(lat, args.samples.unwrap_or(200), args.seed)?,
            }
        }
        ClaimId::LemDeg2 => match f {
            Some(f) => verify_degree_two_equivalence(inst.graph(), &f)?,
            None => every_function(inst.graph(), &args.values, |f| verify_degree_two_equivalence(inst.graph(), f))?,
        },
        ClaimId::LemDistPt => {
            let lat = inst.lattice()?;
            match &args.point {
                Some(p) => {
                    let a = parse_point_id(p)
                        .filter(|a| a.len() == lat.spec().dim())
                        .ok_or_else(|| Failure::Usage(format!("bad point `{p}`")))?;
                    verify_dist_to_point_midpoint_convex(lat, &a)?
                }
                None => dist_to_point_suite(lat, args.samples.unwrap_or(20), args.seed)?,
            }
        }
        ClaimId::PropDistCvx | ClaimId::PropNn => {
            let lat = inst.lattice()?;
            match (set, claim) {
                (Some(set), ClaimId::PropDistCvx) => verify_dist_convex_implies_set_convex(inst.as_core(), &set)?,
                (Some(set), _) => verify_nn_implies_dist_midpoint_convex(lat, &set)?,
                (None, _) => set_sweep_suite(claim, lat)?,
            }
        }
    };
    Ok(report)
}

fn suite_report(args: &VerifyArgs) -> Result<ClaimReport, Failure> {
    match args.claim {
        ClaimId::Thm1 | ClaimId::Thm2 => {
            let max_n = args.max_n.unwrap_or(6);
            if max_n > 8 {
                return Err(Failure::Usage("--max-n is limited to 8".into()));
            }
            Ok(exhaustive_pointwise_suite(max_n, &args.values, hypothesis(args.claim)))
        }
        ClaimId::LemDeg2 => Ok(degree_two_suite(4..=args.max_n.unwrap_or(8), &args.values)?),
        claim => Err(Failure::Usage(format!("{claim} needs --graph or --lattice"))),
    }
}

pub fn run(format: Format, tolerance: Option<f64>, args: &VerifyArgs) -> Result<(), Failure> {
    let src = Sources::load(&args.instance, args.set.as_deref(), args.function.as_deref(), tolerance)?;
    let report = if !src.has_instance() {
        suite_report(args)?
    } else if src.needs_float() {
        instance_report::<f64>(args, &src, tolerance)?
    } else {
        instance_report::<i64>(args, &src, tolerance)?
    };
    emit(format, &report, || format!("{report}\n"));
    match report.verdict {
        ClaimVerdict::Verified => Ok(()),
        ClaimVerdict::Vacuous | ClaimVerdict::Refuted => Err(Failure::Negative),
    }
}
