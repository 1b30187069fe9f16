use clap::{Args, ValueEnum};
use convexgraph::theorems::{search_counterexample, Counterexample, Family, Hypothesis, Sampler};
use serde::Serialize;

use crate::{emit, Failure, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Restrict {
    None,
    TriangleFree,
    Pairing,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// cycle:N, path:N, complete:N, grid:WxH, tri-tiling:WxH, random:N:P,
    /// triangle-free:N:P or all:N.
    #[arg(long)]
    family: String,
    /// constant, uniform:LO:HI, distance, indicator or exhaustive:V1,V2,...
    #[arg(long, allow_hyphen_values = true)]
    sampler: String,
    /// Maximum number of (graph, function) instances.
    #[arg(long, default_value_t = 10_000)]
    budget: usize,
    /// Only count vertices satisfying this hypothesis.
    #[arg(long, value_enum, default_value_t = Restrict::None)]
    hypothesis: Restrict,
    /// Functions drawn per graph by random samplers.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn bad(what: &str, s: &str) -> Failure {
    Failure::Usage(format!("bad {what} `{s}`"))
}

fn dims(s: &str) -> Option<(usize, usize)> {
    let (w, h) = s.split_once('x')?;
    let (w, h) = (w.parse().ok()?, h.parse().ok()?);
    (w > 0 && h > 0).then_some((w, h))
}

fn parse_family(s: &str, seed: u64) -> Result<Family, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |i: usize| {
        parts
            .get(i)
            .and_then(|p| p.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| bad("family", s))
    };
    let prob = |i: usize| {
        parts
            .get(i)
            .and_then(|p| p.parse::<f64>().ok())
            .filter(|p| (0.0..=1.0).contains(p))
            .ok_or_else(|| bad("family", s))
    };
    let size = || parts.get(1).and_then(|p| dims(p)).ok_or_else(|| bad("family", s));
    Ok(match parts[0] {
        "cycle" => Family::Cycle(num(1)?),
        "path" => Family::Path(num(1)?),
        "complete" => Family::Complete(num(1)?),
        "grid" => {
            let (w, h) = size()?;
            Family::Grid(w, h)
        }
        "tri-tiling" => {
            let (w, h) = size()?;
            Family::TriangularTiling(w, h)
        }
        "random" => Family::Random { n: num(1)?, p: prob(2)?, seed },
        "triangle-free" => Family::TriangleFreeMinDegree2 { n: num(1)?, p: prob(2)?, seed },
        "all" => {
            let max_n = num(1)?;
            if max_n > 8 {
                return Err(Failure::Usage("all:N is limited to N <= 8".into()));
            }
            Family::AllConnected { max_n }
        }
        _ => return Err(bad("family", s)),
    })
}

fn parse_sampler(s: &str, count: usize, seed: u64) -> Result<Sampler, Failure> {
    let (name, rest) = s.split_once(':').unwrap_or((s, ""));
    Ok(match name {
        "constant" => Sampler::Constant,
        "distance" => Sampler::Distance,
        "indicator" => Sampler::Indicator { count, seed },
        "uniform" => {
            let (lo, hi) = rest.split_once(':').ok_or_else(|| bad("sampler", s))?;
            let lo: i64 = lo.parse().map_err(|_| bad("sampler", s))?;
            let hi: i64 = hi.parse().map_err(|_| bad("sampler", s))?;
            if lo > hi {
                return Err(bad("sampler", s));
            }
            Sampler::UniformInt { lo, hi, count, seed }
        }
        "exhaustive" => {
            let values = rest
                .split(',')
                .map(|v| v.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| bad("sampler", s))?;
            Sampler::Exhaustive(values)
        }
        _ => return Err(bad("sampler", s)),
    })
}

#[derive(Debug, Serialize)]
struct SearchReport {
    family: String,
    sampler: String,
    budget: usize,
    found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Counterexample>,
}

impl SearchReport {
    fn text(&self) -> String {
        match &self.counterexample {
            None => format!(
                "no counterexample in {} with {} (budget {})\n",
                self.family, self.sampler, self.budget
            ),
            Some(c) => format!(
                "counterexample at {}: f = {} exceeds neighborhood mean {}\n# graph\n{}# function\n{}",
                c.vertex, c.f_value, c.neighborhood_mean, c.graph, c.function
            ),
        }
    }
}

pub fn run(format: Format, args: &SearchArgs) -> Result<(), Failure> {
    let family = parse_family(&args.family, args.seed)?;
    let sampler = parse_sampler(&args.sampler, args.samples, args.seed)?;
    let restrict = match args.hypothesis {
        Restrict::None => None,
        Restrict::TriangleFree => Some(Hypothesis::TriangleFree),
        Restrict::Pairing => Some(Hypothesis::Pairing),
    };
    let counterexample = search_counterexample(&family, &sampler, restrict, args.budget)?;
    let report = SearchReport {
        family: args.family.clone(),
        sampler: args.sampler.clone(),
        budget: args.budget,
        found: counterexample.is_some(),
        counterexample,
    };
    emit(format, &report, || report.text());
    if report.found {
        Err(Failure::Negative)
    } else {
        Ok(())
    }
}
