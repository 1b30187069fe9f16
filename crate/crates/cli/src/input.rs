//! Loading graphs, lattices, sets and functions from command-line inputs.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use convexgraph::group_lattice::build_lattice;
use convexgraph::metric::ShortestPath;
use convexgraph::{io, Error, Graph, GroupLattice, GroupSpec, Metric, Norm, Scalar, VertexFunction, VertexSet, Window};

use crate::Failure;

#[derive(Args, Debug, Clone)]
pub struct LatticeArgs {
    /// Window: `a:b,c:d,...` per axis, or a point count per axis centred at 0.
    #[arg(long, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// Dimension; inferred from range windows, defaults to 2 for counts.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct InstanceArgs {
    /// Graph file.
    #[arg(long, conflicts_with = "lattice")]
    pub graph: Option<PathBuf>,
    /// Norm of a lattice instance: l1, l2 or linf.
    #[arg(long, value_name = "NORM")]
    pub lattice: Option<Norm>,
    #[command(flatten)]
    pub spec: LatticeArgs,
}

pub fn warn(warnings: &[String]) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
}

pub fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

pub fn lattice_spec(norm: Norm, args: &LatticeArgs, tolerance: Option<f64>) -> Result<GroupSpec, Failure> {
    let raw = args
        .window
        .as_deref()
        .ok_or_else(|| Failure::Usage("lattice instances need --window".into()))?;
    let window = match raw.trim().parse::<usize>() {
        Ok(count) => Window::centered(args.dim.unwrap_or(2), count)?,
        Err(_) => {
            let w: Window = raw.parse()?;
            if let Some(dim) = args.dim.filter(|&d| d != w.dim()) {
                return Err(Failure::Usage(format!(
                    "--dim {dim} does not match the {}-dimensional window",
                    w.dim()
                )));
            }
            w
        }
    };
    let mut spec = GroupSpec::new(norm, args.radius, window);
    if let Some(eps) = tolerance {
        spec.tolerance = eps;
    }
    Ok(spec)
}

/// A graph or lattice instance together with its metric.
pub enum Instance<S> {
    Graph(Graph<S>),
    Lattice(Box<GroupLattice<S>>),
}

impl<S: Scalar> Instance<S> {
    pub fn graph(&self) -> &Graph<S> {
        match self {
            Instance::Graph(g) => g,
            Instance::Lattice(l) => l.graph(),
        }
    }

    pub fn lattice(&self) -> Result<&GroupLattice<S>, Failure> {
        match self {
            Instance::Lattice(l) => Ok(l),
            Instance::Graph(_) => Err(Failure::Usage("this check needs a --lattice instance".into())),
        }
    }

    pub fn with_metric<R>(&self, f: impl FnOnce(&dyn Metric<S>) -> R) -> R {
        match self {
            Instance::Graph(g) => f(&ShortestPath::new(g)),
            Instance::Lattice(l) => f(&l.metric()),
        }
    }

    pub fn as_core(&self) -> convexgraph::theorems::Instance<'_, S> {
        match self {
            Instance::Graph(g) => convexgraph::theorems::Instance::Graph(g),
            Instance::Lattice(l) => convexgraph::theorems::Instance::Lattice(l),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Instance::Graph(g) => format!("graph |V|={} |E|={}", g.len(), g.edge_count()),
            Instance::Lattice(l) => {
                let spec = l.spec();
                format!("lattice {} r={} window {}", spec.norm, spec.radius, spec.window)
            }
        }
    }

    pub fn set(&self, text: &str) -> Result<VertexSet, Failure> {
        Ok(io::parse_set(self.graph(), text)?)
    }

    pub fn function(&self, text: &str) -> Result<VertexFunction<S>, Failure> {
        Ok(io::parse_function(self.graph(), text)?)
    }
}

/// Raw inputs, read once so the scalar type can be chosen before parsing.
pub struct Sources {
    pub graph: Option<String>,
    pub lattice: Option<GroupSpec>,
    pub set: Option<String>,
    pub function: Option<String>,
}

impl Sources {
    pub fn load(
        instance: &InstanceArgs,
        set: Option<&Path>,
        function: Option<&Path>,
        tolerance: Option<f64>,
    ) -> Result<Self, Failure> {
        let lattice = instance
            .lattice
            .map(|norm| lattice_spec(norm, &instance.spec, tolerance))
            .transpose()?;
        Ok(Self {
            graph: instance.graph.as_deref().map(read).transpose()?,
            lattice,
            set: set.map(read).transpose()?,
            function: function.map(read).transpose()?,
        })
    }

    pub fn has_instance(&self) -> bool {
        self.graph.is_some() || self.lattice.is_some()
    }

    /// Integer scalars unless a weight or function value is fractional, or
    /// the instance is an L2 lattice.
    pub fn needs_float(&self) -> bool {
        let fractional = |tok: &str| tok != "inf" && tok.parse::<i64>().is_err();
        let in_graph = self.graph.as_deref().is_some_and(|text| {
            text.lines()
                .map(|l| l.split('#').next().unwrap_or("").split_whitespace().collect::<Vec<_>>())
                .any(|t| t.len() == 4 && t[0] == "e" && fractional(t[3]))
        });
        let in_function = self.function.as_deref().is_some_and(|text| {
            text.lines()
                .filter_map(|l| l.split('#').next().unwrap_or("").split_whitespace().nth(1))
                .any(fractional)
        });
        let l2 = self.lattice.as_ref().is_some_and(|s| s.norm == Norm::L2);
        in_graph || in_function || l2
    }

    pub fn instance<S: Scalar>(&self, tolerance: Option<f64>) -> Result<Instance<S>, Failure> {
        if let Some(spec) = &self.lattice {
            let lat = build_lattice(spec.clone())?;
            warn(lat.warnings());
            return Ok(Instance::Lattice(Box::new(lat)));
        }
        let text = self
            .graph
            .as_deref()
            .ok_or_else(|| Failure::Usage("need --graph or --lattice".into()))?;
        let mut g: Graph<S> = io::parse_graph(text).map_err(|e| Failure::from(e).context("graph file"))?;
        if let Some(eps) = tolerance {
            g = g.with_tolerance(eps);
        }
        Ok(Instance::Graph(g))
    }

    pub fn set_for<S: Scalar>(&self, inst: &Instance<S>) -> Result<Option<VertexSet>, Failure> {
        self.set
            .as_deref()
            .map(|t| inst.set(t).map_err(|e| e.context("set file")))
            .transpose()
    }

    pub fn function_for<S: Scalar>(&self, inst: &Instance<S>) -> Result<Option<VertexFunction<S>>, Failure> {
        self.function
            .as_deref()
            .map(|t| inst.function(t).map_err(|e| e.context("function file")))
            .transpose()
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}
