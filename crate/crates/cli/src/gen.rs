use convexgraph::generators::{complete, cycle, grid, king, path, triangular_tiling};
use convexgraph::group_lattice::build_lattice;
use convexgraph::{io, IntGraph, Norm};

use crate::input::{lattice_spec, warn};
use crate::{Failure, GenFamily};

fn positive(values: &[usize]) -> Result<(), Failure> {
    if values.contains(&0) {
        return Err(Failure::Usage("sizes must be positive".into()));
    }
    Ok(())
}

pub fn run(family: &GenFamily) -> Result<(), Failure> {
    let text = match *family {
        GenFamily::Cycle { n } => {
            if n < 3 {
                return Err(Failure::Usage("a cycle needs at least 3 vertices".into()));
            }
            io::write_graph(&cycle::<i64>(n))
        }
        GenFamily::Path { n } => {
            positive(&[n])?;
            io::write_graph(&path::<i64>(n))
        }
        GenFamily::Complete { n } => {
            positive(&[n])?;
            io::write_graph(&complete::<i64>(n))
        }
        GenFamily::Grid { w, h } => {
            positive(&[w, h])?;
            io::write_graph(&grid::<i64>(w, h))
        }
        GenFamily::King { w, h } => {
            positive(&[w, h])?;
            io::write_graph(&king::<i64>(w, h))
        }
        GenFamily::TriTiling { w, h } => {
            positive(&[w, h])?;
            let (g, interior): (IntGraph, _) = triangular_tiling(w, h);
            let mut out: String = interior.iter().map(|v| format!("# interior {}\n", g.name(v))).collect();
            out.push_str(&io::write_graph(&g));
            out
        }
        GenFamily::Lattice { norm, ref spec } => {
            let spec = lattice_spec(norm, spec, None)?;
            if norm == Norm::L2 {
                let lat = build_lattice::<f64>(spec)?;
                warn(lat.warnings());
                io::write_graph(lat.graph())
            } else {
                let lat = build_lattice::<i64>(spec)?;
                warn(lat.warnings());
                io::write_graph(lat.graph())
            }
        }
    };
    print!("{text}");
    Ok(())
}
