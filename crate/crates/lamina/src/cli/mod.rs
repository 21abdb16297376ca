//! The `lamina` command line: subcommands, argument parsing and exit codes.

pub mod examples;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::cluster::{exchange_bfs_with, Engine, Quiver, QuiverSpec, Seed, TropicalSeed};
use crate::cones::{coverage, RationalCone};
use crate::error::{Error, Result};
use crate::exec::{self, Exec};
use crate::lamination::{load_laminate, shear, twist_orbit, twist_stabilization};
use crate::surface::{flip_bfs, load_surface, TaggedTriangulation, TrackedTriangulation};

pub use examples::{run_example, ExampleOptions, EXAMPLES};
pub use report::{Emit, Report};

#[derive(Parser, Debug)]
#[command(name = "lamina", version, about = "Cluster seeds, shear coordinates and Dehn twists on marked surfaces")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub emit: Emit,
    /// Worker threads (0 runs everything on the calling thread).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for sampling order only; never changes a result.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mutate a quiver with principal coefficients along a path, or enumerate clusters.
    Mutate {
        /// `kronecker`, `markov`, or a JSON file with `matrix` or `n`/`arrows`.
        #[arg(long)]
        quiver: String,
        /// Comma-separated 1-based vertices.
        #[arg(long, default_value = "")]
        path: String,
        /// Breadth-first enumeration to this depth instead of a single path.
        #[arg(long)]
        bfs: Option<usize>,
        /// Also compute the cluster variables as Laurent polynomials.
        #[arg(long)]
        content: bool,
    },
    /// Shear coordinates of laminates with respect to a tagged triangulation.
    Shear {
        #[arg(long)]
        surface: PathBuf,
        /// Surface file with the same triangles and different tags.
        #[arg(long)]
        tri: Option<PathBuf>,
        #[arg(long, required = true)]
        laminate: Vec<PathBuf>,
    },
    /// Shear coordinates along the orbit of a laminate under Dehn twists.
    Dehn {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long)]
        core: PathBuf,
        #[arg(long)]
        laminate: PathBuf,
        /// Inclusive range `a..b`, bounds may be negative.
        #[arg(long, default_value = "0..20", allow_hyphen_values = true)]
        m: String,
        /// Also search for the exponent where the orbit turns affine.
        #[arg(long)]
        stabilize: bool,
    },
    /// Lattice-ball coverage by g-vector cones.
    Coverage {
        /// JSON file `{"dim": n, "cones": [[gen, ...], ...]}`.
        #[arg(long, conflicts_with = "quiver")]
        cones: Option<PathBuf>,
        /// Build cones from an exchange BFS of this quiver instead.
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        radius: i64,
    },
    /// Run a built-in worked example and check it.
    Example {
        name: String,
        #[arg(long, default_value_t = 14)]
        depth: usize,
        #[arg(long, default_value_t = 6)]
        radius: i64,
        #[arg(long, default_value_t = 200)]
        far_depth: usize,
    },
    /// Breadth-first search over flips of a tagged triangulation.
    FlipBfs {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

fn exec_of(jobs: Option<usize>) -> Exec {
    match jobs {
        Some(0) => Exec::Sequential,
        Some(j) => {
            exec::set_jobs(j);
            Exec::default()
        }
        None => Exec::default(),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::IoFailure(format!("{}: {e}", path.display())))
}

fn quiver_arg(s: &str) -> Result<Quiver> {
    match s {
        "kronecker" => Ok(Quiver::kronecker()),
        "markov" => Ok(Quiver::markov()),
        file => {
            let spec: QuiverSpec = serde_json::from_str(&read(Path::new(file))?).map_err(|e| Error::Input(e.to_string()))?;
            spec.build()
        }
    }
}

fn path_arg(s: &str, n: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
            _ => Err(Error::Input(format!("bad mutation index `{t}`"))),
        })
        .collect()
}

fn range_arg(s: &str) -> Result<Vec<i64>> {
    let bad = || Error::Input(format!("bad range `{s}`, expected a..b"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let (a, b): (i64, i64) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a..=b).collect())
}

fn strs(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Tagged triangulation for shear: the surface's own, or one retagging the
/// same triangles.
fn target_triangulation(reference: &TaggedTriangulation, tri: Option<&Path>) -> Result<TaggedTriangulation> {
    let Some(p) = tri else { return Ok(reference.clone()) };
    let (_, t) = load_surface(p)?;
    if t.base().triangles() != reference.base().triangles() || t.base().arc_names() != reference.base().arc_names() {
        return Err(Error::Input("--tri must use the reference triangles; only tags may differ".into()));
    }
    Ok(t)
}

fn mutate(quiver: &str, path: &str, bfs: Option<usize>, content: bool, exec: Exec) -> Result<Report> {
    let q = quiver_arg(quiver)?;
    let n = q.size();
    if let Some(depth) = bfs {
        let engine = if content { Engine::Laurent } else { Engine::Tropical };
        let res = exchange_bfs_with(&q, depth, engine, exec)?;
        let rows = res
            .clusters
            .iter()
            .map(|c| {
                let p: Vec<String> = c.path.iter().map(|k| (k + 1).to_string()).collect();
                let g: Vec<String> = c.gvectors.iter().map(|g| report::vec_str(g)).collect();
                let mut row = vec![c.id.to_string(), c.depth.to_string(), p.join(" "), g.join(" ")];
                if let Some(vs) = &c.variables {
                    row.push(vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ; "));
                }
                row
            })
            .collect();
        let clusters: Vec<_> = res
            .clusters
            .iter()
            .map(|c| {
                json!({"id": c.id, "depth": c.depth, "path": c.path.iter().map(|k| k + 1).collect::<Vec<_>>(), "gvectors": c.gvectors,
                       "variables": c.variables.as_ref().map(|vs| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>())})
            })
            .collect();
        let header: &[&str] = if content { &["id", "depth", "path", "gvectors", "variables"] } else { &["id", "depth", "path", "gvectors"] };
        return Ok(Report::new(res.aborted == 0, json!({"clusters": clusters, "aborted": res.aborted}))?.table(header, rows));
    }
    let path = path_arg(path, n)?;
    let trop = TropicalSeed::initial(&q).mutate_path(&path)?;
    let vars = if content { Some(Seed::initial(&q).mutate_path(&path)?.cluster) } else { None };
    let mut rows = Vec::new();
    for k in 0..n {
        let mut row = vec![(k + 1).to_string(), report::vec_str(&trop.g[k])];
        if let Some(vs) = &vars {
            row.push(vs[k].to_string());
        }
        rows.push(row);
    }
    let header: &[&str] = if content { &["vertex", "gvector", "variable"] } else { &["vertex", "gvector"] };
    let body = json!({
        "path": path.iter().map(|k| k + 1).collect::<Vec<_>>(),
        "matrix": trop.quiver.b,
        "gvectors": trop.g,
        "cvectors": trop.c_vectors(),
        "variables": vars.map(|vs| vs.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
    });
    Ok(Report::new(true, body)?.table(header, rows))
}

#[derive(Deserialize)]
struct ConesFile {
    dim: usize,
    cones: Vec<Vec<Vec<i64>>>,
}

fn run_command(cli: &Cli) -> Result<Report> {
    let exec = exec_of(cli.jobs);
    match &cli.command {
        Command::Mutate { quiver, path, bfs, content } => mutate(quiver, path, *bfs, *content, exec),
        Command::Shear { surface, tri, laminate } => {
            let (_, reference) = load_surface(surface)?;
            let t = target_triangulation(&reference, tri.as_deref())?;
            let mut rows = Vec::new();
            let mut out = Vec::new();
            for p in laminate {
                let l = load_laminate(reference.base(), p)?;
                let b = shear(&t, &l)?;
                rows.push(std::iter::once(p.display().to_string()).chain(strs(&b)).collect());
                out.push(json!({"laminate": p.display().to_string(), "shear": b}));
            }
            let names: Vec<&str> = t.names().iter().map(String::as_str).collect();
            let header: Vec<&str> = std::iter::once("laminate").chain(names.iter().copied()).collect();
            Ok(Report::new(true, json!({"arcs": names, "shears": out}))?.table(&header, rows))
        }
        Command::Dehn { surface, core, laminate, m, stabilize } => {
            let (_, t) = load_surface(surface)?;
            let r = t.base();
            let core = load_laminate(r, core)?;
            let l = load_laminate(r, laminate)?;
            let ms = range_arg(m)?;
            let orbit = twist_orbit(&t, &core, &l, &ms, exec)?;
            let n = t.size();
            let mut header = vec!["m".to_string()];
            header.extend((1..=n).map(|i| format!("b{i}")));
            let rows = orbit.iter().map(|(m, b)| std::iter::once(m.to_string()).chain(strs(b)).collect()).collect();
            let st = if *stabilize { Some(twist_stabilization(&t, &core, &l, (*ms.last().unwrap()).max(1) as usize)?) } else { None };
            let orbit_json: Vec<_> = orbit.iter().map(|(m, b)| json!({"m": m, "shear": b})).collect();
            let mut rep = Report::new(true, json!({"arcs": t.names(), "orbit": orbit_json, "stabilization": st}))?;
            rep.header = header;
            rep.rows = rows;
            if let Some(st) = &st {
                rep.notes.push(format!("affine from m={} with slope {} ({} crossings)", st.m_prime, report::vec_str(&st.slope), st.crossings));
            }
            Ok(rep)
        }
        Command::Coverage { cones, quiver, depth, radius } => {
            let (dim, list, depth_field) = match (cones, quiver) {
                (Some(p), _) => {
                    let f: ConesFile = serde_json::from_str(&read(p)?).map_err(|e| Error::Input(e.to_string()))?;
                    let list = f.cones.into_iter().map(|g| RationalCone::new(f.dim, g)).collect::<Result<Vec<_>>>()?;
                    (f.dim, list, None)
                }
                (None, Some(q)) => {
                    let q = quiver_arg(q)?;
                    let res = exchange_bfs_with(&q, *depth, Engine::Tropical, exec)?;
                    let list = res.clusters.iter().map(|c| RationalCone::new(q.size(), c.gvectors.clone())).collect::<Result<Vec<_>>>()?;
                    (q.size(), list, Some(*depth))
                }
                (None, None) => return Err(Error::Input("coverage needs --cones or --quiver".into())),
            };
            let cov = coverage(&list, dim, *radius, exec, cli.seed)?;
            let uncovered: Vec<_> = cov.uncovered().iter().map(|p| json!({"point": p.point, "sq_distance": p.sq_distance})).collect();
            let rows = cov
                .points
                .iter()
                .map(|p| {
                    let w = p.witness.map(|i| i.to_string()).or_else(|| p.sq_distance.clone()).unwrap_or_default();
                    vec![report::vec_str(&p.point), p.covered.to_string(), w]
                })
                .collect();
            let body = json!({"radius": radius, "depth": depth_field, "covered": cov.covered, "total": cov.total, "uncovered_points": uncovered});
            Ok(Report::new(true, body)?.table(&["point", "covered", "witness_or_sq_distance"], rows))
        }
        Command::Example { name, depth, radius, far_depth } => {
            let opts = ExampleOptions { exec, seed: cli.seed, depth: *depth, radius: *radius, far_depth: *far_depth };
            run_example(name, &opts)
        }
        Command::FlipBfs { surface, depth } => {
            let (_, t) = load_surface(surface)?;
            let nodes = flip_bfs(&TrackedTriangulation::new(t), *depth, exec)?;
            let mut rows = Vec::new();
            let mut out = Vec::new();
            for node in &nodes {
                let names = node.tri.tagged().names().to_vec();
                let p: Vec<String> = node.path.iter().map(|k| (k + 1).to_string()).collect();
                let q = node.tri.tagged().quiver();
                rows.push(vec![node.id.to_string(), node.depth.to_string(), p.join(" "), names.join(" ")]);
                out.push(json!({"id": node.id, "depth": node.depth, "path": node.path.iter().map(|k| k + 1).collect::<Vec<_>>(), "arcs": names, "matrix": q.b}));
            }
            Ok(Report::new(true, json!({"triangulations": out}))?.table(&["id", "depth", "path", "arcs"], rows))
        }
    }
}

/// Parses `args`, runs the command and returns the exit code with the bytes
/// for stdout and stderr: 0 on success, 1 on a mismatch, 2 on an error.
pub fn run<I, T>(args: I) -> (i32, Vec<u8>, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string().into_bytes(), String::new());
        }
    };
    match run_command(&cli).and_then(|r| Ok((r.ok, r.emit(cli.emit)?))) {
        Ok((ok, bytes)) => (if ok { 0 } else { 1 }, bytes, String::new()),
        Err(e) => {
            let body = json!({"ok": false, "error": e.to_string()});
            (2, Vec::new(), format!("{body}\n"))
        }
    }
}

pub fn main_from_env() -> i32 {
    let (code, out, err) = run(std::env::args_os());
    let _ = std::io::stdout().write_all(&out);
    let _ = std::io::stderr().write_all(err.as_bytes());
    code
}
