//! Built-in worked examples, each checked against its expected values.

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use super::report::{vec_str, Report};
use crate::cluster::{exchange_bfs_with, Engine, LaurentPoly, Quiver, Seed};
use crate::cones::{coverage, halfspace_residual, RationalCone};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixtures;
use crate::lamination::{
    boundary, closed_word, decompose, dehn_twist, elementary, open_word, shear, spiral, sum_shear,
    twist_stabilization, Laminate,
};
use crate::surface::{Rot, TaggedTriangulation, TrackedTriangulation};

pub const EXAMPLES: [&str; 6] = ["digon-ex", "annulus-shear", "kronecker-cluster", "torus-halfspace", "dehn-orbit", "coverage"];

#[derive(Clone, Debug)]
pub struct ExampleOptions {
    pub exec: Exec,
    pub seed: u64,
    /// BFS depth for the coverage example.
    pub depth: usize,
    pub radius: i64,
    /// Largest depth of the convergence scan in the coverage example.
    pub far_depth: usize,
}

impl Default for ExampleOptions {
    fn default() -> Self {
        ExampleOptions { exec: Exec::default(), seed: 0, depth: 14, radius: 6, far_depth: 200 }
    }
}

pub fn run_example(name: &str, opts: &ExampleOptions) -> Result<Report> {
    match name {
        "digon-ex" => digon(),
        "annulus-shear" => annulus_shear(),
        "kronecker-cluster" => kronecker_cluster(opts),
        "torus-halfspace" => torus_halfspace(opts),
        "dehn-orbit" => dehn_orbit(opts),
        "coverage" => kronecker_coverage(opts),
        _ => Err(Error::UnknownExample(name.to_string())),
    }
}

/// The six laminates on the once-punctured digon, in table order.
pub fn digon_laminates(t: &TaggedTriangulation) -> Result<Vec<Laminate>> {
    let r = t.base();
    let two = ["2"];
    let three = ["2", "1", "2"];
    Ok(vec![
        open_word(r, &two, boundary("bR"), spiral("p0", Rot::Ccw))?,
        open_word(r, &three, boundary("bR"), boundary("bR"))?,
        open_word(r, &two, boundary("bR"), spiral("p0", Rot::Cw))?,
        open_word(r, &two, boundary("bL"), spiral("p0", Rot::Cw))?,
        open_word(r, &three, boundary("bL"), boundary("bL"))?,
        open_word(r, &two, boundary("bL"), spiral("p0", Rot::Ccw))?,
    ])
}

pub const DIGON_TABLE: [[i64; 6]; 2] = [[0, -1, -1, 0, 1, 1], [-1, -1, 0, 1, 1, 0]];

fn digon() -> Result<Report> {
    let (_, t) = fixtures::surface("digon")?;
    let ls = digon_laminates(&t)?;
    let mut rows = Vec::new();
    let mut matched = 0;
    let mut entries = Vec::new();
    for (i, arc) in ["1", "2"].iter().enumerate() {
        let pos = t.position(arc)?;
        for (j, l) in ls.iter().enumerate() {
            let got = shear(&t, l)?[pos];
            let want = DIGON_TABLE[i][j];
            matched += usize::from(got == want);
            rows.push(vec![arc.to_string(), (j + 1).to_string(), got.to_string(), want.to_string()]);
            entries.push(json!({"arc": arc, "laminate": j + 1, "shear": got, "expected": want}));
        }
    }
    let ok = matched == 12;
    let mut rep = Report::new(ok, json!({"matched": matched, "total": 12, "entries": entries}))?
        .table(&["arc", "laminate", "shear", "expected"], rows);
    rep.line(format!("digon shear table: {matched}/12 entries match"));
    Ok(rep)
}

fn annulus_shear() -> Result<Report> {
    let (_, t) = fixtures::surface("annulus")?;
    let r = t.base();
    let core = closed_word(r, &["1", "2"])?;
    let bridge = open_word(r, &["1"], boundary("bo"), boundary("bi"))?;
    let core_b = shear(&t, &core)?;
    let bridge_b = shear(&t, &bridge)?;
    let core_sum = sum_shear(r, &core)?;
    let closed = decompose(r, std::slice::from_ref(&core))?.closed.len() == 1;
    let ok = core_b == [1, -1] && bridge_b == [-1, 0] && core_sum == 0 && closed;
    let rows = vec![
        vec!["core".into(), vec_str(&core_b), "(1,-1)".into()],
        vec!["bridge".into(), vec_str(&bridge_b), "(-1,0)".into()],
    ];
    let mut rep = Report::new(ok, json!({"core": core_b, "bridge": bridge_b, "core_sum": core_sum, "core_is_closed": closed}))?
        .table(&["laminate", "shear", "expected"], rows);
    rep.line(format!("core {} (expected (1,-1)), coordinate sum {core_sum}", vec_str(&core_b)));
    rep.line(format!("bridge {} (expected (-1,0))", vec_str(&bridge_b)));
    Ok(rep)
}

/// Clusters along the two branches out of the initial Kronecker seed, with
/// their expected variables and g-vectors.
pub fn kronecker_expected() -> Vec<(Vec<usize>, [&'static str; 2], [[i64; 2]; 2])> {
    let a = "(x2^2 + y1)/x1";
    let b = "(x2^4 + y1^2*y2*x1^2 + 2*y1*x2^2 + y1^2)/(x1^2*x2)";
    let c = "(y2*x1^2 + 1)/x2";
    let xp = "(y1*y2^2*x1^4 + 2*y1*y2*x1^2 + x2^2 + y1)/(x1*x2^2)";
    let xpp = "(y1^2*y2^3*x1^6 + 3*y1^2*y2^2*x1^4 + 2*y1*y2*x1^2*x2^2 + x2^4 + 3*y1^2*y2*x1^2 + 2*y1*x2^2 + y1^2)/(x1^2*x2^3)";
    vec![
        (vec![], ["x1", "x2"], [[1, 0], [0, 1]]),
        (vec![0], [a, "x2"], [[-1, 2], [0, 1]]),
        (vec![0, 1], [a, b], [[-1, 2], [-2, 3]]),
        (vec![1], ["x1", c], [[1, 0], [0, -1]]),
        (vec![1, 0], [xp, c], [[-1, 0], [0, -1]]),
        (vec![1, 0, 1], [xp, xpp], [[-1, 0], [-2, 1]]),
    ]
}

fn kronecker_cluster(opts: &ExampleOptions) -> Result<Report> {
    let q = Quiver::kronecker();
    let mut rows = Vec::new();
    let mut polys = 0;
    let mut gvecs = 0;
    let mut total = 0;
    for (path, vars, gs) in kronecker_expected() {
        let s = Seed::initial(&q).mutate_path(&path)?;
        let g = crate::cluster::g_vector_tropical(&path, &q)?;
        for k in 0..2 {
            let want = LaurentPoly::parse(2, vars[k])?;
            let graded = crate::cluster::g_vector_grading(&s.cluster[k], &q)?;
            let p_ok = s.cluster[k] == want;
            let g_ok = g[k] == gs[k] && graded == gs[k];
            polys += usize::from(p_ok);
            gvecs += usize::from(g_ok);
            total += 1;
            let path1: Vec<String> = path.iter().map(|k| (k + 1).to_string()).collect();
            rows.push(vec![path1.join(" "), (k + 1).to_string(), s.cluster[k].to_string(), vec_str(&g[k]), p_ok.to_string(), g_ok.to_string()]);
        }
    }
    let bfs = exchange_bfs_with(&q, 3, Engine::Laurent, opts.exec)?;
    let ok = polys == total && gvecs == total && bfs.aborted == 0;
    let mut rep = Report::new(ok, json!({"variables_matched": polys, "gvectors_matched": gvecs, "total": total, "clusters_to_depth_3": bfs.clusters.len()}))?
        .table(&["path", "position", "variable", "gvector", "variable_ok", "gvector_ok"], rows);
    rep.line(format!("kronecker: {polys}/{total} variables and {gvecs}/{total} g-vectors match"));
    Ok(rep)
}

fn torus_halfspace(opts: &ExampleOptions) -> Result<Report> {
    let q = Quiver::markov();
    let bfs = exchange_bfs_with(&q, 8, Engine::Tropical, opts.exec)?;
    let cones: Vec<RationalCone> = bfs.clusters.iter().map(|c| RationalCone::new(3, c.gvectors.clone())).collect::<Result<_>>()?;
    let residual = halfspace_residual(&cones, &[1, 1, 1]);
    let sums: BTreeMap<i64, usize> = bfs.clusters.iter().flat_map(|c| c.gvectors.iter()).fold(BTreeMap::new(), |mut m, g| {
        *m.entry(g.iter().sum()).or_insert(0) += 1;
        m
    });
    // the same half-space seen from the surface: plain elementary laminates sum to -1
    let (_, t) = fixtures::surface("torus")?;
    let tr = TrackedTriangulation::new(t.clone());
    let lam_sums: Vec<i64> = tr.tagged_arcs().iter().map(|d| sum_shear(t.base(), &elementary(t.base(), d)?)).collect::<Result<_>>()?;
    let ok = residual == Some(1) && sums.keys().all(|&s| s == 1) && lam_sums.iter().all(|&s| s == -1);
    let rows = sums.iter().map(|(s, n)| vec![s.to_string(), n.to_string()]).collect();
    let mut rep = Report::new(ok, json!({"clusters": bfs.clusters.len(), "residual": residual, "coordinate_sums": sums, "laminate_sums": lam_sums}))?
        .table(&["coordinate_sum", "gvectors"], rows);
    rep.line(format!("markov depth 8: {} clusters, residual {:?}, sums {:?}", bfs.clusters.len(), residual, sums));
    Ok(rep)
}

pub fn annulus_orbit_expected(m: i64) -> Vec<i64> {
    if m >= 0 {
        vec![m - 1, -m]
    } else {
        vec![-m - 1, m + 2]
    }
}

#[derive(Serialize)]
struct OrbitRow {
    m: i64,
    shear: Vec<i64>,
    expected: Vec<i64>,
}

fn dehn_orbit(opts: &ExampleOptions) -> Result<Report> {
    let (_, t) = fixtures::surface("annulus")?;
    let r = t.base();
    let core = closed_word(r, &["1", "2"])?;
    let bridge = open_word(r, &["1"], boundary("bo"), boundary("bi"))?;
    let ms: Vec<i64> = (-20..=20).collect();
    let orbit = crate::lamination::twist_orbit(&t, &core, &bridge, &ms, opts.exec)?;
    let rows: Vec<OrbitRow> = orbit.into_iter().map(|(m, shear)| OrbitRow { m, expected: annulus_orbit_expected(m), shear }).collect();
    let orbit_ok = rows.iter().all(|r| r.shear == r.expected);
    let st = twist_stabilization(&t, &core, &bridge, 20)?;
    let st_ok = st.slope == [1, -1] && st.m_prime <= 1;

    let (_, torus) = fixtures::surface("torus")?;
    let tcore = closed_word(torus.base(), &["a", "b"])?;
    let arc = TrackedTriangulation::new(torus.clone()).tagged_arc(torus.position("a")?);
    let tl = elementary(torus.base(), &arc)?;
    let tst = twist_stabilization(&torus, &tcore, &tl, 12)?;
    let tcore_b = shear(&torus, &tcore)?;
    let t_ok = tst.slope == tcore_b.iter().map(|b| b * tst.crossings as i64).collect::<Vec<_>>();
    // a twist and its inverse cancel
    let back = dehn_twist(r, &core, &dehn_twist(r, &core, &bridge, 5)?, -5)? == bridge;

    let ok = orbit_ok && st_ok && t_ok && back;
    let header: Vec<String> = std::iter::once("m".to_string()).chain((1..=2).map(|i| format!("b{i}"))).collect();
    let csv_rows = rows.iter().map(|r| std::iter::once(r.m.to_string()).chain(r.shear.iter().map(|b| b.to_string())).collect()).collect();
    let mut rep = Report::new(ok, json!({"orbit": rows, "stabilization": st, "torus_stabilization": tst, "inverse_cancels": back}))?;
    rep.header = header;
    rep.rows = csv_rows;
    rep.line(format!("annulus orbit m = -20..20: {}", if orbit_ok { "matches closed form" } else { "MISMATCH" }));
    rep.line(format!("stabilization: m' = {}, slope {}", st.m_prime, vec_str(&st.slope)));
    rep.line(format!("torus: m' = {}, slope {}, crossings {}", tst.m_prime, vec_str(&tst.slope), tst.crossings));
    Ok(rep)
}

/// g-vector cones of every Kronecker cluster within `depth` mutations, with
/// the depth each was first reached at.
pub fn kronecker_cones(depth: usize, exec: Exec) -> Result<Vec<(usize, RationalCone)>> {
    let bfs = exchange_bfs_with(&Quiver::kronecker(), depth, Engine::Tropical, exec)?;
    bfs.clusters.iter().map(|c| Ok((c.depth, RationalCone::new(2, c.gvectors.clone())?))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RayScan {
    pub depth: usize,
    /// Exact squared distances of the uncovered points, in point order.
    pub sq_distances: Vec<String>,
    pub angle: f64,
}

/// Distances from `points` to the union of cones as the depth grows, and the
/// angle between `ray` and the closest generator seen so far.
pub fn ray_scan(cones: &[(usize, RationalCone)], points: &[Vec<i64>], ray: &[i64], from: usize, to: usize) -> Result<Vec<RayScan>> {
    let angle = |g: &[i64]| {
        let dot = (g[0] * ray[0] + g[1] * ray[1]) as f64;
        let n = ((g[0] * g[0] + g[1] * g[1]) as f64).sqrt() * ((ray[0] * ray[0] + ray[1] * ray[1]) as f64).sqrt();
        (dot / n).clamp(-1.0, 1.0).acos()
    };
    let mut best: Vec<Option<BigRational>> = vec![None; points.len()];
    let mut best_angle = f64::INFINITY;
    let mut out = Vec::new();
    for d in 0..=to {
        for (_, c) in cones.iter().filter(|(cd, _)| *cd == d) {
            for (b, p) in best.iter_mut().zip(points) {
                let x = c.sq_distance(p)?;
                if b.as_ref().is_none_or(|y| x < *y) {
                    *b = Some(x);
                }
            }
            for g in c.gens() {
                best_angle = best_angle.min(angle(g));
            }
        }
        if d >= from {
            out.push(RayScan {
                depth: d,
                sq_distances: best.iter().map(|b| b.as_ref().map_or("inf".into(), |x| x.to_string())).collect(),
                angle: best_angle,
            });
        }
    }
    Ok(out)
}

fn kronecker_coverage(opts: &ExampleOptions) -> Result<Report> {
    let far = opts.far_depth.max(opts.depth);
    let all = kronecker_cones(far, opts.exec)?;
    let near: Vec<RationalCone> = all.iter().filter(|(d, _)| *d <= opts.depth).map(|(_, c)| c.clone()).collect();
    let cov = coverage(&near, 2, opts.radius, opts.exec, opts.seed)?;
    let missing: Vec<Vec<i64>> = cov.uncovered().iter().map(|p| p.point.clone()).collect();
    let mut ray: Vec<Vec<i64>> = (1..=opts.radius).map(|k| vec![-k, k]).collect();
    ray.sort();
    let on_ray = missing == ray;
    let scan = ray_scan(&all, &missing, &[-1, 1], opts.depth, far)?;
    let decreasing = scan.windows(2).all(|w| {
        w[0].sq_distances.iter().zip(&w[1].sq_distances).all(|(a, b)| {
            let (a, b): (BigRational, BigRational) = (a.parse().unwrap(), b.parse().unwrap());
            b < a
        })
    });
    let final_angle = scan.last().map_or(f64::INFINITY, |s| s.angle);
    let ok = on_ray && decreasing && final_angle < 0.01;
    let uncovered: Vec<_> = cov.uncovered().iter().map(|p| json!({"point": p.point, "sq_distance": p.sq_distance})).collect();
    let rows = cov
        .points
        .iter()
        .map(|p| {
            let w = match (&p.witness, &p.sq_distance) {
                (Some(i), _) => i.to_string(),
                (None, Some(d)) => d.clone(),
                _ => String::new(),
            };
            vec![vec_str(&p.point), p.covered.to_string(), w]
        })
        .collect();
    let mut rep = Report::new(
        ok,
        json!({
            "radius": opts.radius,
            "depth": opts.depth,
            "covered": cov.covered,
            "total": cov.total,
            "uncovered_points": uncovered,
            "uncovered_on_missing_ray": on_ray,
            "distances_strictly_decreasing": decreasing,
            "far_depth": far,
            "final_angle": final_angle,
        }),
    )?
    .table(&["point", "covered", "witness_or_sq_distance"], rows);
    rep.line(format!("kronecker depth {} radius {}: {}/{} points covered", opts.depth, opts.radius, cov.covered, cov.total));
    rep.line(format!("uncovered points lie on the missing ray: {on_ray}"));
    rep.line(format!("distances strictly decreasing up to depth {far}: {decreasing}; final angle {final_angle:.6}"));
    Ok(rep)
}
