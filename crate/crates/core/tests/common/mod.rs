#![allow(dead_code)]

use momentkit_core::algebra::{rat, Rational};
use momentkit_core::{BuilderSpec, HalfSpace, Polytope, RationalVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn catalog() -> Vec<(String, Polytope)> {
    BuilderSpec::catalog()
        .into_iter()
        .map(|s| (s.to_string(), s.build().unwrap()))
        .collect()
}

pub fn square_pyramid() -> Polytope {
    Polytope::from_halfspaces(
        3,
        vec![
            HalfSpace::from_i64(&[0, 0, 1], 0),
            HalfSpace::from_i64(&[1, 0, -1], 0),
            HalfSpace::from_i64(&[-1, 0, -1], -2),
            HalfSpace::from_i64(&[0, 1, -1], 0),
            HalfSpace::from_i64(&[0, -1, -1], -2),
        ],
    )
    .unwrap()
}

pub fn thin_triangle() -> Polytope {
    Polytope::from_halfspaces(
        2,
        vec![
            HalfSpace::from_i64(&[1, 0], 0),
            HalfSpace::from_i64(&[0, 1], 0),
            HalfSpace::from_i64(&[-2, -1], -2),
        ],
    )
    .unwrap()
}

fn rand_unit(rng: &mut ChaCha8Rng) -> Rational {
    // strictly inside (0, 1)
    let d: i64 = rng.gen_range(2..40);
    Rational::new(rng.gen_range(1..d).into(), d.into())
}

fn positive_combination(rng: &mut ChaCha8Rng, pts: &[&RationalVec]) -> RationalVec {
    let ws: Vec<Rational> = pts
        .iter()
        .map(|_| Rational::from_integer(rng.gen_range(1..20).into()))
        .collect();
    let total: Rational = ws.iter().cloned().sum();
    let n = pts[0].dim();
    let mut acc = RationalVec::zeros(n);
    for (p, w) in pts.iter().zip(&ws) {
        acc = acc.add(&p.scale(&(w / &total)));
    }
    acc
}

/// Sample kinds: vertex, edge, facet, interior, exterior (including points
/// on extended edge lines and just beyond facets) and lattice points.
pub fn sample_points(p: &Polytope, count: usize, seed: u64) -> Vec<RationalVec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = p.dim();
    let verts = p.vertices();
    let mut out: Vec<RationalVec> = verts.to_vec();
    while out.len() < count {
        let kind = rng.gen_range(0..7);
        let pt = match kind {
            0 => {
                let &(a, b) = &p.edges()[rng.gen_range(0..p.edges().len())];
                let t = rand_unit(&mut rng);
                verts[a].add(&verts[b].sub(&verts[a]).scale(&t))
            }
            1 => {
                let f = rng.gen_range(0..p.facets().len());
                let on: Vec<&RationalVec> =
                    p.facet_vertices(f).into_iter().map(|v| &verts[v]).collect();
                positive_combination(&mut rng, &on)
            }
            2 => {
                let all: Vec<&RationalVec> = verts.iter().collect();
                positive_combination(&mut rng, &all)
            }
            3 => {
                // beyond an edge's endpoint along its line
                let &(a, b) = &p.edges()[rng.gen_range(0..p.edges().len())];
                let t = rand_unit(&mut rng) + rat(1);
                let t = if rng.gen_bool(0.5) { t } else { rat(1) - t };
                verts[a].add(&verts[b].sub(&verts[a]).scale(&t))
            }
            4 => {
                // just outside a facet
                let f = rng.gen_range(0..p.facets().len());
                let on: Vec<&RationalVec> =
                    p.facet_vertices(f).into_iter().map(|v| &verts[v]).collect();
                let base = positive_combination(&mut rng, &on);
                let normal = &p.halfspaces()[p.facets()[f]].normal;
                base.sub(&normal.scale(&rand_unit(&mut rng)))
            }
            5 => {
                let xs: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..6)).collect();
                RationalVec::from_i64(&xs)
            }
            _ => {
                let xs: Vec<Rational> = (0..n)
                    .map(|_| {
                        Rational::new(rng.gen_range(-40..80).into(), rng.gen_range(1..12).into())
                    })
                    .collect();
                RationalVec::new(xs)
            }
        };
        out.push(pt);
    }
    out
}
